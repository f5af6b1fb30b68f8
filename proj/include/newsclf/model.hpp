#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "newsclf/decision_tree.hpp"
#include "newsclf/linear_svm.hpp"
#include "newsclf/nn.hpp"
#include "newsclf/random_forest.hpp"
#include "newsclf/sparse.hpp"

namespace newsclf {

/// Any trained classifier the pipeline produces.
using Model = std::variant<nn::DenseNetwork, baselines::DecisionTree, baselines::RandomForest, baselines::LinearSvm>;

/// "nn", "tree", "forest" or "svc"; matches the "type" field of model files.
std::string_view model_type(const Model& model);

std::size_t input_dim(const Model& model);

int predict(const Model& model, const SparseVector& x);

/// Probability for the network, class-1 leaf fraction for a tree, vote
/// share for a forest and the signed margin for the SVM.
double score(const Model& model, const SparseVector& x);

nlohmann::ordered_json to_json(const Model& model);
Model model_from_json(const nlohmann::ordered_json& j);

/// Writes the model JSON with a "provenance" object appended.
void save_model(const std::filesystem::path& path, const Model& model,
                const nlohmann::ordered_json& provenance = nlohmann::ordered_json::object());
Model load_model(const std::filesystem::path& path);

}  // namespace newsclf
