#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsclf/sparse.hpp"

namespace newsclf::eval {

/// Binary confusion counts with Fake (1) as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + fp + tn + fn; }
    /// The same counts read with Real as the positive class.
    ConfusionMatrix swapped() const noexcept { return {tn, fn, tp, fp}; }

    bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws DimensionError on length mismatch or empty input.
ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths);

/// (TP + TN) / (TP + FP + TN + FN). Throws DimensionError for an all-zero matrix.
double accuracy(const ConfusionMatrix& cm);

struct ReportRow {
    std::string model;
    ConfusionMatrix cm;
    double accuracy = 0.0;
};

struct AccuracyDelta {
    std::string better;
    std::string worse;
    double delta = 0.0;  // accuracy(better) - accuracy(worse), >= 0
};

struct EvalReport {
    std::size_t test_size = 0;
    std::vector<ReportRow> rows;  // accuracy descending, ties in input order
    std::vector<AccuracyDelta> deltas;
};

/// A classifier seen through its prediction function.
struct NamedPredictor {
    std::string name;
    std::size_t input_dim = 0;
    std::function<int(const SparseVector&)> predict;
};

/// Sorts rows by accuracy and fills every pairwise delta.
EvalReport make_report(std::size_t test_size, std::vector<ReportRow> rows);

/// Evaluates every model on the same test set. Throws DimensionError for an
/// empty test set, a label count mismatch or a model whose input dim
/// differs from the features.
EvalReport compare(const std::vector<NamedPredictor>& models, std::span<const SparseVector> features,
                   std::span<const int> labels);

/// {"test_size":int,"rows":[{"model","tp","fp","tn","fn","accuracy"}],"deltas":[...]}
nlohmann::ordered_json to_json(const EvalReport& report);

/// Plain-text Models / ACC table followed by the confusion counts.
std::string format_table(const EvalReport& report);

}  // namespace newsclf::eval
