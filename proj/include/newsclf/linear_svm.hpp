#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "newsclf/sparse.hpp"

namespace newsclf::baselines {

class LinearSvm {
public:
    LinearSvm() = default;
    /// Throws ConfigError for lambda <= 0 and FormatError for non-finite weights.
    LinearSvm(std::vector<double> w, double b, double lambda);

    std::size_t input_dim() const noexcept { return w_.size(); }
    std::span<const double> weights() const noexcept { return w_; }
    double bias() const noexcept { return b_; }
    double lambda() const noexcept { return lambda_; }

    double decision(const SparseVector& x) const { return x.dot(w_) + b_; }
    /// sign(w.x + b) with zero mapped to class 1.
    int predict(const SparseVector& x) const { return decision(x) >= 0.0 ? 1 : 0; }

    bool operator==(const LinearSvm&) const = default;

private:
    std::vector<double> w_;
    double b_ = 0.0;
    double lambda_ = 1e-4;
};

struct SvmConfig {
    double lambda = 1e-4;
    int epochs = 20;
    std::uint64_t seed = 42;
    /// Projection onto the ball of radius 1/sqrt(lambda) after each step.
    bool project = true;

    void validate() const;
};

struct SvmTrainResult {
    LinearSvm model;
    /// Full-data objective: entry 0 at w = 0, then one entry per epoch.
    std::vector<double> objective_history;
};

/// (lambda/2)(|w|^2 + b^2) + mean hinge, with labels 0/1 read as -1/+1.
double svm_objective(const LinearSvm& model, std::span<const SparseVector> rows, std::span<const int> labels);

/// Pegasos stochastic subgradient descent, step 1/(lambda t), one pass per
/// epoch over a seeded permutation. The bias is trained as a weight on a
/// constant feature and shares the regularizer.
SvmTrainResult train_svm(std::span<const SparseVector> rows, std::span<const int> labels,
                         const SvmConfig& config = {});

nlohmann::ordered_json to_json(const LinearSvm& svm);
LinearSvm svm_from_json(const nlohmann::ordered_json& j);

}  // namespace newsclf::baselines
