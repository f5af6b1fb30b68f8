#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "newsclf/sparse.hpp"

namespace newsclf::nn {

enum class Activation { ReLU, Sigmoid };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

/// Fully connected layer; weights are row-major, out x in.
struct Layer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;
    std::vector<double> bias;
    Activation activation = Activation::ReLU;

    double& w(std::size_t row, std::size_t col) { return weights[row * in + col]; }
    double w(std::size_t row, std::size_t col) const { return weights[row * in + col]; }

    bool operator==(const Layer&) const = default;
};

/// Feed-forward binary classifier ending in one sigmoid unit.
class DenseNetwork {
public:
    DenseNetwork() = default;

    /// Throws DimensionError unless dims chain and the last layer is 1-wide sigmoid.
    explicit DenseNetwork(std::vector<Layer> layers);

    std::size_t input_dim() const { return layers_.front().in; }
    std::vector<std::size_t> arch() const;
    std::span<const Layer> layers() const noexcept { return layers_; }
    std::span<Layer> layers() noexcept { return layers_; }
    std::size_t parameter_count() const;

    bool operator==(const DenseNetwork&) const = default;

private:
    std::vector<Layer> layers_;
};

/// Glorot-uniform weights, zero biases. hidden_dims may be empty, which
/// gives logistic regression.
DenseNetwork init(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims, std::uint64_t seed);

/// Pre-sigmoid output.
double logit(const DenseNetwork& net, const SparseVector& x);

/// Probability of class 1, strictly inside (0, 1). The first layer only
/// touches the stored entries of x.
double forward(const DenseNetwork& net, const SparseVector& x);

/// Dense reference forward pass without the sparse shortcut.
double forward_dense(const DenseNetwork& net, std::span<const double> x);

inline constexpr double kProbabilityClamp = 1e-7;

/// -[y ln p + (1-y) ln(1-p)] with p clamped to [1e-7, 1-1e-7].
double bce_loss(double p, int y);

/// Gradients shaped like the network's parameters, plus the mean loss of
/// the batch they were computed on.
struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    double loss = 0.0;

    double squared_norm() const;
};

Gradients zero_gradients(const DenseNetwork& net);

/// Gradient of the mean batch BCE over rows[batch[k]]. At the output the
/// error signal is p - y, the exact derivative of BCE composed with sigmoid.
Gradients backward(const DenseNetwork& net, std::span<const SparseVector> rows, std::span<const int> labels,
                   std::span<const std::size_t> batch);

/// Whole-input convenience overload.
Gradients backward(const DenseNetwork& net, std::span<const SparseVector> rows, std::span<const int> labels);

struct AdamState {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::int64_t t = 0;
    std::vector<std::vector<double>> m;  // one block per parameter tensor
    std::vector<std::vector<double>> v;
};

/// One Adam update over parameter blocks. Moments are allocated on first
/// use; later calls must pass the same shapes. Throws DimensionError.
void adam_step(std::span<const std::span<double>> params, std::span<const std::span<const double>> grads,
               AdamState& state, double lr);

/// Adam update of every layer, blocks ordered W0, b0, W1, b1, ...
void adam_step(DenseNetwork& net, const Gradients& grads, AdamState& state, double lr);

struct TrainConfig {
    int epochs = 50;
    std::size_t batch_size = 512;
    double learning_rate = 1e-4;
    std::uint64_t shuffle_seed = 42;

    /// Throws ConfigError.
    void validate() const;
};

struct TrainResult {
    DenseNetwork net;
    std::vector<double> loss_history;  // mean per-example loss of each epoch, taken before each update
};

/// Mini-batch Adam on mean BCE. Rows are reshuffled every epoch from one
/// seeded stream; the final short batch is kept.
TrainResult train(DenseNetwork net, std::span<const SparseVector> rows, std::span<const int> labels,
                  const TrainConfig& config);

/// 1 iff forward(net, x) >= threshold.
int predict(const DenseNetwork& net, const SparseVector& x, double threshold = 0.5);

nlohmann::ordered_json to_json(const DenseNetwork& net);
DenseNetwork network_from_json(const nlohmann::ordered_json& j);

}  // namespace newsclf::nn
