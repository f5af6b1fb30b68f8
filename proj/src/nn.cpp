#include "newsclf/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "newsclf/error.hpp"
#include "newsclf/rng.hpp"

namespace newsclf::nn {

namespace {

double sigmoid(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    // keep strictly inside (0, 1) when exp saturates
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::clamp(p, lo, hi);
}

double activate(Activation a, double z) { return a == Activation::ReLU ? std::max(z, 0.0) : sigmoid(z); }

// derivative expressed through the pre-activation
double activate_grad(Activation a, double z) {
    if (a == Activation::ReLU) {
        return z > 0.0 ? 1.0 : 0.0;
    }
    const double s = sigmoid(z);
    return s * (1.0 - s);
}

void check_input(const DenseNetwork& net, std::size_t dim) {
    if (dim != net.input_dim()) {
        throw DimensionError("input dim " + std::to_string(dim) + " != network input " +
                             std::to_string(net.input_dim()));
    }
}

// Pre-activations of every layer for one example.
std::vector<std::vector<double>> pre_activations(const DenseNetwork& net, const SparseVector& x) {
    check_input(net, x.dim());
    std::vector<std::vector<double>> z(net.layers().size());
    const auto layers = net.layers();

    const Layer& first = layers[0];
    z[0] = first.bias;
    for (std::size_t o = 0; o < first.out; ++o) {
        const double* row = first.weights.data() + o * first.in;
        double sum = 0.0;
        for (const auto& e : x.entries()) {
            sum += row[e.index] * e.value;
        }
        z[0][o] += sum;
    }

    std::vector<double> a;
    for (std::size_t k = 1; k < layers.size(); ++k) {
        const Layer& prev = layers[k - 1];
        a.resize(prev.out);
        for (std::size_t i = 0; i < prev.out; ++i) {
            a[i] = activate(prev.activation, z[k - 1][i]);
        }
        const Layer& layer = layers[k];
        z[k] = layer.bias;
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double* row = layer.weights.data() + o * layer.in;
            double sum = 0.0;
            for (std::size_t i = 0; i < layer.in; ++i) {
                sum += row[i] * a[i];
            }
            z[k][o] += sum;
        }
    }
    return z;
}

// Adds the gradient of scale * loss(x, y) into grads; returns the loss.
double accumulate(const DenseNetwork& net, const SparseVector& x, int y, double scale, Gradients& grads) {
    const auto layers = net.layers();
    const auto z = pre_activations(net, x);
    const std::size_t last = layers.size() - 1;
    const double p = sigmoid(z[last][0]);

    std::vector<double> delta{scale * (p - static_cast<double>(y))};
    std::vector<double> a_prev;
    for (std::size_t k = last + 1; k-- > 0;) {
        const Layer& layer = layers[k];
        auto& gw = grads.weights[k];
        auto& gb = grads.biases[k];
        for (std::size_t o = 0; o < layer.out; ++o) {
            gb[o] += delta[o];
        }
        if (k == 0) {
            for (std::size_t o = 0; o < layer.out; ++o) {
                if (delta[o] == 0.0) {
                    continue;
                }
                double* row = gw.data() + o * layer.in;
                for (const auto& e : x.entries()) {
                    row[e.index] += delta[o] * e.value;
                }
            }
            break;
        }
        const Layer& prev = layers[k - 1];
        a_prev.resize(prev.out);
        for (std::size_t i = 0; i < prev.out; ++i) {
            a_prev[i] = activate(prev.activation, z[k - 1][i]);
        }
        std::vector<double> next(prev.out, 0.0);
        for (std::size_t o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            double* grow = gw.data() + o * layer.in;
            const double* wrow = layer.weights.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) {
                grow[i] += d * a_prev[i];
                next[i] += wrow[i] * d;
            }
        }
        for (std::size_t i = 0; i < prev.out; ++i) {
            next[i] *= activate_grad(prev.activation, z[k - 1][i]);
        }
        delta = std::move(next);
    }
    return bce_loss(p, y);
}

}  // namespace

std::string_view to_string(Activation a) { return a == Activation::ReLU ? "relu" : "sigmoid"; }

Activation activation_from_string(std::string_view name) {
    if (name == "relu") {
        return Activation::ReLU;
    }
    if (name == "sigmoid") {
        return Activation::Sigmoid;
    }
    throw FormatError("unknown activation '" + std::string(name) + "'");
}

DenseNetwork::DenseNetwork(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) {
        throw DimensionError("network needs at least one layer");
    }
    if (layers_.front().in == 0) {
        throw DimensionError("input dim must be at least 1");
    }
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        const auto& l = layers_[k];
        if (l.weights.size() != l.in * l.out || l.bias.size() != l.out || l.out == 0) {
            throw DimensionError("layer " + std::to_string(k) + " parameter shape mismatch");
        }
        if (k > 0 && l.in != layers_[k - 1].out) {
            throw DimensionError("layer " + std::to_string(k) + " input does not chain to previous output");
        }
    }
    if (layers_.back().out != 1 || layers_.back().activation != Activation::Sigmoid) {
        throw DimensionError("final layer must be a single sigmoid unit");
    }
}

std::vector<std::size_t> DenseNetwork::arch() const {
    std::vector<std::size_t> dims{input_dim()};
    for (const auto& l : layers_) {
        dims.push_back(l.out);
    }
    return dims;
}

std::size_t DenseNetwork::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) {
        n += l.weights.size() + l.bias.size();
    }
    return n;
}

DenseNetwork init(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims, std::uint64_t seed) {
    if (input_dim == 0) {
        throw DimensionError("input dim must be at least 1");
    }
    std::vector<std::size_t> dims{input_dim};
    dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
    dims.push_back(1);

    Rng rng(seed);
    std::vector<Layer> layers;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        Layer l;
        l.in = dims[k];
        l.out = dims[k + 1];
        if (l.out == 0) {
            throw DimensionError("hidden layer width must be at least 1");
        }
        l.activation = k + 2 == dims.size() ? Activation::Sigmoid : Activation::ReLU;
        const double limit = std::sqrt(6.0 / static_cast<double>(l.in + l.out));
        l.weights.resize(l.in * l.out);
        for (auto& w : l.weights) {
            w = rng.uniform_real(-limit, limit);
        }
        l.bias.assign(l.out, 0.0);
        layers.push_back(std::move(l));
    }
    return DenseNetwork(std::move(layers));
}

double logit(const DenseNetwork& net, const SparseVector& x) { return pre_activations(net, x).back()[0]; }

double forward(const DenseNetwork& net, const SparseVector& x) { return sigmoid(logit(net, x)); }

double forward_dense(const DenseNetwork& net, std::span<const double> x) {
    check_input(net, x.size());
    std::vector<double> a(x.begin(), x.end());
    for (const auto& layer : net.layers()) {
        std::vector<double> next(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            double z = layer.bias[o];
            for (std::size_t i = 0; i < layer.in; ++i) {
                z += layer.w(o, i) * a[i];
            }
            next[o] = activate(layer.activation, z);
        }
        a = std::move(next);
    }
    return a[0];
}

double bce_loss(double p, int y) {
    const double q = std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
    return y == 1 ? -std::log(q) : -std::log(1.0 - q);
}

double Gradients::squared_norm() const {
    double s = 0.0;
    for (const auto* blocks : {&weights, &biases}) {
        for (const auto& b : *blocks) {
            for (double g : b) {
                s += g * g;
            }
        }
    }
    return s;
}

Gradients zero_gradients(const DenseNetwork& net) {
    Gradients g;
    for (const auto& l : net.layers()) {
        g.weights.emplace_back(l.weights.size(), 0.0);
        g.biases.emplace_back(l.bias.size(), 0.0);
    }
    return g;
}

Gradients backward(const DenseNetwork& net, std::span<const SparseVector> rows, std::span<const int> labels,
                   std::span<const std::size_t> batch) {
    if (rows.size() != labels.size()) {
        throw DimensionError("rows and labels differ in length");
    }
    if (batch.empty()) {
        throw DimensionError("backward needs a non-empty batch");
    }
    Gradients g = zero_gradients(net);
    const double scale = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    for (std::size_t idx : batch) {
        loss += accumulate(net, rows[idx], labels[idx], scale, g);
    }
    g.loss = loss * scale;
    return g;
}

Gradients backward(const DenseNetwork& net, std::span<const SparseVector> rows, std::span<const int> labels) {
    std::vector<std::size_t> all(rows.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return backward(net, rows, labels, all);
}

void adam_step(std::span<const std::span<double>> params, std::span<const std::span<const double>> grads,
               AdamState& state, double lr) {
    if (params.size() != grads.size()) {
        throw DimensionError("adam: parameter and gradient block counts differ");
    }
    if (state.m.empty()) {
        for (const auto& p : params) {
            state.m.emplace_back(p.size(), 0.0);
            state.v.emplace_back(p.size(), 0.0);
        }
    }
    if (state.m.size() != params.size()) {
        throw DimensionError("adam: state block count differs from parameters");
    }
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (params[b].size() != grads[b].size() || state.m[b].size() != params[b].size()) {
            throw DimensionError("adam: block " + std::to_string(b) + " shape mismatch");
        }
    }

    ++state.t;
    const double b1 = state.beta1;
    const double b2 = state.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
    for (std::size_t b = 0; b < params.size(); ++b) {
        auto p = params[b];
        auto g = grads[b];
        auto& m = state.m[b];
        auto& v = state.v[b];
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            const double m_hat = m[i] / c1;
            const double v_hat = v[i] / c2;
            p[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
        }
    }
}

void adam_step(DenseNetwork& net, const Gradients& grads, AdamState& state, double lr) {
    auto layers = net.layers();
    if (grads.weights.size() != layers.size() || grads.biases.size() != layers.size()) {
        throw DimensionError("adam: gradient layer count differs from network");
    }
    std::vector<std::span<double>> params;
    std::vector<std::span<const double>> gs;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        params.emplace_back(layers[k].weights);
        gs.emplace_back(grads.weights[k]);
        params.emplace_back(layers[k].bias);
        gs.emplace_back(grads.biases[k]);
    }
    adam_step(params, gs, state, lr);
}

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw ConfigError("epochs must be at least 1");
    }
    if (batch_size < 1) {
        throw ConfigError("batch size must be at least 1");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning rate must be positive");
    }
}

TrainResult train(DenseNetwork net, std::span<const SparseVector> rows, std::span<const int> labels,
                  const TrainConfig& config) {
    config.validate();
    if (rows.empty()) {
        throw ConfigError("empty training set");
    }
    if (rows.size() != labels.size()) {
        throw DimensionError("rows and labels differ in length");
    }
    for (const auto& r : rows) {
        check_input(net, r.dim());
    }

    TrainResult result;
    AdamState adam;
    Rng rng(config.shuffle_seed);
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t len = std::min(config.batch_size, order.size() - start);
            const auto batch = std::span(order).subspan(start, len);
            const Gradients g = backward(net, rows, labels, batch);
            epoch_loss += g.loss * static_cast<double>(len);
            adam_step(net, g, adam, config.learning_rate);
        }
        result.loss_history.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    result.net = std::move(net);
    return result;
}

int predict(const DenseNetwork& net, const SparseVector& x, double threshold) {
    return forward(net, x) >= threshold ? 1 : 0;
}

nlohmann::ordered_json to_json(const DenseNetwork& net) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["type"] = "nn";
    j["arch"] = net.arch();
    auto acts = nlohmann::ordered_json::array();
    auto ws = nlohmann::ordered_json::array();
    auto bs = nlohmann::ordered_json::array();
    for (const auto& l : net.layers()) {
        acts.push_back(to_string(l.activation));
        ws.push_back(l.weights);
        bs.push_back(l.bias);
    }
    j["activations"] = std::move(acts);
    j["weights"] = std::move(ws);
    j["biases"] = std::move(bs);
    return j;
}

DenseNetwork network_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("version").get<int>() != 1) {
            throw VersionError("unsupported nn model version " + j.at("version").dump());
        }
        const auto arch = j.at("arch").get<std::vector<std::size_t>>();
        const auto& acts = j.at("activations");
        const auto& ws = j.at("weights");
        const auto& bs = j.at("biases");
        if (arch.size() < 2 || acts.size() + 1 != arch.size() || ws.size() + 1 != arch.size() ||
            bs.size() + 1 != arch.size()) {
            throw FormatError("nn model arrays do not match arch");
        }
        std::vector<Layer> layers;
        for (std::size_t k = 0; k + 1 < arch.size(); ++k) {
            Layer l;
            l.in = arch[k];
            l.out = arch[k + 1];
            l.activation = activation_from_string(acts[k].get<std::string>());
            l.weights = ws[k].get<std::vector<double>>();
            l.bias = bs[k].get<std::vector<double>>();
            layers.push_back(std::move(l));
        }
        return DenseNetwork(std::move(layers));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("nn model: ") + e.what());
    }
}

}  // namespace newsclf::nn
