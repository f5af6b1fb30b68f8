#include "newsclf/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "newsclf/error.hpp"
#include "newsclf/rng.hpp"

namespace newsclf::baselines {

LinearSvm::LinearSvm(std::vector<double> w, double b, double lambda) : w_(std::move(w)), b_(b), lambda_(lambda) {
    if (!(lambda_ > 0.0)) {
        throw ConfigError("svm lambda must be positive");
    }
    if (!std::isfinite(b_) || !std::all_of(w_.begin(), w_.end(), [](double v) { return std::isfinite(v); })) {
        throw FormatError("svm weights must be finite");
    }
}

void SvmConfig::validate() const {
    if (!(lambda > 0.0)) {
        throw ConfigError("svm lambda must be positive");
    }
    if (epochs < 1) {
        throw ConfigError("svm epochs must be at least 1");
    }
}

double svm_objective(const LinearSvm& model, std::span<const SparseVector> rows, std::span<const int> labels) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double y = labels[i] == 1 ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * model.decision(rows[i]));
    }
    const auto w = model.weights();
    const double sq = std::inner_product(w.begin(), w.end(), w.begin(), 0.0) + model.bias() * model.bias();
    return 0.5 * model.lambda() * sq + (rows.empty() ? 0.0 : hinge / static_cast<double>(rows.size()));
}

namespace {

// w = scale * u, with the bias as the last coordinate of u. Keeping the
// scale separate makes the shrink step O(1) on sparse rows.
class ScaledWeights {
public:
    explicit ScaledWeights(std::size_t dim) : u_(dim + 1, 0.0) {}

    double dot(const SparseVector& x) const {
        double s = u_.back();
        for (const auto& e : x.entries()) {
            s += u_[e.index] * e.value;
        }
        return scale_ * s;
    }

    void shrink(double factor) {
        if (factor <= 0.0) {
            std::fill(u_.begin(), u_.end(), 0.0);
            scale_ = 1.0;
            norm_sq_ = 0.0;
            return;
        }
        scale_ *= factor;
        if (scale_ < 1e-9) {
            fold();
        }
    }

    // w += a * (x, 1)
    void add(const SparseVector& x, double a) {
        const double c = a / scale_;
        double ux = u_.back();
        double xx = 1.0;
        for (const auto& e : x.entries()) {
            ux += u_[e.index] * e.value;
            xx += e.value * e.value;
            u_[e.index] += c * e.value;
        }
        u_.back() += c;
        norm_sq_ += 2.0 * c * ux + c * c * xx;
        norm_sq_ = std::max(norm_sq_, 0.0);
    }

    double norm() const { return scale_ * std::sqrt(norm_sq_); }

    void fold() {
        norm_sq_ = 0.0;
        for (auto& v : u_) {
            v *= scale_;
            norm_sq_ += v * v;
        }
        scale_ = 1.0;
    }

    LinearSvm export_model(double lambda) {
        fold();
        std::vector<double> w(u_.begin(), u_.end() - 1);
        return LinearSvm(std::move(w), u_.back(), lambda);
    }

private:
    std::vector<double> u_;
    double scale_ = 1.0;
    double norm_sq_ = 0.0;
};

}  // namespace

SvmTrainResult train_svm(std::span<const SparseVector> rows, std::span<const int> labels, const SvmConfig& config) {
    config.validate();
    if (rows.empty()) {
        throw ConfigError("svm needs at least one sample");
    }
    if (rows.size() != labels.size()) {
        throw DimensionError("rows and labels differ in length");
    }
    const std::size_t dim = rows.front().dim();
    for (const auto& r : rows) {
        if (r.dim() != dim) {
            throw DimensionError("rows have differing dims");
        }
    }

    SvmTrainResult result;
    ScaledWeights w(dim);
    result.objective_history.push_back(svm_objective(LinearSvm(std::vector<double>(dim, 0.0), 0.0, config.lambda),
                                                     rows, labels));

    Rng rng(config.seed);
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const double radius = 1.0 / std::sqrt(config.lambda);
    std::uint64_t t = 0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (config.lambda * static_cast<double>(t));
            const double y = labels[i] == 1 ? 1.0 : -1.0;
            const double margin = y * w.dot(rows[i]);
            w.shrink(1.0 - eta * config.lambda);
            if (margin < 1.0) {
                w.add(rows[i], eta * y);
            }
            if (config.project) {
                const double norm = w.norm();
                if (norm > radius) {
                    w.shrink(radius / norm);
                }
            }
        }
        ScaledWeights snapshot = w;
        result.objective_history.push_back(svm_objective(snapshot.export_model(config.lambda), rows, labels));
    }
    result.model = w.export_model(config.lambda);
    return result;
}

nlohmann::ordered_json to_json(const LinearSvm& svm) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["type"] = "svc";
    j["input_dim"] = svm.input_dim();
    j["lambda"] = svm.lambda();
    j["b"] = svm.bias();
    j["w"] = std::vector<double>(svm.weights().begin(), svm.weights().end());
    return j;
}

LinearSvm svm_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw VersionError("unsupported svc model version " + j.at("version").dump());
        }
        auto w = j.at("w").get<std::vector<double>>();
        if (w.size() != j.at("input_dim").get<std::size_t>()) {
            throw FormatError("svc weight length does not match input_dim");
        }
        return LinearSvm(std::move(w), j.at("b").get<double>(), j.at("lambda").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("svc model: ") + e.what());
    }
}

}  // namespace newsclf::baselines
