#include "newsclf/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "newsclf/error.hpp"

namespace newsclf::baselines {

namespace {

struct Value {
    double x;
    int y;
};

double gini(double c0, double c1) {
    const double n = c0 + c1;
    if (n == 0.0) {
        return 0.0;
    }
    const double p0 = c0 / n;
    const double p1 = c1 / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

// Decreases closer than this count as ties.
constexpr double kTieTolerance = 1e-12;

struct Candidate {
    bool found = false;
    double decrease = 0.0;
    std::uint32_t feature = 0;
    double threshold = 0.0;

    bool improves_on(const Candidate& best) const {
        if (!best.found) {
            return true;
        }
        if (std::abs(decrease - best.decrease) > kTieTolerance) {
            return decrease > best.decrease;
        }
        return feature < best.feature;
    }
};

class Builder {
public:
    Builder(std::span<const SparseVector> rows, std::span<const int> labels, const TreeConfig& config,
            Rng* rng, std::size_t dim)
        : rows_(rows), labels_(labels), config_(config), rng_(rng), dim_(dim), buckets_(dim) {}

    std::vector<TreeNode> build(std::vector<std::size_t> samples) {
        grow(std::move(samples), 0);
        return std::move(nodes_);
    }

private:
    std::int32_t grow(std::vector<std::size_t> samples, std::size_t depth) {
        TreeNode node;
        for (std::size_t s : samples) {
            ++node.counts[static_cast<std::size_t>(labels_[s])];
        }
        node.label = node.counts[1] > node.counts[0] ? 1 : 0;
        const auto id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(node);

        const bool pure = node.counts[0] == 0 || node.counts[1] == 0;
        if (pure || depth >= config_.max_depth) {
            return id;
        }
        const Candidate best = find_split(samples, node.counts);
        if (!best.found) {
            return id;
        }

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t s : samples) {
            (rows_[s].at(best.feature) <= best.threshold ? left : right).push_back(s);
        }
        samples.clear();
        samples.shrink_to_fit();

        nodes_[static_cast<std::size_t>(id)].feature = static_cast<std::int32_t>(best.feature);
        nodes_[static_cast<std::size_t>(id)].threshold = best.threshold;
        const std::int32_t l = grow(std::move(left), depth + 1);
        const std::int32_t r = grow(std::move(right), depth + 1);
        nodes_[static_cast<std::size_t>(id)].left = l;
        nodes_[static_cast<std::size_t>(id)].right = r;
        return id;
    }

    Candidate find_split(const std::vector<std::size_t>& samples, const std::array<std::size_t, 2>& counts) {
        touched_.clear();
        for (std::size_t s : samples) {
            for (const auto& e : rows_[s].entries()) {
                auto& bucket = buckets_[e.index];
                if (bucket.empty()) {
                    touched_.push_back(e.index);
                }
                bucket.push_back({e.value, labels_[s]});
            }
        }
        std::sort(touched_.begin(), touched_.end());

        const std::size_t wanted = config_.features_per_split;
        const bool sample_features = rng_ != nullptr && wanted != 0 && wanted < dim_;
        Candidate best;
        std::size_t examined = 0;
        for (std::size_t k = 0; k < touched_.size(); ++k) {
            if (sample_features) {
                if (examined >= wanted) {
                    break;
                }
                // partial Fisher-Yates over the remaining touched features
                const std::size_t pick = k + rng_->uniform_index(touched_.size() - k);
                std::swap(touched_[k], touched_[pick]);
            }
            const std::uint32_t f = touched_[k];
            auto& bucket = buckets_[f];
            if (evaluate(f, bucket, samples.size(), counts, best)) {
                ++examined;
            }
        }
        for (std::uint32_t f : touched_) {
            buckets_[f].clear();
        }
        return best;
    }

    // Scans one feature; returns false when the feature is constant in the node.
    bool evaluate(std::uint32_t f, std::vector<Value>& nonzero, std::size_t n,
                  const std::array<std::size_t, 2>& counts, Candidate& best) {
        std::sort(nonzero.begin(), nonzero.end(), [](const Value& a, const Value& b) { return a.x < b.x; });

        // distinct values with per-class counts, implicit zeros as one group
        groups_.clear();
        std::array<std::size_t, 2> nz{0, 0};
        for (const auto& v : nonzero) {
            ++nz[static_cast<std::size_t>(v.y)];
        }
        const std::array<std::size_t, 2> zeros{counts[0] - nz[0], counts[1] - nz[1]};
        bool zeros_placed = zeros[0] + zeros[1] == 0;
        auto place_zeros = [&] {
            groups_.push_back({0.0, zeros});
            zeros_placed = true;
        };
        for (const auto& v : nonzero) {
            if (!zeros_placed && v.x > 0.0) {
                place_zeros();
            }
            if (groups_.empty() || groups_.back().x != v.x) {
                groups_.push_back({v.x, {0, 0}});
            }
            ++groups_.back().c[static_cast<std::size_t>(v.y)];
        }
        if (!zeros_placed) {
            place_zeros();
        }
        if (groups_.size() < 2) {
            return false;
        }

        const double total = static_cast<double>(n);
        const double parent = gini(static_cast<double>(counts[0]), static_cast<double>(counts[1]));
        std::array<std::size_t, 2> left{0, 0};
        Candidate local;
        local.feature = f;
        for (std::size_t g = 0; g + 1 < groups_.size(); ++g) {
            left[0] += groups_[g].c[0];
            left[1] += groups_[g].c[1];
            const std::size_t nl = left[0] + left[1];
            const std::size_t nr = n - nl;
            if (nl < config_.min_leaf || nr < config_.min_leaf) {
                continue;
            }
            const double l0 = static_cast<double>(left[0]);
            const double l1 = static_cast<double>(left[1]);
            const double r0 = static_cast<double>(counts[0] - left[0]);
            const double r1 = static_cast<double>(counts[1] - left[1]);
            const double decrease = parent - (static_cast<double>(nl) / total) * gini(l0, l1) -
                                    (static_cast<double>(nr) / total) * gini(r0, r1);
            if (!local.found || decrease > local.decrease + kTieTolerance) {
                double mid = groups_[g].x + (groups_[g + 1].x - groups_[g].x) / 2.0;
                if (!(mid < groups_[g + 1].x)) {
                    mid = groups_[g].x;
                }
                local.found = true;
                local.decrease = decrease;
                local.threshold = mid;
            }
        }
        if (local.found && local.improves_on(best)) {
            best = local;
        }
        return true;
    }

    struct Group {
        double x;
        std::array<std::size_t, 2> c;
    };

    std::span<const SparseVector> rows_;
    std::span<const int> labels_;
    const TreeConfig& config_;
    Rng* rng_;
    std::size_t dim_;
    std::vector<std::vector<Value>> buckets_;
    std::vector<std::uint32_t> touched_;
    std::vector<Group> groups_;
    std::vector<TreeNode> nodes_;
};

void check_training_input(std::span<const SparseVector> rows, std::span<const int> labels) {
    if (rows.empty()) {
        throw ConfigError("decision tree needs at least one sample");
    }
    if (rows.size() != labels.size()) {
        throw DimensionError("rows and labels differ in length");
    }
    const std::size_t dim = rows.front().dim();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != dim) {
            throw DimensionError("rows have differing dims");
        }
        if (labels[i] != 0 && labels[i] != 1) {
            throw FormatError("labels must be 0 or 1");
        }
    }
}

}  // namespace

DecisionTree::DecisionTree(std::size_t input_dim, std::vector<TreeNode> nodes)
    : input_dim_(input_dim), nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw FormatError("tree has no nodes");
    }
    const auto n = static_cast<std::int32_t>(nodes_.size());
    for (std::int32_t i = 0; i < n; ++i) {
        const auto& node = nodes_[static_cast<std::size_t>(i)];
        if (node.is_leaf()) {
            continue;
        }
        if (static_cast<std::size_t>(node.feature) >= input_dim_) {
            throw FormatError("split feature out of range");
        }
        // children are stored after their parent, so links cannot cycle
        if (node.left <= i || node.right <= i || node.left >= n || node.right >= n) {
            throw FormatError("tree node " + std::to_string(i) + " has invalid children");
        }
    }
}

std::size_t DecisionTree::depth() const {
    std::vector<std::size_t> d(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, d[i]);
        if (!nodes_[i].is_leaf()) {
            d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
            d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
        }
    }
    return deepest;
}

const TreeNode& DecisionTree::leaf_for(const SparseVector& x) const {
    if (x.dim() != input_dim_) {
        throw DimensionError("tree input dim " + std::to_string(input_dim_) + " != " + std::to_string(x.dim()));
    }
    const TreeNode* node = &nodes_.front();
    while (!node->is_leaf()) {
        const bool go_left = x.at(static_cast<std::size_t>(node->feature)) <= node->threshold;
        node = &nodes_[static_cast<std::size_t>(go_left ? node->left : node->right)];
    }
    return *node;
}

double DecisionTree::score(const SparseVector& x) const {
    const TreeNode& leaf = leaf_for(x);
    return static_cast<double>(leaf.counts[1]) / static_cast<double>(leaf.samples());
}

DecisionTree train_tree_on(std::span<const SparseVector> rows, std::span<const int> labels,
                           std::span<const std::size_t> samples, const TreeConfig& config, Rng* rng) {
    check_training_input(rows, labels);
    if (samples.empty()) {
        throw ConfigError("decision tree needs at least one sample");
    }
    if (config.min_leaf < 1) {
        throw ConfigError("min_leaf must be at least 1");
    }
    const std::size_t dim = rows.front().dim();
    Builder builder(rows, labels, config, rng, dim);
    return DecisionTree(dim, builder.build({samples.begin(), samples.end()}));
}

DecisionTree train_tree(std::span<const SparseVector> rows, std::span<const int> labels,
                        const TreeConfig& config) {
    std::vector<std::size_t> all(rows.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    TreeConfig full = config;
    full.features_per_split = 0;
    return train_tree_on(rows, labels, all, full, nullptr);
}

nlohmann::ordered_json to_json(const DecisionTree& tree) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["type"] = "tree";
    j["input_dim"] = tree.input_dim();
    auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes()) {
        nlohmann::ordered_json o;
        o["feature"] = n.feature;
        o["threshold"] = n.threshold;
        o["left"] = n.left;
        o["right"] = n.right;
        o["label"] = n.label;
        o["counts"] = n.counts;
        nodes.push_back(std::move(o));
    }
    return j;
}

DecisionTree tree_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw VersionError("unsupported tree model version " + j.at("version").dump());
        }
        std::vector<TreeNode> nodes;
        for (const auto& o : j.at("nodes")) {
            TreeNode n;
            n.feature = o.at("feature").get<std::int32_t>();
            n.threshold = o.at("threshold").get<double>();
            n.left = o.at("left").get<std::int32_t>();
            n.right = o.at("right").get<std::int32_t>();
            n.label = o.at("label").get<int>();
            n.counts = o.at("counts").get<std::array<std::size_t, 2>>();
            nodes.push_back(n);
        }
        return DecisionTree(j.at("input_dim").get<std::size_t>(), std::move(nodes));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("tree model: ") + e.what());
    }
}

}  // namespace newsclf::baselines
