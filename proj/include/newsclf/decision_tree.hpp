#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "newsclf/rng.hpp"
#include "newsclf/sparse.hpp"

namespace newsclf::baselines {

/// Flat tree node. A leaf has feature == -1; a split routes x[feature] <=
/// threshold to `left`.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    int label = 0;
    std::array<std::size_t, 2> counts{0, 0};  // training samples per class routed here

    bool is_leaf() const noexcept { return feature < 0; }
    std::size_t samples() const noexcept { return counts[0] + counts[1]; }

    bool operator==(const TreeNode&) const = default;
};

struct TreeConfig {
    std::size_t max_depth = 32;
    std::size_t min_leaf = 2;
    /// Features examined per split; 0 examines all of them.
    std::size_t features_per_split = 0;
};

class DecisionTree {
public:
    DecisionTree() = default;
    /// Node 0 is the root. Throws FormatError on dangling child links.
    DecisionTree(std::size_t input_dim, std::vector<TreeNode> nodes);

    std::size_t input_dim() const noexcept { return input_dim_; }
    std::span<const TreeNode> nodes() const noexcept { return nodes_; }
    std::size_t depth() const;

    const TreeNode& leaf_for(const SparseVector& x) const;
    int predict(const SparseVector& x) const { return leaf_for(x).label; }
    /// Fraction of class-1 training samples in the reached leaf.
    double score(const SparseVector& x) const;

    bool operator==(const DecisionTree&) const = default;

private:
    std::size_t input_dim_ = 0;
    std::vector<TreeNode> nodes_;
};

/// Greedy CART with Gini impurity over every row. Candidate thresholds are
/// midpoints between consecutive distinct values of a feature within the
/// node (implicit zeros included). Ties go to the lower feature index,
/// then the lower threshold. A leaf takes the majority label, 0 on a tie.
DecisionTree train_tree(std::span<const SparseVector> rows, std::span<const int> labels,
                        const TreeConfig& config = {});

/// Tree over a multiset of row positions. With config.features_per_split
/// set, features are drawn from `rng` and the search continues until that
/// many non-constant features have been examined.
DecisionTree train_tree_on(std::span<const SparseVector> rows, std::span<const int> labels,
                           std::span<const std::size_t> samples, const TreeConfig& config, Rng* rng);

nlohmann::ordered_json to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::ordered_json& j);

}  // namespace newsclf::baselines
