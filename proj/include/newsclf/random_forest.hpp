#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "newsclf/decision_tree.hpp"

namespace newsclf::baselines {

struct ForestConfig {
    std::size_t n_trees = 101;
    std::size_t max_depth = 32;
    std::size_t min_leaf = 2;
    /// 0 selects ceil(sqrt(input_dim)).
    std::size_t features_per_split = 0;
    bool bootstrap = true;
    std::uint64_t seed = 42;
    /// Worker threads; 0 uses the hardware count. Results do not depend on it.
    unsigned threads = 0;

    /// Throws ConfigError: n_trees must be odd and positive.
    void validate() const;
};

class RandomForest {
public:
    RandomForest() = default;
    explicit RandomForest(std::vector<DecisionTree> trees);

    std::size_t input_dim() const { return trees_.front().input_dim(); }
    std::size_t size() const noexcept { return trees_.size(); }
    std::span<const DecisionTree> trees() const noexcept { return trees_; }

    std::size_t votes_for_fake(const SparseVector& x) const;
    int predict(const SparseVector& x) const;
    /// Fraction of trees voting 1.
    double score(const SparseVector& x) const;

    bool operator==(const RandomForest&) const = default;

private:
    std::vector<DecisionTree> trees_;
};

std::size_t ceil_sqrt(std::size_t n);

/// Bagged CART trees. Tree i draws its bootstrap and split features from
/// a stream derived from (seed, i), so the forest is the same for any
/// thread count. Throws ConfigError for fewer than two rows.
RandomForest train_forest(std::span<const SparseVector> rows, std::span<const int> labels,
                          const ForestConfig& config = {});

nlohmann::ordered_json to_json(const RandomForest& forest);
RandomForest forest_from_json(const nlohmann::ordered_json& j);

}  // namespace newsclf::baselines
