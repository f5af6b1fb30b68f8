#include "newsclf/random_forest.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "newsclf/error.hpp"

namespace newsclf::baselines {

void ForestConfig::validate() const {
    if (n_trees < 1 || n_trees % 2 == 0) {
        throw ConfigError("forest size must be a positive odd number, got " + std::to_string(n_trees));
    }
    if (min_leaf < 1) {
        throw ConfigError("min_leaf must be at least 1");
    }
}

RandomForest::RandomForest(std::vector<DecisionTree> trees) : trees_(std::move(trees)) {
    if (trees_.empty() || trees_.size() % 2 == 0) {
        throw FormatError("forest must hold an odd number of trees");
    }
    for (const auto& t : trees_) {
        if (t.input_dim() != trees_.front().input_dim()) {
            throw FormatError("forest trees disagree on input dim");
        }
    }
}

std::size_t RandomForest::votes_for_fake(const SparseVector& x) const {
    std::size_t votes = 0;
    for (const auto& t : trees_) {
        votes += static_cast<std::size_t>(t.predict(x));
    }
    return votes;
}

int RandomForest::predict(const SparseVector& x) const { return 2 * votes_for_fake(x) > trees_.size() ? 1 : 0; }

double RandomForest::score(const SparseVector& x) const {
    return static_cast<double>(votes_for_fake(x)) / static_cast<double>(trees_.size());
}

std::size_t ceil_sqrt(std::size_t n) {
    std::size_t r = 0;
    while (r * r < n) {
        ++r;
    }
    return r;
}

RandomForest train_forest(std::span<const SparseVector> rows, std::span<const int> labels,
                          const ForestConfig& config) {
    config.validate();
    if (rows.size() < 2) {
        throw ConfigError("random forest needs at least two samples");
    }
    if (rows.size() != labels.size()) {
        throw DimensionError("rows and labels differ in length");
    }
    const std::size_t dim = rows.front().dim();
    TreeConfig tree_config;
    tree_config.max_depth = config.max_depth;
    tree_config.min_leaf = config.min_leaf;
    tree_config.features_per_split = config.features_per_split != 0 ? config.features_per_split : ceil_sqrt(dim);

    std::vector<DecisionTree> trees(config.n_trees);
    auto grow = [&](std::size_t i) {
        Rng rng(derive_seed(config.seed, i));
        std::vector<std::size_t> samples(rows.size());
        if (config.bootstrap) {
            for (auto& s : samples) {
                s = rng.uniform_index(rows.size());
            }
        } else {
            for (std::size_t k = 0; k < samples.size(); ++k) {
                samples[k] = k;
            }
        }
        trees[i] = train_tree_on(rows, labels, samples, tree_config, &rng);
    };

    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(config.n_trees));
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.n_trees; ++i) {
            grow(i);
        }
        return RandomForest(std::move(trees));
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < config.n_trees; i = next++) {
                try {
                    grow(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return RandomForest(std::move(trees));
}

nlohmann::ordered_json to_json(const RandomForest& forest) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["type"] = "forest";
    j["input_dim"] = forest.input_dim();
    auto& trees = j["trees"] = nlohmann::ordered_json::array();
    for (const auto& t : forest.trees()) {
        auto tj = to_json(t);
        trees.push_back(std::move(tj["nodes"]));
    }
    return j;
}

RandomForest forest_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw VersionError("unsupported forest model version " + j.at("version").dump());
        }
        const auto dim = j.at("input_dim").get<std::size_t>();
        std::vector<DecisionTree> trees;
        for (const auto& nodes : j.at("trees")) {
            nlohmann::ordered_json tj;
            tj["input_dim"] = dim;
            tj["nodes"] = nodes;
            trees.push_back(tree_from_json(tj));
        }
        return RandomForest(std::move(trees));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("forest model: ") + e.what());
    }
}

}  // namespace newsclf::baselines
