#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace newsclf {

/// Everything that determines a pipeline run, given the input files.
///
/// Serialized as a flat `key = value` document (see keys()). Per-stage
/// seeds left unset fall back to the master `seed`.
struct RunConfig {
    // inputs and outputs
    std::string million_path;
    std::string fakereal_path;
    std::string gettingreal_path;
    std::string out_dir = "run";
    std::size_t million_limit = 0;  // 0 reads every row
    bool dedupe = true;

    // split
    double train_fraction = 0.8;

    // text
    bool remove_stopwords = true;
    bool stem = true;

    // vocabulary
    std::size_t min_df = 2;
    std::size_t max_terms = 10000;

    // network
    std::vector<std::size_t> hidden = {128, 64};
    int epochs = 50;
    std::size_t batch_size = 512;
    double learning_rate = 1e-4;

    // baselines
    std::size_t tree_max_depth = 32;
    std::size_t tree_min_leaf = 2;
    std::size_t forest_trees = 101;
    std::size_t forest_max_depth = 32;
    std::size_t forest_min_leaf = 2;
    std::size_t forest_features = 0;  // 0 means ceil(sqrt(V))
    double svm_lambda = 1e-4;
    int svm_epochs = 20;

    unsigned threads = 0;

    std::uint64_t seed = 42;
    std::optional<std::uint64_t> split_seed;
    std::optional<std::uint64_t> nn_init_seed;
    std::optional<std::uint64_t> nn_shuffle_seed;
    std::optional<std::uint64_t> forest_seed;
    std::optional<std::uint64_t> svm_seed;

    std::uint64_t resolved_split_seed() const { return split_seed.value_or(seed); }
    std::uint64_t resolved_nn_init_seed() const { return nn_init_seed.value_or(seed); }
    std::uint64_t resolved_nn_shuffle_seed() const { return nn_shuffle_seed.value_or(seed); }
    std::uint64_t resolved_forest_seed() const { return forest_seed.value_or(seed); }
    std::uint64_t resolved_svm_seed() const { return svm_seed.value_or(seed); }

    /// Sets one key from its text form. Throws ConfigError for an unknown
    /// key or a value that does not parse.
    void set(std::string_view key, std::string_view value);

    /// Throws ConfigError for out-of-range values.
    void validate() const;

    /// Every key in serialization order.
    static const std::vector<std::string>& keys();

    /// Flat key = value text with every seed resolved.
    std::string to_text() const;

    /// Same content as to_text(), as a JSON object.
    nlohmann::ordered_json to_json() const;
};

/// Applies a `key = value` document on top of `base`. '#' starts a comment.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

std::vector<std::size_t> parse_dims(std::string_view text);

}  // namespace newsclf
