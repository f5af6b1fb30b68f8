#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "newsclf/sparse.hpp"

namespace newsclf {

/// TF-IDF rows keyed by record id, as exchanged between CLI stages.
struct FeatureMatrix {
    std::size_t dim = 0;
    std::vector<std::int64_t> ids;
    std::vector<SparseVector> rows;
};

/// One JSON object per line: {"id":int,"dim":int,"indices":[int],"values":[float]}.
void write_features_jsonl(const std::filesystem::path& path, const FeatureMatrix& matrix);
FeatureMatrix read_features_jsonl(const std::filesystem::path& path);

/// Reads {"id":int,"label":0|1,...} lines; a corpus file qualifies.
std::unordered_map<std::int64_t, int> read_labels_jsonl(const std::filesystem::path& path);

void write_labels_jsonl(const std::filesystem::path& path, const std::vector<std::int64_t>& ids,
                        const std::vector<int>& labels);

/// Labels in row order; throws FormatError for an id with no label.
std::vector<int> align_labels(const FeatureMatrix& matrix,
                              const std::unordered_map<std::int64_t, int>& labels);

/// Throws FormatError unless every value is 0 or 1.
void check_binary_labels(const std::vector<int>& labels);

}  // namespace newsclf
