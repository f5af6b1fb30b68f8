#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "newsclf/sparse.hpp"
#include "newsclf/textprep.hpp"

namespace newsclf {

struct TermStats {
    std::string term;
    std::size_t doc_freq = 0;

    bool operator==(const TermStats&) const = default;
};

/// Term -> column map with document frequencies. Columns follow
/// lexicographic term order and are contiguous from zero.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Terms in any order; they are sorted here. Throws FormatError on a
    /// duplicate term or a doc_freq outside [1, num_docs].
    Vocabulary(std::size_t num_docs, std::vector<TermStats> terms);

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t num_docs() const noexcept { return num_docs_; }
    const std::vector<TermStats>& terms() const noexcept { return terms_; }
    const std::string& term(std::size_t index) const { return terms_.at(index).term; }
    std::size_t doc_freq(std::size_t index) const { return terms_.at(index).doc_freq; }
    std::optional<std::uint32_t> index_of(std::string_view term) const;

    bool operator==(const Vocabulary& other) const {
        return num_docs_ == other.num_docs_ && terms_ == other.terms_;
    }

private:
    std::size_t num_docs_ = 0;
    std::vector<TermStats> terms_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct VocabularyOptions {
    std::size_t min_df = 2;
    std::size_t max_terms = 10000;  // 0 keeps every term passing min_df
};

/// Counts document frequencies, drops terms below min_df, then keeps the
/// max_terms most frequent (ties to the lexicographically smaller term).
/// Throws ConfigError for no documents and EmptyVocabularyError when
/// nothing survives.
Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, VocabularyOptions options = {});

/// Term frequency n_t / |doc| over all tokens of the document. Empty
/// document gives an empty map.
std::map<std::string, double> tf(const TokenizedDoc& doc);

/// ln(num_docs / (1 + doc_freq)). Negative when a term occurs in every
/// document; kept unclamped.
double idf(const Vocabulary& vocab, std::size_t term_index);

/// TF x IDF weights for in-vocabulary terms. Out-of-vocabulary tokens count
/// in the TF denominator only. Zero weights are not stored.
SparseVector transform(const TokenizedDoc& doc, const Vocabulary& vocab);

std::vector<SparseVector> transform_matrix(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab);

/// On-disk vocabulary: the table plus the settings that produced it, so
/// new text can be prepared the same way.
struct VocabularyFile {
    Vocabulary vocab;
    VocabularyOptions options;
    PreprocessOptions preprocess;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const VocabularyFile& file);
VocabularyFile vocabulary_from_json(const nlohmann::ordered_json& j);
void save_vocabulary(const std::filesystem::path& path, const VocabularyFile& file);
VocabularyFile load_vocabulary(const std::filesystem::path& path);

void write_tokens_jsonl(const std::filesystem::path& path, const std::vector<TokenizedDoc>& docs);
std::vector<TokenizedDoc> read_tokens_jsonl(const std::filesystem::path& path);

}  // namespace newsclf
