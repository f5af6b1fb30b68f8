#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsclf {

enum class Label : std::uint8_t { Real = 0, Fake = 1 };

/// The three upstream headline collections and their CSV layouts.
enum class Source : std::uint8_t { MillionHeadlines, FakeAndReal, GettingReal };

std::string_view to_string(Source source);
Source source_from_string(std::string_view name);

/// Headline column of each source schema.
std::string_view headline_column(Source source);

/// Label a source's rows carry: MillionHeadlines is Real, the others Fake.
Label source_label(Source source);

inline int to_int(Label label) { return static_cast<int>(label); }
Label label_from_int(long value);

struct HeadlineRecord {
    std::int64_t id = 0;
    std::string text;
    Label label = Label::Real;
    Source source = Source::MillionHeadlines;

    bool operator==(const HeadlineRecord&) const = default;
};

struct RowError {
    std::size_t line = 0;
    std::string message;
};

struct IngestResult {
    std::vector<HeadlineRecord> records;
    std::size_t skipped_empty = 0;
    std::size_t non_english = 0;  // GettingReal rows whose language is not english (kept)
    std::vector<RowError> row_errors;
};

struct IngestOptions {
    std::int64_t first_id = 0;
    /// Keep at most this many records (0 keeps all).
    std::size_t limit = 0;
};

/// Reads one source CSV. Throws IoError when the file cannot be read and
/// SchemaError when the headline column is absent. Malformed rows are
/// collected in row_errors and skipped.
IngestResult ingest(const std::filesystem::path& path, Source schema, IngestOptions options = {});

/// Same as ingest, over CSV text already in memory. `name` labels errors.
IngestResult ingest_text(std::string_view csv_text, Source schema, IngestOptions options = {},
                         const std::string& name = "<memory>");

struct DedupeResult {
    std::vector<HeadlineRecord> records;
    std::size_t removed = 0;
};

/// Key used for duplicate detection: case-folded text with whitespace runs
/// collapsed to one space and the ends trimmed.
std::string normalize_for_dedupe(std::string_view text);

/// Drops records whose (normalized text, label) was already seen; keeps the
/// first occurrence and the original order.
DedupeResult dedupe(std::vector<HeadlineRecord> records);

struct Split {
    std::vector<std::size_t> train;  // ascending record positions
    std::vector<std::size_t> test;
};

/// Stratified split over record positions. Per label L the train share is
/// round(fraction * n_L) clamped to [1, n_L - 1], so it is always the floor
/// or the ceiling of fraction * n_L. Throws ConfigError for a fraction
/// outside (0, 1) or an empty input and StratificationError when a label
/// has fewer than two records.
Split stratified_split(const std::vector<HeadlineRecord>& records, double train_fraction,
                       std::uint64_t seed);

/// Immutable labeled corpus with its train/test partition.
class Corpus {
public:
    Corpus(std::vector<HeadlineRecord> records, double train_fraction, std::uint64_t split_seed);

    const std::vector<HeadlineRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    double train_fraction() const noexcept { return train_fraction_; }
    std::uint64_t split_seed() const noexcept { return split_seed_; }
    const Split& split() const noexcept { return split_; }

private:
    std::vector<HeadlineRecord> records_;
    double train_fraction_;
    std::uint64_t split_seed_;
    Split split_;
};

void write_corpus_jsonl(std::ostream& out, const std::vector<HeadlineRecord>& records);
void write_corpus_jsonl(const std::filesystem::path& path, const std::vector<HeadlineRecord>& records);
std::vector<HeadlineRecord> read_corpus_jsonl(std::istream& in);
std::vector<HeadlineRecord> read_corpus_jsonl(const std::filesystem::path& path);

}  // namespace newsclf
