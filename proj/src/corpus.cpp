#include "newsclf/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "newsclf/csv.hpp"
#include "newsclf/error.hpp"
#include "newsclf/io.hpp"
#include "newsclf/rng.hpp"

namespace newsclf {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

// The published Million Headlines file names its column headline_text.
std::vector<std::string_view> accepted_columns(Source source) {
    if (source == Source::MillionHeadlines) {
        return {"headline", "headline_text"};
    }
    return {headline_column(source)};
}

}  // namespace

std::string_view to_string(Source source) {
    switch (source) {
        case Source::MillionHeadlines:
            return "MillionHeadlines";
        case Source::FakeAndReal:
            return "FakeAndReal";
        case Source::GettingReal:
            return "GettingReal";
    }
    return "?";
}

Source source_from_string(std::string_view name) {
    for (Source s : {Source::MillionHeadlines, Source::FakeAndReal, Source::GettingReal}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw FormatError("unknown source '" + std::string(name) + "'");
}

std::string_view headline_column(Source source) {
    return source == Source::MillionHeadlines ? "headline" : "title";
}

Label source_label(Source source) {
    return source == Source::MillionHeadlines ? Label::Real : Label::Fake;
}

Label label_from_int(long value) {
    if (value == 0) {
        return Label::Real;
    }
    if (value == 1) {
        return Label::Fake;
    }
    throw FormatError("label must be 0 or 1, got " + std::to_string(value));
}

IngestResult ingest_text(std::string_view csv_text, Source schema, IngestOptions options,
                         const std::string& name) {
    IngestResult result;
    csv::Reader reader(csv_text);
    auto header = reader.next();
    if (!header) {
        throw SchemaError(std::string(headline_column(schema)), name);
    }
    if (header->error) {
        throw FormatError(name + ": malformed header: " + *header->error);
    }

    std::optional<std::size_t> text_col;
    std::optional<std::size_t> language_col;
    for (std::size_t i = 0; i < header->fields.size(); ++i) {
        const std::string col = ascii_lower(trim(header->fields[i]));
        for (std::string_view accepted : accepted_columns(schema)) {
            if (!text_col && col == accepted) {
                text_col = i;
            }
        }
        if (schema == Source::GettingReal && col == "language") {
            language_col = i;
        }
    }
    if (!text_col) {
        throw SchemaError(std::string(headline_column(schema)), name);
    }

    const std::size_t width = header->fields.size();
    const Label label = source_label(schema);
    std::int64_t next_id = options.first_id;

    while (auto rec = reader.next()) {
        if (options.limit != 0 && result.records.size() >= options.limit) {
            break;
        }
        if (rec->error) {
            result.row_errors.push_back({rec->line, *rec->error});
            continue;
        }
        if (rec->fields.size() != width) {
            result.row_errors.push_back({rec->line, "expected " + std::to_string(width) +
                                                        " fields, found " +
                                                        std::to_string(rec->fields.size())});
            continue;
        }
        const std::string_view text = trim(rec->fields[*text_col]);
        if (text.empty()) {
            ++result.skipped_empty;
            continue;
        }
        if (language_col && ascii_lower(trim(rec->fields[*language_col])) != "english") {
            ++result.non_english;
        }
        result.records.push_back({next_id++, std::string(text), label, schema});
    }
    return result;
}

IngestResult ingest(const std::filesystem::path& path, Source schema, IngestOptions options) {
    if (!std::filesystem::exists(path)) {
        throw IoError("no such file: " + path.string());
    }
    const std::string text = io::read_file(path);
    return ingest_text(text, schema, options, path.string());
}

std::string normalize_for_dedupe(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : trim(text)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
}

DedupeResult dedupe(std::vector<HeadlineRecord> records) {
    DedupeResult result;
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    for (auto& rec : records) {
        std::string key = normalize_for_dedupe(rec.text);
        key.push_back('\x1f');
        key.push_back(rec.label == Label::Fake ? '1' : '0');
        if (seen.insert(std::move(key)).second) {
            result.records.push_back(std::move(rec));
        } else {
            ++result.removed;
        }
    }
    return result;
}

Split stratified_split(const std::vector<HeadlineRecord>& records, double train_fraction,
                       std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie in (0, 1)");
    }
    if (records.empty()) {
        throw ConfigError("cannot split an empty corpus");
    }

    std::vector<std::size_t> by_label[2];
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_label[to_int(records[i].label)].push_back(i);
    }

    Split split;
    Rng rng(seed);
    for (int label = 0; label < 2; ++label) {
        auto& idx = by_label[label];
        const std::size_t n = idx.size();
        if (n < 2) {
            throw StratificationError("label " + std::to_string(label) + " has " +
                                      std::to_string(n) + " record(s); need at least 2");
        }
        auto take = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
        take = std::clamp<std::size_t>(take, 1, n - 1);
        rng.shuffle(std::span(idx));
        split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
        split.test.insert(split.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

Corpus::Corpus(std::vector<HeadlineRecord> records, double train_fraction, std::uint64_t split_seed)
    : records_(std::move(records)), train_fraction_(train_fraction), split_seed_(split_seed) {
    std::unordered_set<std::int64_t> ids;
    for (const auto& rec : records_) {
        if (!ids.insert(rec.id).second) {
            throw FormatError("duplicate record id " + std::to_string(rec.id));
        }
        if (trim(rec.text).empty()) {
            throw FormatError("record " + std::to_string(rec.id) + " has empty text");
        }
    }
    split_ = stratified_split(records_, train_fraction_, split_seed_);
}

void write_corpus_jsonl(std::ostream& out, const std::vector<HeadlineRecord>& records) {
    for (const auto& rec : records) {
        nlohmann::ordered_json j;
        j["id"] = rec.id;
        j["text"] = rec.text;
        j["label"] = to_int(rec.label);
        j["source"] = to_string(rec.source);
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

void write_corpus_jsonl(const std::filesystem::path& path, const std::vector<HeadlineRecord>& records) {
    auto out = io::open_output(path);
    write_corpus_jsonl(out, records);
}

std::vector<HeadlineRecord> read_corpus_jsonl(std::istream& in) {
    std::vector<HeadlineRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            out.push_back({j.at("id").get<std::int64_t>(), j.at("text").get<std::string>(),
                           label_from_int(j.at("label").get<long>()),
                           source_from_string(j.at("source").get<std::string>())});
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("corpus line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<HeadlineRecord> read_corpus_jsonl(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    return read_corpus_jsonl(in);
}

}  // namespace newsclf
