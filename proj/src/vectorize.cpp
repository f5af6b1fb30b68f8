#include "newsclf/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "newsclf/error.hpp"
#include "newsclf/io.hpp"

namespace newsclf {

Vocabulary::Vocabulary(std::size_t num_docs, std::vector<TermStats> terms)
    : num_docs_(num_docs), terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const TermStats& a, const TermStats& b) { return a.term < b.term; });
    if (terms_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw FormatError("vocabulary too large");
    }
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (t.doc_freq < 1 || t.doc_freq > num_docs_) {
            throw FormatError("term '" + t.term + "' has doc_freq " + std::to_string(t.doc_freq) +
                              " outside [1, " + std::to_string(num_docs_) + "]");
        }
        if (!index_.emplace(t.term, static_cast<std::uint32_t>(i)).second) {
            throw FormatError("duplicate vocabulary term '" + t.term + "'");
        }
    }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, VocabularyOptions options) {
    if (docs.empty()) {
        throw ConfigError("build_vocabulary needs at least one document");
    }
    std::unordered_map<std::string, std::size_t> df;
    std::unordered_set<std::string_view> seen;
    for (const auto& doc : docs) {
        seen.clear();
        for (const auto& t : doc.tokens) {
            if (seen.insert(t).second) {
                ++df[t];
            }
        }
    }

    std::vector<TermStats> kept;
    for (auto& [term, count] : df) {
        if (count >= options.min_df) {
            kept.push_back({term, count});
        }
    }
    if (options.max_terms != 0 && kept.size() > options.max_terms) {
        std::sort(kept.begin(), kept.end(), [](const TermStats& a, const TermStats& b) {
            return a.doc_freq != b.doc_freq ? a.doc_freq > b.doc_freq : a.term < b.term;
        });
        kept.resize(options.max_terms);
    }
    if (kept.empty()) {
        throw EmptyVocabularyError("no term reaches min_df " + std::to_string(options.min_df));
    }
    return Vocabulary(docs.size(), std::move(kept));
}

std::map<std::string, double> tf(const TokenizedDoc& doc) {
    std::map<std::string, double> out;
    if (doc.tokens.empty()) {
        return out;
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& t : doc.tokens) {
        ++counts[t];
    }
    const auto total = static_cast<double>(doc.tokens.size());
    for (const auto& [term, n] : counts) {
        out.emplace(term, static_cast<double>(n) / total);
    }
    return out;
}

double idf(const Vocabulary& vocab, std::size_t term_index) {
    const auto df = static_cast<double>(vocab.doc_freq(term_index));
    return std::log(static_cast<double>(vocab.num_docs()) / (1.0 + df));
}

SparseVector transform(const TokenizedDoc& doc, const Vocabulary& vocab) {
    if (doc.tokens.empty()) {
        return SparseVector(vocab.size());
    }
    std::vector<std::uint32_t> hits;
    hits.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
        if (auto idx = vocab.index_of(t)) {
            hits.push_back(*idx);
        }
    }
    std::sort(hits.begin(), hits.end());

    const auto total = static_cast<double>(doc.tokens.size());
    std::vector<SparseEntry> entries;
    for (std::size_t i = 0; i < hits.size();) {
        std::size_t j = i;
        while (j < hits.size() && hits[j] == hits[i]) {
            ++j;
        }
        const double weight = (static_cast<double>(j - i) / total) * idf(vocab, hits[i]);
        if (weight != 0.0) {
            entries.push_back({hits[i], weight});
        }
        i = j;
    }
    return SparseVector(vocab.size(), std::move(entries));
}

std::vector<SparseVector> transform_matrix(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab) {
    std::vector<SparseVector> rows;
    rows.reserve(docs.size());
    for (const auto& doc : docs) {
        rows.push_back(transform(doc, vocab));
    }
    return rows;
}

nlohmann::ordered_json to_json(const VocabularyFile& file) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["num_docs"] = file.vocab.num_docs();
    j["min_df"] = file.options.min_df;
    j["max_terms"] = file.options.max_terms;
    j["stem"] = file.preprocess.stem;
    j["remove_stopwords"] = file.preprocess.remove_stopwords;
    auto& terms = j["terms"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < file.vocab.size(); ++i) {
        terms.push_back({{"term", file.vocab.term(i)}, {"index", i}, {"df", file.vocab.doc_freq(i)}});
    }
    j["provenance"] = file.provenance;
    return j;
}

VocabularyFile vocabulary_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.contains("version") && j.at("version").get<int>() != 1) {
            throw VersionError("unsupported vocabulary version " + j.at("version").dump());
        }
        VocabularyFile file;
        const auto num_docs = j.at("num_docs").get<std::size_t>();
        const auto& terms = j.at("terms");
        std::vector<TermStats> stats;
        stats.reserve(terms.size());
        for (const auto& t : terms) {
            stats.push_back({t.at("term").get<std::string>(), t.at("df").get<std::size_t>()});
        }
        file.vocab = Vocabulary(num_docs, std::move(stats));
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto& t = terms[i];
            if (file.vocab.index_of(t.at("term").get<std::string>()) != t.at("index").get<std::uint32_t>()) {
                throw FormatError("vocabulary index of '" + t.at("term").get<std::string>() +
                                  "' does not follow lexicographic order");
            }
        }
        file.options.min_df = j.value("min_df", std::size_t{2});
        file.options.max_terms = j.value("max_terms", std::size_t{10000});
        file.preprocess.stem = j.value("stem", true);
        file.preprocess.remove_stopwords = j.value("remove_stopwords", true);
        if (j.contains("provenance")) {
            file.provenance = j.at("provenance");
        }
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("vocabulary: ") + e.what());
    }
}

void save_vocabulary(const std::filesystem::path& path, const VocabularyFile& file) {
    io::write_file(path, to_json(file).dump(1) + "\n");
}

VocabularyFile load_vocabulary(const std::filesystem::path& path) {
    try {
        return vocabulary_from_json(nlohmann::ordered_json::parse(io::read_file(path)));
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_tokens_jsonl(const std::filesystem::path& path, const std::vector<TokenizedDoc>& docs) {
    auto out = io::open_output(path);
    for (const auto& doc : docs) {
        nlohmann::ordered_json j;
        j["id"] = doc.doc_id;
        j["tokens"] = doc.tokens;
        out << j.dump() << '\n';
    }
}

std::vector<TokenizedDoc> read_tokens_jsonl(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    std::vector<TokenizedDoc> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            docs.push_back({j.at("id").get<std::int64_t>(), j.at("tokens").get<std::vector<std::string>>()});
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return docs;
}

}  // namespace newsclf
