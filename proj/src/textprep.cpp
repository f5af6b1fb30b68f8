#include "newsclf/textprep.hpp"

#include <algorithm>

#include "newsclf/error.hpp"
#include "newsclf/porter.hpp"

namespace newsclf {

namespace {

void check_entry(std::string_view w) {
    if (w.empty()) {
        throw FormatError("empty stop word");
    }
    if (std::any_of(w.begin(), w.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
        throw FormatError("stop word '" + std::string(w) + "' is not lowercase");
    }
}

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

char fold(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

StopWordList::StopWordList(std::set<std::string> words) {
    for (const auto& w : words) {
        check_entry(w);
        words_.insert(w);
    }
}

StopWordList::StopWordList(std::initializer_list<std::string_view> words) {
    for (std::string_view w : words) {
        check_entry(w);
        words_.emplace(w);
    }
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        const bool all_digits =
            std::all_of(current.begin(), current.end(), [](char c) { return c >= '0' && c <= '9'; });
        if (current.size() > 1 && !all_digits) {
            tokens.push_back(current);
        }
        current.clear();
    };
    for (char raw : text) {
        const char c = fold(raw);
        if (is_alnum(c)) {
            current.push_back(c);
        } else if (!current.empty()) {
            flush();
        }
    }
    if (!current.empty()) {
        flush();
    }
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopWordList& stoplist) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
                 [&](const std::string& t) { return !stoplist.contains(t); });
    return out;
}

std::string stem(std::string_view token) {
    std::string current(token);
    for (int pass = 0; pass < 16; ++pass) {
        std::string next = porter_stem(current);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return current;
}

TokenizedDoc preprocess(std::string_view text, std::int64_t doc_id, const PreprocessOptions& options,
                        const StopWordList& stoplist) {
    TokenizedDoc doc{doc_id, tokenize(text)};
    if (options.remove_stopwords) {
        doc.tokens = remove_stopwords(doc.tokens, stoplist);
    }
    if (options.stem) {
        for (auto& t : doc.tokens) {
            t = stem(t);
        }
    }
    return doc;
}

}  // namespace newsclf
