#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace newsclf {

struct TokenizedDoc {
    std::int64_t doc_id = 0;
    std::vector<std::string> tokens;

    bool operator==(const TokenizedDoc&) const = default;
};

class StopWordList {
public:
    /// Throws FormatError for an empty or non-lowercase entry.
    explicit StopWordList(std::set<std::string> words);
    StopWordList(std::initializer_list<std::string_view> words);

    /// The embedded classic English list (see docs/stopwords.md).
    static const StopWordList& english();

    bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
    std::size_t size() const noexcept { return words_.size(); }
    const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

private:
    std::set<std::string, std::less<>> words_;
};

/// ASCII case-fold, split on every byte that is not [a-z0-9], then drop
/// single-character and all-digit tokens. Bytes outside ASCII separate.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopWordList& stoplist);

/// Porter stem iterated to a fixed point, so that stem(stem(t)) == stem(t).
std::string stem(std::string_view token);

struct PreprocessOptions {
    bool remove_stopwords = true;
    bool stem = true;

    bool operator==(const PreprocessOptions&) const = default;
};

/// tokenize, then stop-word removal, then stemming; stems are not
/// re-checked against the stop list.
TokenizedDoc preprocess(std::string_view text, std::int64_t doc_id = 0,
                        const PreprocessOptions& options = {},
                        const StopWordList& stoplist = StopWordList::english());

}  // namespace newsclf
