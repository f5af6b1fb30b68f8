#include "newsclf/porter.hpp"

#include <array>
#include <utility>

namespace newsclf {

namespace {

using Rule = std::pair<std::string_view, std::string_view>;

// Working buffer with the measure and shape predicates the rules are
// stated in. `end_` marks the candidate stem end after a suffix match.
class Word {
public:
    explicit Word(std::string_view w) : b_(w) {}

    std::string take() && { return std::move(b_); }

    bool ends_with(std::string_view suffix) const {
        return b_.size() >= suffix.size() &&
               std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
    }

    std::size_t size() const { return b_.size(); }
    char back() const { return b_.back(); }

    bool consonant(std::size_t i) const {
        switch (b_[i]) {
            case 'a':
            case 'e':
            case 'i':
            case 'o':
            case 'u':
                return false;
            case 'y':
                return i == 0 || !consonant(i - 1);
            default:
                return true;
        }
    }

    /// m in [C](VC)^m[V] over the first `len` characters.
    int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) {
            ++i;
        }
        while (i < len) {
            while (i < len && !consonant(i)) {
                ++i;
            }
            if (i >= len) {
                break;
            }
            while (i < len && consonant(i)) {
                ++i;
            }
            ++m;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!consonant(i)) {
                return true;
            }
        }
        return false;
    }

    /// *d: stem ends with a double consonant.
    bool double_consonant(std::size_t len) const {
        return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
    }

    /// *o: stem ends cvc where the final c is not w, x or y.
    bool cvc(std::size_t len) const {
        if (len < 3 || !consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) {
            return false;
        }
        const char c = b_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    void replace_suffix(std::size_t suffix_len, std::string_view with) {
        b_.resize(b_.size() - suffix_len);
        b_.append(with);
    }

    void pop() { b_.pop_back(); }
    void push(char c) { b_.push_back(c); }

private:
    std::string b_;
};

// Longest matching suffix wins; its condition decides, no fallback to
// shorter suffixes.
template <std::size_t N>
void apply_longest(Word& w, const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& rule : rules) {
        if (w.ends_with(rule.first) && (!best || rule.first.size() > best->first.size())) {
            best = &rule;
        }
    }
    if (best && w.measure(w.size() - best->first.size()) > min_measure) {
        w.replace_suffix(best->first.size(), best->second);
    }
}

void step1a(Word& w) {
    if (w.ends_with("sses")) {
        w.replace_suffix(4, "ss");
    } else if (w.ends_with("ies")) {
        w.replace_suffix(3, "i");
    } else if (w.ends_with("ss")) {
        // unchanged
    } else if (w.ends_with("s")) {
        w.pop();
    }
}

void step1b(Word& w) {
    if (w.ends_with("eed")) {
        if (w.measure(w.size() - 3) > 0) {
            w.pop();
        }
        return;
    }
    std::size_t cut = 0;
    if (w.ends_with("ed") && w.has_vowel(w.size() - 2)) {
        cut = 2;
    } else if (w.ends_with("ing") && w.has_vowel(w.size() - 3)) {
        cut = 3;
    }
    if (cut == 0) {
        return;
    }
    w.replace_suffix(cut, "");
    if (w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz")) {
        w.push('e');
    } else if (w.double_consonant(w.size())) {
        const char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') {
            w.pop();
        }
    } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
        w.push('e');
    }
}

void step1c(Word& w) {
    if (w.ends_with("y") && w.has_vowel(w.size() - 1)) {
        w.replace_suffix(1, "i");
    }
}

constexpr std::array<Rule, 20> kStep2{{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3{{
    {"icate", "ic"},
    {"ative", ""},
    {"alize", "al"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ful", ""},
    {"ness", ""},
}};

constexpr std::array<std::string_view, 19> kStep4{
    "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
    "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
};

void step4(Word& w) {
    std::string_view best;
    for (std::string_view suffix : kStep4) {
        if (w.ends_with(suffix) && suffix.size() > best.size()) {
            best = suffix;
        }
    }
    if (best.empty()) {
        return;
    }
    const std::size_t stem = w.size() - best.size();
    if (w.measure(stem) <= 1) {
        return;
    }
    if (best == "ion") {
        // (*S or *T)ION
        Word probe = w;
        probe.replace_suffix(3, "");
        if (!(probe.ends_with("s") || probe.ends_with("t"))) {
            return;
        }
    }
    w.replace_suffix(best.size(), "");
}

void step5a(Word& w) {
    if (!w.ends_with("e")) {
        return;
    }
    const std::size_t stem = w.size() - 1;
    const int m = w.measure(stem);
    if (m > 1 || (m == 1 && !w.cvc(stem))) {
        w.pop();
    }
}

void step5b(Word& w) {
    if (w.ends_with("ll") && w.measure(w.size()) > 1) {
        w.pop();
    }
}

}  // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) {
        return std::string(word);
    }
    Word w(word);
    step1a(w);
    step1b(w);
    step1c(w);
    apply_longest(w, kStep2, 0);
    apply_longest(w, kStep3, 0);
    step4(w);
    step5a(w);
    step5b(w);
    return std::move(w).take();
}

}  // namespace newsclf
