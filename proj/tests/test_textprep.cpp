#include <doctest.h>

#include <algorithm>
#include <map>

#include "newsclf/error.hpp"
#include "newsclf/porter.hpp"
#include "newsclf/textprep.hpp"
#include "support/synthetic.hpp"
#include "newsclf/corpus.hpp"

using namespace newsclf;

using Tokens = std::vector<std::string>;

TEST_CASE("tokenize") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("Trump's WALL: 2 Billion?!") == Tokens{"trump", "wall", "billion"});
    CHECK(tokenize("COVID19 vs 2020 a b cd") == Tokens{"covid19", "vs", "cd"});
    CHECK(tokenize("caf\xC3\xA9 ol\xC3\xA9") == Tokens{"caf", "ol"});
    CHECK(tokenize("x-ray, e-mail; U.S.") == Tokens{"ray", "mail"});
}

TEST_CASE("tokenize is idempotent on its own output") {
    for (const auto* text : {"Trump's WALL: 2 Billion?!", "BREAKING:   Hillary's E-mails (LEAKED)", "  "}) {
        const auto once = tokenize(text);
        std::string joined;
        for (const auto& t : once) {
            joined += t + " ";
        }
        CHECK(tokenize(joined) == once);
    }
}

TEST_CASE("stop words") {
    const auto& en = StopWordList::english();
    CHECK(en.size() == 179);
    CHECK(en.contains("the"));
    CHECK(en.contains("mightn't") == true);
    CHECK_FALSE(en.contains("wall"));
    CHECK(remove_stopwords({"the", "wall", "is", "tall"}, en) == Tokens{"wall", "tall"});
    CHECK(remove_stopwords({}, en).empty());
    CHECK(remove_stopwords({"wall", "tall"}, en) == Tokens{"wall", "tall"});
    for (const auto& w : en.words()) {
        CHECK_FALSE(w.empty());
        CHECK(std::none_of(w.begin(), w.end(), [](char c) { return c >= 'A' && c <= 'Z'; }));
    }
    CHECK_THROWS_AS(StopWordList({"Bad"}), FormatError);
    CHECK_THROWS_AS(StopWordList({""}), FormatError);
}

TEST_CASE("Porter stemmer: reference vocabulary") {
    const std::map<std::string, std::string> cases = {
        {"caresses", "caress"},     {"ponies", "poni"},        {"ties", "ti"},
        {"caress", "caress"},       {"cats", "cat"},           {"feed", "feed"},
        {"agreed", "agre"},         {"plastered", "plaster"},  {"bled", "bled"},
        {"motoring", "motor"},      {"sing", "sing"},          {"conflated", "conflat"},
        {"troubled", "troubl"},     {"sized", "size"},         {"hopping", "hop"},
        {"tanned", "tan"},          {"falling", "fall"},       {"hissing", "hiss"},
        {"fizzed", "fizz"},         {"failing", "fail"},       {"filing", "file"},
        {"happy", "happi"},         {"sky", "sky"},            {"relational", "relat"},
        {"conditional", "condit"},  {"rational", "ration"},    {"valenci", "valenc"},
        {"hesitanci", "hesit"},     {"digitizer", "digit"},    {"conformabli", "conform"},
        {"radicalli", "radic"},     {"differentli", "differ"}, {"vileli", "vile"},
        {"analogousli", "analog"},  {"vietnamization", "vietnam"}, {"predication", "predic"},
        {"operator", "oper"},       {"feudalism", "feudal"},   {"decisiveness", "decis"},
        {"hopefulness", "hope"},    {"callousness", "callous"}, {"formaliti", "formal"},
        {"sensitiviti", "sensit"},  {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
        {"formative", "form"},      {"formalize", "formal"},   {"electriciti", "electr"},
        {"electrical", "electr"},   {"hopeful", "hope"},       {"goodness", "good"},
        {"revival", "reviv"},       {"allowance", "allow"},    {"inference", "infer"},
        {"airliner", "airlin"},     {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
        {"defensible", "defens"},   {"irritant", "irrit"},     {"replacement", "replac"},
        {"adjustment", "adjust"},   {"dependent", "depend"},   {"adoption", "adopt"},
        {"homologou", "homolog"},   {"communism", "commun"},   {"activate", "activ"},
        {"angulariti", "angular"},  {"homologous", "homolog"}, {"effective", "effect"},
        {"bowdlerize", "bowdler"},  {"probate", "probat"},     {"rate", "rate"},
        {"cease", "ceas"},          {"controll", "control"},   {"roll", "roll"},
        {"generalizations", "gener"}, {"oscillators", "oscil"}, {"running", "run"},
        {"run", "run"},             {"is", "is"},              {"news", "new"},
    };
    for (const auto& [word, expected] : cases) {
        CAPTURE(word);
        CHECK(porter_stem(word) == expected);
    }
}

TEST_CASE("stem: known stems and idempotence") {
    CHECK(stem("cats") == "cat");
    CHECK(stem("run") == "run");
    CHECK(stem("relational") == "relat");
    CHECK(stem("agreed") == stem(stem("agreed")));

    auto paths = testing::tiny_sources();
    std::vector<std::string> words;
    for (const auto& [p, s] : {std::pair{paths.million, Source::MillionHeadlines},
                               std::pair{paths.fakereal, Source::FakeAndReal},
                               std::pair{paths.gettingreal, Source::GettingReal}}) {
        for (const auto& r : ingest(p, s).records) {
            for (auto& t : tokenize(r.text)) {
                words.push_back(std::move(t));
            }
        }
    }
    for (const auto* w : {"agreed", "generalization", "feed", "operational", "ableness", "sensational", "aaa1",
                          "b2b", "conditionally", "abilities", "hopefulness"}) {
        words.emplace_back(w);
    }
    REQUIRE(words.size() > 100);
    for (const auto& w : words) {
        CAPTURE(w);
        const auto s = stem(w);
        CHECK_FALSE(s.empty());
        CHECK(stem(s) == s);
    }
}

TEST_CASE("preprocess") {
    const auto doc = preprocess("The cats are running", 9);
    CHECK(doc.doc_id == 9);
    CHECK(doc.tokens == Tokens{"cat", "run"});
    CHECK(preprocess("").tokens.empty());
    CHECK(preprocess("the and of it").tokens.empty());
    CHECK(preprocess("The cats are running", 0, {false, false}).tokens == Tokens{"the", "cats", "are", "running"});
    CHECK(preprocess("The cats are running", 0, {true, false}).tokens == Tokens{"cats", "running"});
    CHECK(preprocess("The cats are running", 0, {false, true}).tokens == Tokens{"the", "cat", "ar", "run"});
}

TEST_CASE("preprocess output never contains a stop word that survived filtering") {
    // stemming happens after filtering; a stem may coincide with a stop word
    // ("doing" is a stop word, "does" stems to "doe") but no unstemmed stop word remains
    const auto& en = StopWordList::english();
    for (const auto* text : {"What are they doing about the wall?", "Hillary's emails: all of them, again",
                             "Obama was there before, now he's here"}) {
        const auto filtered = remove_stopwords(tokenize(text), en);
        for (const auto& t : filtered) {
            CHECK_FALSE(en.contains(t));
        }
        Tokens stemmed;
        for (const auto& t : filtered) {
            stemmed.push_back(stem(t));
        }
        CHECK(preprocess(text).tokens == stemmed);
    }
}
