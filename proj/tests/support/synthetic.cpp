#include "synthetic.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "newsclf/io.hpp"
#include "newsclf/rng.hpp"

namespace newsclf::testing {

namespace {

constexpr std::array<std::string_view, 24> kRealWords{
    "council", "budget",   "hospital", "farmers",  "drought", "highway",  "rainfall", "minister",
    "schools", "harbour",  "tourism",  "railway",  "fishing", "orchard",  "library",  "festival",
    "cricket", "bushfire", "wheat",    "shipping", "mining",  "pensions", "tram",     "vineyard"};

constexpr std::array<std::string_view, 24> kFakeWords{
    "shocking", "hoax",     "exposed",  "leaked",   "conspiracy", "globalist", "cover",   "deleted",
    "viral",    "illuminati", "rigged", "secretly", "bombshell",  "insider",   "coverup", "outrage",
    "destroys", "hidden",   "banned",   "censored", "chemtrails", "plot",      "traitor", "lies"};

constexpr std::array<std::string_view, 32> kFiller{
    "city",   "state",   "report", "week",   "people", "plan",    "year",   "group",
    "north",  "south",   "east",   "west",   "county", "nation",  "world",  "leader",
    "time",   "change",  "family", "house",  "street", "center",  "power",  "market",
    "public", "history", "credit", "energy", "water",  "keeper",  "garden", "bridge"};

std::string headline(Rng& rng, bool fake) {
    std::vector<std::string_view> words;
    const auto& pool = fake ? kFakeWords : kRealWords;
    const std::size_t n_class = 1 + rng.uniform_index(2);
    const std::size_t n_filler = 2 + rng.uniform_index(3);
    for (std::size_t i = 0; i < n_class; ++i) {
        words.push_back(pool[rng.uniform_index(pool.size())]);
    }
    for (std::size_t i = 0; i < n_filler; ++i) {
        words.push_back(kFiller[rng.uniform_index(kFiller.size())]);
    }
    rng.shuffle(std::span(words));
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        out += (i ? " " : "") + std::string(words[i]);
    }
    if (fake) {
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
    }
    return out;
}

}  // namespace

SourcePaths write_separable_corpus(const std::filesystem::path& dir, std::size_t n_real, std::size_t n_fake,
                                   std::uint64_t seed) {
    Rng rng(seed);
    std::string million = "publish_date,headline_text\n";
    for (std::size_t i = 0; i < n_real; ++i) {
        million += "20100101," + headline(rng, false) + "\n";
    }
    std::string fakereal = "title,text,subject,date\n";
    std::string gettingreal = "uuid,ord_in_thread,author,published,title,text,language\n";
    for (std::size_t i = 0; i < n_fake; ++i) {
        if (i % 2 == 0) {
            fakereal += headline(rng, true) + ",body,News,\"January 1, 2017\"\n";
        } else {
            gettingreal += std::to_string(i) + ",0,anon,2016-11-01," + headline(rng, true) + ",body,english\n";
        }
    }
    SourcePaths paths{(dir / "million.csv").string(), (dir / "fake_and_real.csv").string(),
                      (dir / "getting_real.csv").string()};
    io::write_file(paths.million, million);
    io::write_file(paths.fakereal, fakereal);
    io::write_file(paths.gettingreal, gettingreal);
    return paths;
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::path(NEWSCLF_SCRATCH_DIR) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path fixture_dir() { return NEWSCLF_FIXTURE_DIR; }

SourcePaths tiny_sources() {
    const auto d = fixture_dir() / "tiny";
    return {(d / "million.csv").string(), (d / "fake_and_real.csv").string(), (d / "getting_real.csv").string()};
}

}  // namespace newsclf::testing
