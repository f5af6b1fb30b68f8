#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "newsclf/error.hpp"
#include "newsclf/eval.hpp"
#include "newsclf/rng.hpp"

using namespace newsclf;
using namespace newsclf::eval;

TEST_CASE("confusion: hand-counted cases") {
    const std::vector<int> p1{1, 0}, t1{1, 0};
    CHECK(confusion(p1, t1) == ConfusionMatrix{1, 0, 1, 0});
    const std::vector<int> p2{1, 1, 0, 0}, t2{0, 1, 1, 0};
    CHECK(confusion(p2, t2) == ConfusionMatrix{1, 1, 1, 1});
    const std::vector<int> shorter{1};
    CHECK_THROWS_AS(confusion(p2, shorter), DimensionError);
    CHECK_THROWS_AS(confusion({}, {}), DimensionError);
}

TEST_CASE("accuracy: formula values") {
    CHECK(accuracy({1, 0, 1, 0}) == 1.0);
    CHECK(accuracy({1, 1, 1, 1}) == 0.5);
    CHECK_THROWS_AS(accuracy({}), DimensionError);
    // 10000 test headlines at the reported NN accuracy
    CHECK(accuracy({3000, 700, 5622, 678}) == doctest::Approx(0.8622).epsilon(1e-15));
}

TEST_CASE("confusion: partition, permutation and class-swap properties") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 200;
        std::vector<int> p(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = static_cast<int>(rng.uniform_index(2));
            t[i] = static_cast<int>(rng.uniform_index(2));
        }
        const auto cm = confusion(p, t);
        CHECK(cm.total() == n);

        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm[i] = i;
        }
        rng.shuffle(std::span(perm));
        std::vector<int> pp(n), tp(n), pf(n), tf(n);
        for (std::size_t i = 0; i < n; ++i) {
            pp[i] = p[perm[i]];
            tp[i] = t[perm[i]];
            pf[i] = 1 - p[i];
            tf[i] = 1 - t[i];
        }
        CHECK(confusion(pp, tp) == cm);
        const auto flipped = confusion(pf, tf);
        CHECK(flipped == cm.swapped());
        CHECK(accuracy(flipped) == accuracy(cm));
    }
}

TEST_CASE("report: sorting, deltas, JSON and table") {
    auto r = make_report(100, {{"Decision Tree", {}, 0.8488},
                               {"Random Forest", {}, 0.8589},
                               {"SVC", {}, 0.8542},
                               {"NN", {}, 0.8622}});
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0].model == "NN");
    CHECK(r.rows[1].model == "Random Forest");
    CHECK(r.rows[2].model == "SVC");
    CHECK(r.rows[3].model == "Decision Tree");
    CHECK(r.deltas.size() == 6);
    auto delta = [&](const std::string& a, const std::string& b) {
        for (const auto& d : r.deltas) {
            if (d.better == a && d.worse == b) {
                return d.delta;
            }
        }
        FAIL("missing delta");
        return 0.0;
    };
    CHECK(std::abs(delta("NN", "Decision Tree") - 0.0134) < 1e-12);
    CHECK(std::abs(delta("NN", "Random Forest") - 0.0033) < 1e-12);
    CHECK(std::abs(delta("NN", "SVC") - 0.0080) < 1e-12);

    const auto tied = make_report(4, {{"a", {}, 0.5}, {"b", {}, 0.75}, {"c", {}, 0.5}});
    CHECK(tied.rows[1].model == "a");
    CHECK(tied.rows[2].model == "c");
}

TEST_CASE("compare: perfect and constant models") {
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(i % 2 ? SparseVector(1, {{0, 1.0}}) : SparseVector(1));
        ys.push_back(i % 2);
    }
    const NamedPredictor perfect{"perfect", 1, [](const SparseVector& x) { return x.empty() ? 0 : 1; }};
    const NamedPredictor zero{"zero", 1, [](const SparseVector&) { return 0; }};

    const auto one = compare({perfect}, xs, ys);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].accuracy == 1.0);
    CHECK(one.test_size == 10);

    const auto two = compare({zero, perfect}, xs, ys);
    CHECK(two.rows[0].model == "perfect");
    CHECK(two.rows[1].accuracy == 0.5);
    CHECK(two.rows[1].cm == ConfusionMatrix{0, 0, 5, 5});
    for (const auto& row : two.rows) {
        CHECK(accuracy(row.cm) == row.accuracy);
    }

    const auto j = to_json(two);
    CHECK(j["test_size"] == 10);
    CHECK(j["rows"][1]["model"] == "zero");
    CHECK(j["rows"][1]["tn"] == 5);
    CHECK(j["rows"][1]["accuracy"] == 0.5);
    CHECK(j["deltas"][0]["delta"] == 0.5);

    const auto table = format_table(two);
    CHECK(table.find("Models") != std::string::npos);
    CHECK(table.find("ACC") != std::string::npos);
    CHECK(table.find("perfect") < table.find("zero"));
    CHECK(table.find("1.0000") != std::string::npos);

    CHECK_THROWS(compare({perfect}, {}, {}));
    const NamedPredictor wide{"wide", 2, [](const SparseVector&) { return 0; }};
    CHECK_THROWS_AS(compare({perfect, wide}, xs, ys), DimensionError);
}
