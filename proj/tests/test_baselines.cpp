#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "newsclf/decision_tree.hpp"
#include "newsclf/error.hpp"
#include "newsclf/linear_svm.hpp"
#include "newsclf/random_forest.hpp"
#include "newsclf/rng.hpp"

using namespace newsclf;
using namespace newsclf::baselines;

namespace {

SparseVector point(std::initializer_list<double> values) {
    std::vector<SparseEntry> e;
    std::uint32_t i = 0;
    for (double v : values) {
        if (v != 0.0) {
            e.push_back({i, v});
        }
        ++i;
    }
    return SparseVector(values.size(), std::move(e));
}

double gini(double a, double b) {
    const double n = a + b;
    return n == 0 ? 0.0 : 1.0 - (a / n) * (a / n) - (b / n) * (b / n);
}

// exhaustive best 1-D split: returns (threshold, weighted child impurity)
std::pair<double, double> best_split_oracle(const std::vector<double>& x, const std::vector<int>& y) {
    std::vector<double> vals(x);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    double best_t = 0, best_imp = 1e9;
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        const double t = (vals[k] + vals[k + 1]) / 2;
        double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            (x[i] <= t ? (y[i] ? l1 : l0) : (y[i] ? r1 : r0)) += 1;
        }
        const double imp = ((l0 + l1) * gini(l0, l1) + (r0 + r1) * gini(r0, r1)) / static_cast<double>(x.size());
        if (imp < best_imp - 1e-12) {
            best_imp = imp;
            best_t = t;
        }
    }
    return {best_t, best_imp};
}

double accuracy_on(const auto& model, const std::vector<SparseVector>& xs, const std::vector<int>& ys) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ok += model.predict(xs[i]) == ys[i];
    }
    return static_cast<double>(ok) / static_cast<double>(xs.size());
}

// two clusters separated along feature 0, noise on the rest
void separable_set(Rng& rng, std::size_t n, std::size_t dim, std::vector<SparseVector>& xs, std::vector<int>& ys) {
    for (std::size_t i = 0; i < n; ++i) {
        const int y = static_cast<int>(i % 2);
        std::vector<SparseEntry> e;
        e.push_back({0, y ? rng.uniform_real(1.0, 2.0) : rng.uniform_real(-2.0, -1.0)});
        for (std::uint32_t f = 1; f < dim; ++f) {
            if (rng.uniform_real() < 0.3) {
                e.push_back({f, rng.uniform_real(0.1, 1.0)});
            }
        }
        xs.push_back(SparseVector(dim, std::move(e)));
        ys.push_back(y);
    }
}

}  // namespace

TEST_CASE("tree: pure data gives a single leaf") {
    const std::vector<SparseVector> xs{point({1, 2}), point({3, 0}), point({0, 5})};
    const std::vector<int> ys{1, 1, 1};
    const auto t = train_tree(xs, ys, {1, 1, 0});
    REQUIRE(t.nodes().size() == 1);
    CHECK(t.nodes()[0].is_leaf());
    CHECK(t.nodes()[0].label == 1);
    CHECK(t.nodes()[0].counts == std::array<std::size_t, 2>{0, 3});
    CHECK(t.predict(point({9, 9})) == 1);
    CHECK(t.predict(point({0, 0})) == 1);
}

TEST_CASE("tree: 1-D root split at 2.5") {
    const std::vector<SparseVector> xs{point({1}), point({2}), point({3}), point({4})};
    const std::vector<int> ys{0, 0, 1, 1};
    const auto t = train_tree(xs, ys, {32, 1, 0});
    const auto& root = t.nodes()[0];
    REQUIRE_FALSE(root.is_leaf());
    CHECK(root.feature == 0);
    CHECK(root.threshold == 2.5);
    const auto& left = t.nodes()[static_cast<std::size_t>(root.left)];
    const auto& right = t.nodes()[static_cast<std::size_t>(root.right)];
    CHECK(left.is_leaf());
    CHECK(right.is_leaf());
    CHECK(left.counts == std::array<std::size_t, 2>{2, 0});
    CHECK(right.counts == std::array<std::size_t, 2>{0, 2});
    CHECK(t.depth() == 1);
}

TEST_CASE("tree: majority tie goes to label 0") {
    const std::vector<SparseVector> xs{point({1}), point({1})};
    const std::vector<int> ys{1, 0};
    const auto t = train_tree(xs, ys, {});
    CHECK(t.nodes().size() == 1);
    CHECK(t.nodes()[0].label == 0);
}

TEST_CASE("tree: XOR is solved at depth 2 but not at depth 1") {
    const std::vector<SparseVector> xs{point({0, 0}), point({0, 1}), point({1, 0}), point({1, 1})};
    const std::vector<int> ys{0, 1, 1, 0};
    // oracle: every axis-aligned stump on XOR classifies exactly half correctly
    for (int f = 0; f < 2; ++f) {
        for (int left_label = 0; left_label < 2; ++left_label) {
            std::size_t ok = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                const double v = xs[i].at(static_cast<std::size_t>(f));
                ok += (v <= 0.5 ? left_label : 1 - left_label) == ys[i];
            }
            CHECK(ok == 2);
        }
    }
    CHECK(accuracy_on(train_tree(xs, ys, {1, 1, 0}), xs, ys) == 0.5);
    const auto t2 = train_tree(xs, ys, {2, 1, 0});
    CHECK(accuracy_on(t2, xs, ys) == 1.0);
    CHECK(t2.depth() == 2);

    std::vector<SparseVector> dup(xs);
    std::vector<int> dup_y(ys);
    dup.insert(dup.end(), xs.begin(), xs.end());
    dup_y.insert(dup_y.end(), ys.begin(), ys.end());
    CHECK(accuracy_on(train_tree(dup, dup_y, {2, 2, 0}), dup, dup_y) == 1.0);
}

TEST_CASE("tree: root split matches exhaustive Gini search on small 1-D sets") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(7);
        std::vector<double> x(n);
        std::vector<int> y(n);
        std::vector<SparseVector> xs;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng.uniform_index(6)) - 2.0;
            y[i] = static_cast<int>(rng.uniform_index(2));
            xs.push_back(point({x[i]}));
        }
        const auto t = train_tree(xs, y, {1, 1, 0});
        const bool pure = std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; });
        const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
        if (pure || constant) {
            CHECK(t.nodes()[0].is_leaf());
            continue;
        }
        const auto [thr, imp] = best_split_oracle(x, y);
        REQUIRE_FALSE(t.nodes()[0].is_leaf());
        const auto& l = t.nodes()[static_cast<std::size_t>(t.nodes()[0].left)];
        const auto& r = t.nodes()[static_cast<std::size_t>(t.nodes()[0].right)];
        const double got = (static_cast<double>(l.samples()) * gini(double(l.counts[0]), double(l.counts[1])) +
                            static_cast<double>(r.samples()) * gini(double(r.counts[0]), double(r.counts[1]))) /
                           static_cast<double>(n);
        CAPTURE(trial);
        CHECK(got == doctest::Approx(imp).epsilon(1e-12));
        std::vector<double> vals(x);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        bool is_midpoint = false;
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            is_midpoint |= t.nodes()[0].threshold == (vals[k] + vals[k + 1]) / 2;
        }
        CHECK(is_midpoint);
        CHECK(t.nodes()[0].threshold <= thr);
    }
}

TEST_CASE("tree: structural invariants and routing") {
    Rng rng(6);
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    for (int i = 0; i < 300; ++i) {
        std::vector<SparseEntry> e;
        for (std::uint32_t f = 0; f < 6; ++f) {
            if (rng.uniform_real() < 0.5) {
                e.push_back({f, static_cast<double>(1 + rng.uniform_index(4))});
            }
        }
        xs.push_back(SparseVector(6, std::move(e)));
        ys.push_back(static_cast<int>(rng.uniform_index(2)));
    }
    const auto t = train_tree(xs, ys, {6, 3, 0});
    CHECK(t.depth() <= 6);
    const auto nodes = t.nodes();
    CHECK(nodes[0].samples() == xs.size());
    for (const auto& n : nodes) {
        if (n.is_leaf()) {
            CHECK(n.samples() >= 3);
            continue;
        }
        const auto& l = nodes[static_cast<std::size_t>(n.left)];
        const auto& r = nodes[static_cast<std::size_t>(n.right)];
        CHECK(l.samples() + r.samples() == n.samples());
        CHECK(l.samples() < n.samples());
        CHECK(r.samples() < n.samples());
        CHECK(n.feature < 6);
    }
    // each training point lands in a leaf whose counts include it
    std::vector<std::array<std::size_t, 2>> seen(nodes.size(), {0, 0});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto* leaf = &t.leaf_for(xs[i]);
        ++seen[static_cast<std::size_t>(leaf - nodes.data())][static_cast<std::size_t>(ys[i])];
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].is_leaf()) {
            CHECK(seen[k] == nodes[k].counts);
        }
    }
    CHECK_THROWS_AS(t.predict(SparseVector(5)), DimensionError);
}

TEST_CASE("tree: JSON round trip") {
    const std::vector<SparseVector> xs{point({1, 0}), point({2, 1}), point({3, 0}), point({4, 1})};
    const std::vector<int> ys{0, 1, 1, 0};
    const auto t = train_tree(xs, ys, {4, 1, 0});
    CHECK(tree_from_json(nlohmann::ordered_json::parse(to_json(t).dump())) == t);
    auto bad = to_json(t);
    bad["nodes"][0]["left"] = 99;
    CHECK_THROWS_AS(tree_from_json(bad), FormatError);
}

TEST_CASE("forest: degenerate single tree equals train_tree") {
    Rng rng(2);
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    separable_set(rng, 60, 5, xs, ys);
    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.bootstrap = false;
    cfg.features_per_split = 5;
    cfg.min_leaf = 2;
    const auto f = train_forest(xs, ys, cfg);
    REQUIRE(f.size() == 1);
    CHECK(f.trees()[0] == train_tree(xs, ys, {cfg.max_depth, cfg.min_leaf, 0}));
}

TEST_CASE("forest: determinism across thread counts, vote rules") {
    Rng rng(4);
    std::vector<SparseVector> xs, test_x;
    std::vector<int> ys, test_y;
    separable_set(rng, 200, 16, xs, ys);
    separable_set(rng, 100, 16, test_x, test_y);
    ForestConfig cfg;
    cfg.n_trees = 15;
    cfg.threads = 1;
    const auto a = train_forest(xs, ys, cfg);
    cfg.threads = 4;
    const auto b = train_forest(xs, ys, cfg);
    CHECK(a == b);
    for (const auto& x : test_x) {
        CHECK(a.predict(x) == b.predict(x));
        CHECK(a.score(x) == static_cast<double>(a.votes_for_fake(x)) / 15.0);
        CHECK(a.predict(x) == (a.votes_for_fake(x) * 2 > 15 ? 1 : 0));
    }
    const auto tree = train_tree(xs, ys, {});
    CHECK(accuracy_on(a, xs, ys) >= accuracy_on(tree, test_x, test_y));
    CHECK(accuracy_on(a, test_x, test_y) >= 0.95);

    const RandomForest three({tree, tree, tree});
    for (const auto& x : test_x) {
        CHECK(three.predict(x) == tree.predict(x));
    }
    CHECK(ceil_sqrt(16) == 4);
    CHECK(ceil_sqrt(17) == 5);
    CHECK(ceil_sqrt(10000) == 100);
    CHECK(ceil_sqrt(1) == 1);
}

TEST_CASE("forest: one vote changes the outcome only at a one-vote margin") {
    const auto leaf = [](int label) { return DecisionTree(1, {TreeNode{-1, 0, -1, -1, label, {0, 0}}}); };
    const SparseVector x(1);
    for (std::size_t fake = 0; fake <= 5; ++fake) {
        std::vector<DecisionTree> trees;
        for (std::size_t i = 0; i < 5; ++i) {
            trees.push_back(leaf(i < fake ? 1 : 0));
        }
        const int before = RandomForest(trees).predict(x);
        for (std::size_t k = 0; k < 5; ++k) {
            auto flipped = trees;
            flipped[k] = leaf(k < fake ? 0 : 1);
            const int after = RandomForest(flipped).predict(x);
            const bool one_vote_margin = fake == 2 || fake == 3;
            if (!one_vote_margin) {
                CHECK(after == before);
            }
        }
    }
}

TEST_CASE("forest: configuration errors") {
    const std::vector<SparseVector> xs{point({1}), point({2})};
    const std::vector<int> ys{0, 1};
    ForestConfig cfg;
    cfg.n_trees = 4;
    CHECK_THROWS_AS(train_forest(xs, ys, cfg), ConfigError);
    cfg.n_trees = 0;
    CHECK_THROWS_AS(train_forest(xs, ys, cfg), ConfigError);
    CHECK_THROWS_AS(train_forest({xs.data(), 1}, {ys.data(), 1}, {}), ConfigError);
    const auto t = train_tree(xs, ys, {});
    CHECK_THROWS_AS(RandomForest({t, t}), FormatError);
}

TEST_CASE("forest: JSON round trip") {
    Rng rng(9);
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    separable_set(rng, 50, 4, xs, ys);
    ForestConfig cfg;
    cfg.n_trees = 5;
    const auto f = train_forest(xs, ys, cfg);
    CHECK(forest_from_json(nlohmann::ordered_json::parse(to_json(f).dump())) == f);
}

TEST_CASE("svm: margin-separated data") {
    Rng rng(13);
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    separable_set(rng, 200, 6, xs, ys);
    SvmConfig cfg;
    cfg.lambda = 1e-3;
    cfg.epochs = 30;
    const auto res = train_svm(xs, ys, cfg);
    CHECK(accuracy_on(res.model, xs, ys) == 1.0);
    double hinge = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        hinge += std::max(0.0, 1.0 - (ys[i] ? 1.0 : -1.0) * res.model.decision(xs[i]));
    }
    CHECK(hinge / static_cast<double>(xs.size()) < 0.01);
    REQUIRE(res.objective_history.size() == 31);
    CHECK(res.objective_history.front() == doctest::Approx(1.0));
    CHECK(res.objective_history.back() < res.objective_history.front());
    CHECK(res.objective_history.back() == doctest::Approx(svm_objective(res.model, xs, ys)).epsilon(1e-12));

    const auto again = train_svm(xs, ys, cfg);
    CHECK(again.model == res.model);
}

TEST_CASE("svm: single-class data predicts that class everywhere") {
    Rng rng(14);
    std::vector<SparseVector> xs;
    std::vector<int> ys;
    separable_set(rng, 40, 4, xs, ys);
    for (int label : {0, 1}) {
        std::vector<int> same(ys.size(), label);
        const auto m = train_svm(xs, same, {}).model;
        for (const auto& x : xs) {
            CHECK(m.predict(x) == label);
        }
    }
}

TEST_CASE("svm: prediction is the sign of w.x + b") {
    const LinearSvm zero(std::vector<double>(3, 0.0), 0.0, 1e-4);
    CHECK(zero.predict(point({1, -2, 3})) == 1);
    const LinearSvm m({1.0, -1.0}, 0.0, 1e-4);
    CHECK(m.predict(point({1, 1})) == 1);
    CHECK(m.predict(point({1, 2})) == 0);
    CHECK(m.predict(point({2, 1})) == 1);
    CHECK_THROWS_AS(LinearSvm({1.0}, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(LinearSvm({NAN}, 0.0, 1.0), FormatError);
    CHECK(svm_from_json(nlohmann::ordered_json::parse(to_json(m).dump())) == m);
}
