#include <doctest.h>

#include "newsclf/config.hpp"
#include "newsclf/error.hpp"

using namespace newsclf;

TEST_CASE("config: defaults follow the documented settings") {
    const RunConfig c;
    CHECK(c.epochs == 50);
    CHECK(c.batch_size == 512);
    CHECK(c.learning_rate == 1e-4);
    CHECK(c.hidden == std::vector<std::size_t>{128, 64});
    CHECK(c.train_fraction == 0.8);
    CHECK(c.min_df == 2);
    CHECK(c.max_terms == 10000);
    CHECK(c.forest_trees == 101);
    CHECK(c.seed == 42);
    CHECK(c.resolved_forest_seed() == 42);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config: parse, comments, overrides and seeds") {
    const auto c = parse_run_config(
        "# comment\n"
        "epochs = 5\n"
        "  hidden=32, 16  \n"
        "learning_rate = 0.001 # trailing\n"
        "\n"
        "stem = false\n"
        "seed = 7\n"
        "svm_seed = 9\n");
    CHECK(c.epochs == 5);
    CHECK(c.hidden == std::vector<std::size_t>{32, 16});
    CHECK(c.learning_rate == 0.001);
    CHECK_FALSE(c.stem);
    CHECK(c.resolved_split_seed() == 7);
    CHECK(c.resolved_svm_seed() == 9);

    auto layered = parse_run_config("epochs = 3\n", c);
    CHECK(layered.epochs == 3);
    CHECK(layered.hidden == c.hidden);
    layered.set("epochs", "4");
    CHECK(layered.epochs == 4);
}

TEST_CASE("config: text form round-trips exactly") {
    RunConfig c;
    c.learning_rate = 0.1 + 0.2;
    c.svm_lambda = 1.0 / 3.0;
    c.hidden = {};
    c.out_dir = "some dir/with space";
    c.nn_init_seed = 123456789012345ULL;
    const auto back = parse_run_config(c.to_text());
    CHECK(back.learning_rate == c.learning_rate);
    CHECK(back.svm_lambda == c.svm_lambda);
    CHECK(back.hidden.empty());
    CHECK(back.out_dir == c.out_dir);
    CHECK(back.resolved_nn_init_seed() == 123456789012345ULL);
    CHECK(back.to_text() == c.to_text());
    CHECK(back.to_json() == c.to_json());
    CHECK(c.to_json().size() == RunConfig::keys().size());
}

TEST_CASE("config: errors") {
    RunConfig c;
    CHECK_THROWS_AS(c.set("no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(c.set("epochs", "ten"), ConfigError);
    CHECK_THROWS_AS(c.set("min_df", "-1"), ConfigError);
    CHECK_THROWS_AS(c.set("stem", "maybe"), ConfigError);
    CHECK_THROWS_AS(c.set("hidden", "12,,3"), ConfigError);
    CHECK_THROWS_AS(c.set("learning_rate", "1e-3x"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("epochs 5\n"), ConfigError);
    c.set("epochs", "-1");
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.forest_trees = 100;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.train_fraction = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(parse_dims("3,4") == std::vector<std::size_t>{3, 4});
    CHECK(parse_dims("").empty());
}
