#include "newsclf/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "newsclf/error.hpp"
#include "newsclf/io.hpp"

namespace newsclf {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        bad_value(key, value);
    }
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        bad_value(key, value);
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    bad_value(key, value);
}

std::string format_double(double v) {
    // shortest text that parses back to the same double
    return nlohmann::json(v).dump();
}

std::string join_dims(const std::vector<std::size_t>& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        out += (i ? "," : "") + std::to_string(dims[i]);
    }
    return out;
}

struct Field {
    std::function<void(RunConfig&, std::string_view, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field integer_field(T RunConfig::*member) {
    return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_integer<T>(k, v); },
            [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

Field double_field(double RunConfig::*member) {
    return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_double(k, v); },
            [member](const RunConfig& c) { return format_double(c.*member); }};
}

Field bool_field(bool RunConfig::*member) {
    return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_bool(k, v); },
            [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

Field string_field(std::string RunConfig::*member) {
    return {[member](RunConfig& c, std::string_view, std::string_view v) { c.*member = std::string(v); },
            [member](const RunConfig& c) { return c.*member; }};
}

Field seed_field(std::optional<std::uint64_t> RunConfig::*member,
                 std::uint64_t (RunConfig::*resolved)() const) {
    return {[member](RunConfig& c, std::string_view k, std::string_view v) {
                c.*member = parse_integer<std::uint64_t>(k, v);
            },
            [resolved](const RunConfig& c) { return std::to_string((c.*resolved)()); }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table = {
        {"million_path", string_field(&RunConfig::million_path)},
        {"fakereal_path", string_field(&RunConfig::fakereal_path)},
        {"gettingreal_path", string_field(&RunConfig::gettingreal_path)},
        {"out_dir", string_field(&RunConfig::out_dir)},
        {"million_limit", integer_field(&RunConfig::million_limit)},
        {"dedupe", bool_field(&RunConfig::dedupe)},
        {"train_fraction", double_field(&RunConfig::train_fraction)},
        {"remove_stopwords", bool_field(&RunConfig::remove_stopwords)},
        {"stem", bool_field(&RunConfig::stem)},
        {"min_df", integer_field(&RunConfig::min_df)},
        {"max_terms", integer_field(&RunConfig::max_terms)},
        {"hidden",
         {[](RunConfig& c, std::string_view, std::string_view v) { c.hidden = parse_dims(v); },
          [](const RunConfig& c) { return join_dims(c.hidden); }}},
        {"epochs", integer_field(&RunConfig::epochs)},
        {"batch_size", integer_field(&RunConfig::batch_size)},
        {"learning_rate", double_field(&RunConfig::learning_rate)},
        {"tree_max_depth", integer_field(&RunConfig::tree_max_depth)},
        {"tree_min_leaf", integer_field(&RunConfig::tree_min_leaf)},
        {"forest_trees", integer_field(&RunConfig::forest_trees)},
        {"forest_max_depth", integer_field(&RunConfig::forest_max_depth)},
        {"forest_min_leaf", integer_field(&RunConfig::forest_min_leaf)},
        {"forest_features", integer_field(&RunConfig::forest_features)},
        {"svm_lambda", double_field(&RunConfig::svm_lambda)},
        {"svm_epochs", integer_field(&RunConfig::svm_epochs)},
        {"threads", integer_field(&RunConfig::threads)},
        {"seed", integer_field(&RunConfig::seed)},
        {"split_seed", seed_field(&RunConfig::split_seed, &RunConfig::resolved_split_seed)},
        {"nn_init_seed", seed_field(&RunConfig::nn_init_seed, &RunConfig::resolved_nn_init_seed)},
        {"nn_shuffle_seed", seed_field(&RunConfig::nn_shuffle_seed, &RunConfig::resolved_nn_shuffle_seed)},
        {"forest_seed", seed_field(&RunConfig::forest_seed, &RunConfig::resolved_forest_seed)},
        {"svm_seed", seed_field(&RunConfig::svm_seed, &RunConfig::resolved_svm_seed)},
    };
    return table;
}

}  // namespace

std::vector<std::size_t> parse_dims(std::string_view text) {
    std::vector<std::size_t> dims;
    text = trim(text);
    if (text.empty()) {
        return dims;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto part = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        const auto d = parse_integer<std::size_t>("hidden", part);
        if (d == 0) {
            bad_value("hidden", text);
        }
        dims.push_back(d);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return dims;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    for (const auto& [name, field] : fields()) {
        if (name == key) {
            field.set(*this, key, trim(value));
            return;
        }
    }
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train_fraction must lie in (0, 1)");
    }
    if (epochs < 1) {
        throw ConfigError("epochs must be at least 1");
    }
    if (batch_size < 1) {
        throw ConfigError("batch_size must be at least 1");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("learning_rate must be positive");
    }
    if (forest_trees < 1 || forest_trees % 2 == 0) {
        throw ConfigError("forest_trees must be a positive odd number");
    }
    if (tree_min_leaf < 1 || forest_min_leaf < 1) {
        throw ConfigError("min_leaf values must be at least 1");
    }
    if (!(svm_lambda > 0.0)) {
        throw ConfigError("svm_lambda must be positive");
    }
    if (svm_epochs < 1) {
        throw ConfigError("svm_epochs must be at least 1");
    }
}

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, field] : fields()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    for (const auto& [name, field] : fields()) {
        out << name << " = " << field.get(*this) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [name, field] : fields()) {
        j[name] = field.get(*this);
    }
    return j;
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
    return parse_run_config(io::read_file(path), std::move(base));
}

}  // namespace newsclf
