#include "newsclf/dataset.hpp"

#include <string>

#include <json.hpp>

#include "newsclf/error.hpp"
#include "newsclf/io.hpp"

namespace newsclf {

namespace {

template <typename Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
    auto in = io::open_input(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            fn(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + " line " + std::to_string(lineno) + ": " + e.what());
        } catch (const Error& e) {
            throw FormatError(path.string() + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace

void write_features_jsonl(const std::filesystem::path& path, const FeatureMatrix& matrix) {
    if (matrix.ids.size() != matrix.rows.size()) {
        throw DimensionError("feature ids and rows differ in length");
    }
    auto out = io::open_output(path);
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const auto& row = matrix.rows[r];
        nlohmann::ordered_json j;
        j["id"] = matrix.ids[r];
        j["dim"] = row.dim();
        auto idx = nlohmann::ordered_json::array();
        auto val = nlohmann::ordered_json::array();
        for (const auto& e : row.entries()) {
            idx.push_back(e.index);
            val.push_back(e.value);
        }
        j["indices"] = std::move(idx);
        j["values"] = std::move(val);
        out << j.dump() << '\n';
    }
}

FeatureMatrix read_features_jsonl(const std::filesystem::path& path) {
    FeatureMatrix m;
    bool first = true;
    for_each_json_line(path, [&](const nlohmann::json& j) {
        const auto dim = j.at("dim").get<std::size_t>();
        if (first) {
            m.dim = dim;
            first = false;
        } else if (dim != m.dim) {
            throw DimensionError("row dim " + std::to_string(dim) + " != " + std::to_string(m.dim));
        }
        const auto idx = j.at("indices").get<std::vector<std::uint32_t>>();
        const auto val = j.at("values").get<std::vector<double>>();
        if (idx.size() != val.size()) {
            throw FormatError("indices and values differ in length");
        }
        std::vector<SparseEntry> entries(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            entries[k] = {idx[k], val[k]};
        }
        m.ids.push_back(j.at("id").get<std::int64_t>());
        m.rows.emplace_back(dim, std::move(entries));
    });
    return m;
}

std::unordered_map<std::int64_t, int> read_labels_jsonl(const std::filesystem::path& path) {
    std::unordered_map<std::int64_t, int> labels;
    for_each_json_line(path, [&](const nlohmann::json& j) {
        const int label = j.at("label").get<int>();
        if (label != 0 && label != 1) {
            throw FormatError("label must be 0 or 1");
        }
        labels[j.at("id").get<std::int64_t>()] = label;
    });
    return labels;
}

void write_labels_jsonl(const std::filesystem::path& path, const std::vector<std::int64_t>& ids,
                        const std::vector<int>& labels) {
    if (ids.size() != labels.size()) {
        throw DimensionError("ids and labels differ in length");
    }
    auto out = io::open_output(path);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << "{\"id\":" << ids[i] << ",\"label\":" << labels[i] << "}\n";
    }
}

std::vector<int> align_labels(const FeatureMatrix& matrix,
                              const std::unordered_map<std::int64_t, int>& labels) {
    std::vector<int> out;
    out.reserve(matrix.ids.size());
    for (auto id : matrix.ids) {
        auto it = labels.find(id);
        if (it == labels.end()) {
            throw FormatError("no label for feature row id " + std::to_string(id));
        }
        out.push_back(it->second);
    }
    return out;
}

void check_binary_labels(const std::vector<int>& labels) {
    for (int y : labels) {
        if (y != 0 && y != 1) {
            throw FormatError("labels must be 0 or 1, got " + std::to_string(y));
        }
    }
}

}  // namespace newsclf
