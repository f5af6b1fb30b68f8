#include "newsclf/model.hpp"

#include "newsclf/error.hpp"
#include "newsclf/io.hpp"

namespace newsclf {

namespace {

template <typename... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <typename... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::string_view model_type(const Model& model) {
    return std::visit(overloaded{
                          [](const nn::DenseNetwork&) { return std::string_view("nn"); },
                          [](const baselines::DecisionTree&) { return std::string_view("tree"); },
                          [](const baselines::RandomForest&) { return std::string_view("forest"); },
                          [](const baselines::LinearSvm&) { return std::string_view("svc"); },
                      },
                      model);
}

std::size_t input_dim(const Model& model) {
    return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

int predict(const Model& model, const SparseVector& x) {
    return std::visit(overloaded{
                          [&](const nn::DenseNetwork& m) { return nn::predict(m, x); },
                          [&](const auto& m) { return m.predict(x); },
                      },
                      model);
}

double score(const Model& model, const SparseVector& x) {
    return std::visit(overloaded{
                          [&](const nn::DenseNetwork& m) { return nn::forward(m, x); },
                          [&](const baselines::LinearSvm& m) { return m.decision(x); },
                          [&](const auto& m) { return m.score(x); },
                      },
                      model);
}

nlohmann::ordered_json to_json(const Model& model) {
    return std::visit(overloaded{
                          [](const nn::DenseNetwork& m) { return nn::to_json(m); },
                          [](const auto& m) { return baselines::to_json(m); },
                      },
                      model);
}

Model model_from_json(const nlohmann::ordered_json& j) {
    if (!j.contains("type") || !j.at("type").is_string()) {
        throw FormatError("model file has no type");
    }
    const auto type = j.at("type").get<std::string>();
    if (type == "nn") {
        return nn::network_from_json(j);
    }
    if (type == "tree") {
        return baselines::tree_from_json(j);
    }
    if (type == "forest") {
        return baselines::forest_from_json(j);
    }
    if (type == "svc") {
        return baselines::svm_from_json(j);
    }
    throw FormatError("unknown model type '" + type + "'");
}

void save_model(const std::filesystem::path& path, const Model& model, const nlohmann::ordered_json& provenance) {
    auto j = to_json(model);
    j["provenance"] = provenance;
    io::write_file(path, j.dump() + "\n");
}

Model load_model(const std::filesystem::path& path) {
    try {
        return model_from_json(nlohmann::ordered_json::parse(io::read_file(path)));
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace newsclf
