#include "newsclf/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "newsclf/error.hpp"

namespace newsclf::eval {

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths) {
    if (predictions.size() != truths.size()) {
        throw DimensionError("predictions and truths differ in length");
    }
    if (predictions.empty()) {
        throw DimensionError("confusion matrix of an empty set");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool p = predictions[i] == 1;
        const bool t = truths[i] == 1;
        if (p && t) {
            ++cm.tp;
        } else if (p) {
            ++cm.fp;
        } else if (t) {
            ++cm.fn;
        } else {
            ++cm.tn;
        }
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw DimensionError("accuracy of an empty confusion matrix");
    }
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.tp + cm.fp + cm.tn + cm.fn);
}

EvalReport make_report(std::size_t test_size, std::vector<ReportRow> rows) {
    EvalReport report;
    report.test_size = test_size;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ReportRow& a, const ReportRow& b) { return a.accuracy > b.accuracy; });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            report.deltas.push_back({rows[i].model, rows[j].model, rows[i].accuracy - rows[j].accuracy});
        }
    }
    report.rows = std::move(rows);
    return report;
}

EvalReport compare(const std::vector<NamedPredictor>& models, std::span<const SparseVector> features,
                   std::span<const int> labels) {
    if (features.empty()) {
        throw DimensionError("empty test set");
    }
    if (features.size() != labels.size()) {
        throw DimensionError("test features and labels differ in length");
    }
    const std::size_t dim = features.front().dim();
    std::vector<ReportRow> rows;
    std::vector<int> preds(features.size());
    for (const auto& m : models) {
        if (m.input_dim != dim) {
            throw DimensionError("model '" + m.name + "' expects dim " + std::to_string(m.input_dim) +
                                 ", features have " + std::to_string(dim));
        }
        for (std::size_t i = 0; i < features.size(); ++i) {
            preds[i] = m.predict(features[i]);
        }
        const auto cm = confusion(preds, labels);
        rows.push_back({m.name, cm, accuracy(cm)});
    }
    return make_report(features.size(), std::move(rows));
}

nlohmann::ordered_json to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["test_size"] = report.test_size;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json o;
        o["model"] = r.model;
        o["tp"] = r.cm.tp;
        o["fp"] = r.cm.fp;
        o["tn"] = r.cm.tn;
        o["fn"] = r.cm.fn;
        o["accuracy"] = r.accuracy;
        rows.push_back(std::move(o));
    }
    auto& deltas = j["deltas"] = nlohmann::ordered_json::array();
    for (const auto& d : report.deltas) {
        deltas.push_back({{"better", d.better}, {"worse", d.worse}, {"delta", d.delta}});
    }
    return j;
}

std::string format_table(const EvalReport& report) {
    std::size_t width = 6;
    for (const auto& r : report.rows) {
        width = std::max(width, r.model.size());
    }
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-*s  %-6s  %8s %8s %8s %8s\n", static_cast<int>(width), "Models", "ACC",
                  "TP", "FP", "TN", "FN");
    out << buf;
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%-*s  %.4f  %8zu %8zu %8zu %8zu\n", static_cast<int>(width),
                      r.model.c_str(), r.accuracy, r.cm.tp, r.cm.fp, r.cm.tn, r.cm.fn);
        out << buf;
    }
    out << "test size: " << report.test_size << '\n';
    return out.str();
}

}  // namespace newsclf::eval
