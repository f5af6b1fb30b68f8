#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "newsclf/config.hpp"
#include "newsclf/corpus.hpp"
#include "newsclf/eval.hpp"
#include "newsclf/model.hpp"
#include "newsclf/textprep.hpp"
#include "newsclf/vectorize.hpp"

namespace newsclf {

struct SourceCounts {
    std::string source;
    std::string path;
    std::size_t records = 0;
    std::size_t skipped_empty = 0;
    std::size_t non_english = 0;
    std::size_t row_errors = 0;
};

struct IngestSummary {
    std::vector<HeadlineRecord> records;
    std::vector<SourceCounts> sources;
    std::vector<RowError> row_errors;
    std::size_t duplicates_removed = 0;

    std::size_t count(Label label) const;
    nlohmann::ordered_json to_json() const;
};

struct SourcePaths {
    std::string million;
    std::string fakereal;
    std::string gettingreal;
};

/// Ingests the given sources in the order MillionHeadlines, FakeAndReal,
/// GettingReal with ids running on across files. Empty paths are skipped.
IngestSummary ingest_sources(const SourcePaths& paths, std::size_t million_limit, bool dedupe);

std::vector<TokenizedDoc> preprocess_records(const std::vector<HeadlineRecord>& records,
                                             const PreprocessOptions& options);

struct PipelineResult {
    eval::EvalReport report;
    nlohmann::ordered_json report_json;
};

/// ingest -> preprocess -> vocabulary (train split) -> transform -> train
/// the network and the three baselines -> evaluate on the test split.
/// Every artifact goes to config.out_dir. A failure is rethrown as
/// StageError naming the stage.
PipelineResult run_pipeline(const RunConfig& config);

struct Prediction {
    int label = 0;
    double score = 0.0;

    std::string_view label_name() const { return label == 1 ? "fake" : "real"; }
};

/// Throws VersionError when the model and vocabulary widths differ.
Prediction predict_one(const Model& model, const VocabularyFile& vocab, std::string_view headline);
Prediction predict_one(const std::filesystem::path& model_path, const std::filesystem::path& vocab_path,
                       std::string_view headline);

/// Report names used for the four pipeline models.
inline constexpr std::string_view kNnName = "NN";
inline constexpr std::string_view kTreeName = "Decision Tree";
inline constexpr std::string_view kForestName = "Random Forest";
inline constexpr std::string_view kSvcName = "SVC";

}  // namespace newsclf
