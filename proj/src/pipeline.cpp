#include "newsclf/pipeline.hpp"

#include <utility>

#include "newsclf/dataset.hpp"
#include "newsclf/error.hpp"
#include "newsclf/io.hpp"

namespace newsclf {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

eval::NamedPredictor named(std::string_view name, const Model& model) {
    return {std::string(name), input_dim(model), [&model](const SparseVector& x) { return predict(model, x); }};
}

}  // namespace

std::size_t IngestSummary::count(Label label) const {
    std::size_t n = 0;
    for (const auto& r : records) {
        n += r.label == label ? 1 : 0;
    }
    return n;
}

nlohmann::ordered_json IngestSummary::to_json() const {
    nlohmann::ordered_json j;
    j["records"] = records.size();
    j["real"] = count(Label::Real);
    j["fake"] = count(Label::Fake);
    j["duplicates_removed"] = duplicates_removed;
    auto& src = j["sources"] = nlohmann::ordered_json::array();
    for (const auto& s : sources) {
        src.push_back({{"source", s.source},
                       {"records", s.records},
                       {"skipped_empty", s.skipped_empty},
                       {"non_english", s.non_english},
                       {"row_errors", s.row_errors}});
    }
    return j;
}

IngestSummary ingest_sources(const SourcePaths& paths, std::size_t million_limit, bool dedupe) {
    IngestSummary summary;
    std::int64_t next_id = 0;
    const std::pair<const std::string*, Source> inputs[] = {
        {&paths.million, Source::MillionHeadlines},
        {&paths.fakereal, Source::FakeAndReal},
        {&paths.gettingreal, Source::GettingReal},
    };
    for (const auto& [path, source] : inputs) {
        if (path->empty()) {
            continue;
        }
        IngestOptions opts;
        opts.first_id = next_id;
        opts.limit = source == Source::MillionHeadlines ? million_limit : 0;
        auto result = ingest(*path, source, opts);
        next_id += static_cast<std::int64_t>(result.records.size());
        summary.sources.push_back({std::string(to_string(source)), *path, result.records.size(),
                                   result.skipped_empty, result.non_english, result.row_errors.size()});
        for (auto& e : result.row_errors) {
            summary.row_errors.push_back({e.line, *path + ": " + e.message});
        }
        for (auto& r : result.records) {
            summary.records.push_back(std::move(r));
        }
    }
    if (dedupe) {
        auto d = newsclf::dedupe(std::move(summary.records));
        summary.records = std::move(d.records);
        summary.duplicates_removed = d.removed;
    }
    return summary;
}

std::vector<TokenizedDoc> preprocess_records(const std::vector<HeadlineRecord>& records,
                                             const PreprocessOptions& options) {
    std::vector<TokenizedDoc> docs;
    docs.reserve(records.size());
    for (const auto& r : records) {
        docs.push_back(preprocess(r.text, r.id, options));
    }
    return docs;
}

PipelineResult run_pipeline(const RunConfig& config) {
    stage("config", [&] {
        config.validate();
        return 0;
    });
    const std::filesystem::path dir = config.out_dir;
    const auto resolved = config.to_json();
    nlohmann::ordered_json provenance;
    provenance["config"] = resolved;

    stage("config", [&] {
        io::write_file(dir / "config.ini", config.to_text());
        return 0;
    });

    auto ingested = stage("ingest", [&] {
        auto s = ingest_sources({config.million_path, config.fakereal_path, config.gettingreal_path},
                                config.million_limit, config.dedupe);
        write_corpus_jsonl(dir / "corpus.jsonl", s.records);
        return s;
    });

    const Corpus corpus = stage("split", [&] {
        return Corpus(ingested.records, config.train_fraction, config.resolved_split_seed());
    });

    const PreprocessOptions text_options{config.remove_stopwords, config.stem};
    const auto docs = stage("preprocess", [&] {
        auto d = preprocess_records(corpus.records(), text_options);
        write_tokens_jsonl(dir / "tokens.jsonl", d);
        return d;
    });

    struct Features {
        VocabularyFile vocab;
        std::vector<SparseVector> train_x, test_x;
        std::vector<int> train_y, test_y;
    };
    const Features data = stage("vectorize", [&] {
        Features f;
        std::vector<TokenizedDoc> train_docs;
        for (auto i : corpus.split().train) {
            train_docs.push_back(docs[i]);
        }
        f.vocab.options = {config.min_df, config.max_terms};
        f.vocab.preprocess = text_options;
        f.vocab.vocab = build_vocabulary(train_docs, f.vocab.options);
        f.vocab.provenance = provenance;
        save_vocabulary(dir / "vocab.json", f.vocab);

        auto collect = [&](const std::vector<std::size_t>& idx, std::vector<SparseVector>& xs,
                           std::vector<int>& ys, const std::filesystem::path& path) {
            FeatureMatrix m;
            m.dim = f.vocab.vocab.size();
            for (auto i : idx) {
                xs.push_back(transform(docs[i], f.vocab.vocab));
                ys.push_back(to_int(corpus.records()[i].label));
                m.ids.push_back(corpus.records()[i].id);
                m.rows.push_back(xs.back());
            }
            write_features_jsonl(path, m);
        };
        collect(corpus.split().train, f.train_x, f.train_y, dir / "train_features.jsonl");
        collect(corpus.split().test, f.test_x, f.test_y, dir / "test_features.jsonl");
        return f;
    });
    const std::size_t dim = data.vocab.vocab.size();

    const Model network = stage("train-nn", [&] {
        nn::TrainConfig tc;
        tc.epochs = config.epochs;
        tc.batch_size = config.batch_size;
        tc.learning_rate = config.learning_rate;
        tc.shuffle_seed = config.resolved_nn_shuffle_seed();
        auto net = nn::init(dim, config.hidden, config.resolved_nn_init_seed());
        auto trained = nn::train(std::move(net), data.train_x, data.train_y, tc);
        nlohmann::ordered_json hist;
        hist["loss_history"] = trained.loss_history;
        io::write_file(dir / "nn_history.json", hist.dump() + "\n");
        Model m = std::move(trained.net);
        save_model(dir / "model_nn.json", m, provenance);
        return m;
    });

    const Model tree = stage("train-tree", [&] {
        baselines::TreeConfig tc;
        tc.max_depth = config.tree_max_depth;
        tc.min_leaf = config.tree_min_leaf;
        Model m = baselines::train_tree(data.train_x, data.train_y, tc);
        save_model(dir / "model_tree.json", m, provenance);
        return m;
    });

    const Model forest = stage("train-forest", [&] {
        baselines::ForestConfig fc;
        fc.n_trees = config.forest_trees;
        fc.max_depth = config.forest_max_depth;
        fc.min_leaf = config.forest_min_leaf;
        fc.features_per_split = config.forest_features;
        fc.seed = config.resolved_forest_seed();
        fc.threads = config.threads;
        Model m = baselines::train_forest(data.train_x, data.train_y, fc);
        save_model(dir / "model_forest.json", m, provenance);
        return m;
    });

    const Model svc = stage("train-svc", [&] {
        baselines::SvmConfig sc;
        sc.lambda = config.svm_lambda;
        sc.epochs = config.svm_epochs;
        sc.seed = config.resolved_svm_seed();
        Model m = baselines::train_svm(data.train_x, data.train_y, sc).model;
        save_model(dir / "model_svc.json", m, provenance);
        return m;
    });

    return stage("evaluate", [&] {
        PipelineResult result;
        result.report = eval::compare({named(kNnName, network), named(kTreeName, tree), named(kForestName, forest),
                                       named(kSvcName, svc)},
                                      data.test_x, data.test_y);
        result.report_json = eval::to_json(result.report);
        result.report_json["corpus"] = ingested.to_json();
        result.report_json["train_size"] = data.train_x.size();
        result.report_json["vocabulary_size"] = dim;
        result.report_json["config"] = resolved;
        io::write_file(dir / "report.json", result.report_json.dump(2) + "\n");
        io::write_file(dir / "report.txt", eval::format_table(result.report));
        return result;
    });
}

Prediction predict_one(const Model& model, const VocabularyFile& vocab, std::string_view headline) {
    if (input_dim(model) != vocab.vocab.size()) {
        throw VersionError("model expects " + std::to_string(input_dim(model)) + " features but vocabulary has " +
                           std::to_string(vocab.vocab.size()));
    }
    const auto doc = preprocess(headline, 0, vocab.preprocess);
    const auto x = transform(doc, vocab.vocab);
    return {predict(model, x), score(model, x)};
}

Prediction predict_one(const std::filesystem::path& model_path, const std::filesystem::path& vocab_path,
                       std::string_view headline) {
    return predict_one(load_model(model_path), load_vocabulary(vocab_path), headline);
}

}  // namespace newsclf
