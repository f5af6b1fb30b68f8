// newsclf: fake/real headline classification pipeline.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newsclf/config.hpp"
#include "newsclf/corpus.hpp"
#include "newsclf/dataset.hpp"
#include "newsclf/error.hpp"
#include "newsclf/eval.hpp"
#include "newsclf/io.hpp"
#include "newsclf/model.hpp"
#include "newsclf/pipeline.hpp"
#include "newsclf/vectorize.hpp"

using namespace newsclf;

namespace {

struct Labeled {
    FeatureMatrix features;
    std::vector<int> labels;
};

Labeled load_labeled(const std::string& features_path, const std::string& labels_path) {
    Labeled d;
    d.features = read_features_jsonl(features_path);
    d.labels = align_labels(d.features, read_labels_jsonl(labels_path));
    return d;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

nlohmann::ordered_json cli_provenance(const CLI::App& sub) {
    nlohmann::ordered_json j;
    j["command"] = sub.get_name();
    j["config"] = sub.config_to_str(true, false);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fake/real news headline classification: ingest, preprocess, TF-IDF, train, evaluate"};
    app.require_subcommand(1);

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Unify the source CSVs into a labeled corpus");
    SourcePaths sources;
    std::string corpus_out;
    std::size_t million_limit = 0;
    bool no_dedupe = false;
    ingest_cmd->add_option("--million", sources.million, "A Million News Headlines CSV (real)");
    ingest_cmd->add_option("--fakereal", sources.fakereal, "Fake and real news CSV (fake)");
    ingest_cmd->add_option("--gettingreal", sources.gettingreal, "Getting Real about Fake News CSV (fake)");
    ingest_cmd->add_option("--out", corpus_out, "Output corpus JSONL")->required();
    ingest_cmd->add_option("--million-limit", million_limit, "Read at most N Million Headlines rows (0 = all)");
    ingest_cmd->add_flag("--no-dedupe", no_dedupe, "Keep exact duplicates");

    // preprocess
    auto* prep_cmd = app.add_subcommand("preprocess", "Tokenize, drop stop words and stem");
    std::string prep_in, prep_out;
    bool no_stem = false, no_stopwords = false;
    prep_cmd->add_option("--in", prep_in, "Corpus JSONL")->required();
    prep_cmd->add_option("--out", prep_out, "Tokens JSONL")->required();
    prep_cmd->add_flag("--no-stem", no_stem, "Skip stemming");
    prep_cmd->add_flag("--no-stopwords", no_stopwords, "Keep stop words");

    // vectorize
    auto* vec_cmd = app.add_subcommand("vectorize", "Build the TF-IDF vocabulary and feature rows");
    std::string tokens_path, vocab_out, vocab_in, vec_corpus, train_out, test_out, features_out;
    VocabularyOptions vocab_opts;
    double train_fraction = 0.8;
    std::uint64_t split_seed = 42;
    bool tokens_no_stem = false, tokens_no_stopwords = false;
    vec_cmd->add_option("--tokens", tokens_path, "Tokens JSONL")->required();
    vec_cmd->add_option("--vocab-out", vocab_out, "Vocabulary JSON to write");
    vec_cmd->add_option("--vocab-in", vocab_in, "Existing vocabulary to transform with");
    vec_cmd->add_option("--min-df", vocab_opts.min_df, "Minimum document frequency")->capture_default_str();
    vec_cmd->add_option("--max-terms", vocab_opts.max_terms, "Vocabulary cap (0 = none)")->capture_default_str();
    vec_cmd->add_option("--corpus", vec_corpus, "Corpus JSONL; enables the stratified split");
    vec_cmd->add_option("--train-fraction", train_fraction)->capture_default_str();
    vec_cmd->add_option("--split-seed", split_seed)->capture_default_str();
    vec_cmd->add_option("--train-out", train_out, "Train feature rows (with --corpus)");
    vec_cmd->add_option("--test-out", test_out, "Test feature rows (with --corpus)");
    vec_cmd->add_option("--features-out", features_out, "Feature rows for every document");
    vec_cmd->add_flag("--no-stem", tokens_no_stem, "Tokens were produced without stemming");
    vec_cmd->add_flag("--no-stopwords", tokens_no_stopwords, "Tokens still contain stop words");

    // train
    auto* train_cmd = app.add_subcommand("train", "Train the dense network");
    std::string features_path, labels_path, model_out, history_out;
    nn::TrainConfig train_cfg;
    std::string hidden_spec = "128,64";
    std::uint64_t nn_seed = 42;
    train_cmd->add_option("--features", features_path)->required();
    train_cmd->add_option("--labels", labels_path, "JSONL with id and label (a corpus file works)")->required();
    train_cmd->add_option("--epochs", train_cfg.epochs)->capture_default_str();
    train_cmd->add_option("--batch-size", train_cfg.batch_size)->capture_default_str();
    train_cmd->add_option("--lr", train_cfg.learning_rate)->capture_default_str();
    train_cmd->add_option("--hidden", hidden_spec, "Hidden widths, comma separated")->capture_default_str();
    train_cmd->add_option("--seed", nn_seed, "Initialization and shuffle seed")->capture_default_str();
    train_cmd->add_option("--model-out", model_out)->required();
    train_cmd->add_option("--history-out", history_out, "Per-epoch loss JSON");

    // train-baseline
    auto* base_cmd = app.add_subcommand("train-baseline", "Train a decision tree, random forest or linear SVC");
    std::string base_kind;
    baselines::TreeConfig tree_cfg;
    baselines::ForestConfig forest_cfg;
    baselines::SvmConfig svm_cfg;
    std::uint64_t base_seed = 42;
    bool no_bootstrap = false;
    base_cmd->add_option("--model", base_kind)->required()->check(CLI::IsMember({"tree", "forest", "svc"}));
    base_cmd->add_option("--features", features_path)->required();
    base_cmd->add_option("--labels", labels_path)->required();
    base_cmd->add_option("--model-out", model_out)->required();
    base_cmd->add_option("--max-depth", tree_cfg.max_depth)->capture_default_str();
    base_cmd->add_option("--min-leaf", tree_cfg.min_leaf)->capture_default_str();
    base_cmd->add_option("--n-trees", forest_cfg.n_trees)->capture_default_str();
    base_cmd->add_option("--features-per-split", forest_cfg.features_per_split, "0 = ceil(sqrt(V))");
    base_cmd->add_flag("--no-bootstrap", no_bootstrap);
    base_cmd->add_option("--threads", forest_cfg.threads);
    base_cmd->add_option("--lambda", svm_cfg.lambda)->capture_default_str();
    base_cmd->add_option("--svm-epochs", svm_cfg.epochs)->capture_default_str();
    base_cmd->add_option("--seed", base_seed)->capture_default_str();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Compare models on one test set");
    std::string models_spec, names_spec, report_out;
    eval_cmd->add_option("--models", models_spec, "Comma-separated model files")->required();
    eval_cmd->add_option("--names", names_spec, "Comma-separated report names");
    eval_cmd->add_option("--features", features_path)->required();
    eval_cmd->add_option("--labels", labels_path)->required();
    eval_cmd->add_option("--report", report_out, "Report JSON")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "Full pipeline from CSVs to report");
    std::string config_path;
    std::vector<std::string> overrides;
    SourcePaths run_sources;
    std::string run_out;
    bool dump_config = false;
    run_cmd->add_option("--config", config_path, "Flat key = value config file");
    run_cmd->add_option("--million", run_sources.million);
    run_cmd->add_option("--fakereal", run_sources.fakereal);
    run_cmd->add_option("--gettingreal", run_sources.gettingreal);
    run_cmd->add_option("--out-dir", run_out);
    run_cmd->add_option("--set", overrides, "key=value override, repeatable");
    run_cmd->add_flag("--dump-config", dump_config, "Print the resolved config and exit");

    // predict
    auto* pred_cmd = app.add_subcommand("predict", "Classify one headline");
    std::string pred_model, pred_vocab, headline;
    pred_cmd->add_option("--model", pred_model)->required();
    pred_cmd->add_option("--vocab", pred_vocab)->required();
    pred_cmd->add_option("headline", headline, "Headline text")->required();

    CLI11_PARSE(app, argc, argv);

    const CLI::App* active = app.get_subcommands().front();
    try {
        if (active == ingest_cmd) {
            const auto s = ingest_sources(sources, million_limit, !no_dedupe);
            for (const auto& e : s.row_errors) {
                std::cerr << "warning: line " << e.line << ": " << e.message << '\n';
            }
            write_corpus_jsonl(corpus_out, s.records);
            std::cout << s.to_json().dump(2) << '\n';
        } else if (active == prep_cmd) {
            const auto records = read_corpus_jsonl(prep_in);
            write_tokens_jsonl(prep_out, preprocess_records(records, {!no_stopwords, !no_stem}));
        } else if (active == vec_cmd) {
            const auto docs = read_tokens_jsonl(tokens_path);
            VocabularyFile vocab;
            std::vector<std::size_t> train_idx;
            std::vector<std::size_t> test_idx;
            std::vector<HeadlineRecord> records;
            if (!vec_corpus.empty()) {
                records = read_corpus_jsonl(vec_corpus);
                if (records.size() != docs.size()) {
                    throw FormatError("corpus and tokens differ in length");
                }
                for (std::size_t i = 0; i < docs.size(); ++i) {
                    if (records[i].id != docs[i].doc_id) {
                        throw FormatError("corpus and tokens are not in the same order");
                    }
                }
                const Corpus corpus(records, train_fraction, split_seed);
                train_idx = corpus.split().train;
                test_idx = corpus.split().test;
            } else {
                for (std::size_t i = 0; i < docs.size(); ++i) {
                    train_idx.push_back(i);
                }
            }
            if (!vocab_in.empty()) {
                vocab = load_vocabulary(vocab_in);
            } else {
                if (vocab_out.empty()) {
                    throw ConfigError("vectorize needs --vocab-out or --vocab-in");
                }
                std::vector<TokenizedDoc> train_docs;
                for (auto i : train_idx) {
                    train_docs.push_back(docs[i]);
                }
                vocab.vocab = build_vocabulary(train_docs, vocab_opts);
                vocab.options = vocab_opts;
                vocab.preprocess = {!tokens_no_stopwords, !tokens_no_stem};
                vocab.provenance = cli_provenance(*vec_cmd);
                save_vocabulary(vocab_out, vocab);
            }
            auto write_rows = [&](const std::vector<std::size_t>& idx, const std::string& path) {
                FeatureMatrix m;
                m.dim = vocab.vocab.size();
                for (auto i : idx) {
                    m.ids.push_back(docs[i].doc_id);
                    m.rows.push_back(transform(docs[i], vocab.vocab));
                }
                write_features_jsonl(path, m);
            };
            if (!train_out.empty()) {
                write_rows(train_idx, train_out);
            }
            if (!test_out.empty()) {
                write_rows(test_idx, test_out);
            }
            if (!features_out.empty()) {
                std::vector<std::size_t> all(docs.size());
                for (std::size_t i = 0; i < all.size(); ++i) {
                    all[i] = i;
                }
                write_rows(all, features_out);
            }
            std::cout << "vocabulary: " << vocab.vocab.size() << " terms over " << vocab.vocab.num_docs()
                      << " documents\n";
        } else if (active == train_cmd) {
            const auto d = load_labeled(features_path, labels_path);
            train_cfg.shuffle_seed = nn_seed;
            auto net = nn::init(d.features.dim, parse_dims(hidden_spec), nn_seed);
            auto result = nn::train(std::move(net), d.features.rows, d.labels, train_cfg);
            save_model(model_out, result.net, cli_provenance(*train_cmd));
            if (!history_out.empty()) {
                nlohmann::ordered_json h;
                h["loss_history"] = result.loss_history;
                io::write_file(history_out, h.dump() + "\n");
            }
            std::printf("final epoch loss %.6f\n", result.loss_history.back());
        } else if (active == base_cmd) {
            const auto d = load_labeled(features_path, labels_path);
            Model model;
            if (base_kind == "tree") {
                model = baselines::train_tree(d.features.rows, d.labels, tree_cfg);
            } else if (base_kind == "forest") {
                forest_cfg.max_depth = tree_cfg.max_depth;
                forest_cfg.min_leaf = tree_cfg.min_leaf;
                forest_cfg.bootstrap = !no_bootstrap;
                forest_cfg.seed = base_seed;
                model = baselines::train_forest(d.features.rows, d.labels, forest_cfg);
            } else {
                svm_cfg.seed = base_seed;
                model = baselines::train_svm(d.features.rows, d.labels, svm_cfg).model;
            }
            save_model(model_out, model, cli_provenance(*base_cmd));
        } else if (active == eval_cmd) {
            const auto d = load_labeled(features_path, labels_path);
            const auto paths = split_list(models_spec);
            auto names = names_spec.empty() ? paths : split_list(names_spec);
            if (names.size() != paths.size()) {
                throw ConfigError("--names must match --models in length");
            }
            std::vector<Model> models;
            for (const auto& p : paths) {
                models.push_back(load_model(p));
            }
            std::vector<eval::NamedPredictor> predictors;
            for (std::size_t i = 0; i < models.size(); ++i) {
                const Model& m = models[i];
                predictors.push_back({names[i], input_dim(m), [&m](const SparseVector& x) { return predict(m, x); }});
            }
            const auto report = eval::compare(predictors, d.features.rows, d.labels);
            io::write_file(report_out, eval::to_json(report).dump(2) + "\n");
            std::cout << eval::format_table(report);
        } else if (active == run_cmd) {
            RunConfig cfg;
            if (!config_path.empty()) {
                cfg = load_run_config(config_path, cfg);
            }
            if (!run_sources.million.empty()) cfg.million_path = run_sources.million;
            if (!run_sources.fakereal.empty()) cfg.fakereal_path = run_sources.fakereal;
            if (!run_sources.gettingreal.empty()) cfg.gettingreal_path = run_sources.gettingreal;
            if (!run_out.empty()) cfg.out_dir = run_out;
            for (const auto& kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw ConfigError("--set expects key=value, got '" + kv + "'");
                }
                cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (dump_config) {
                std::cout << cfg.to_text();
                return 0;
            }
            const auto result = run_pipeline(cfg);
            std::cout << eval::format_table(result.report);
        } else if (active == pred_cmd) {
            const auto p = predict_one(pred_model, pred_vocab, headline);
            std::printf("%s %.17g\n", std::string(p.label_name()).c_str(), p.score);
        }
    } catch (const StageError& e) {
        std::cerr << "newsclf run: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "newsclf " << active->get_name() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
