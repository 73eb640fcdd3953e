// tamyiz command line: lexicon building, dataset labeling, training,
// evaluation, corpus reports and the prediction service.
#include <cstdio>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tamyiz/analysis.hpp"
#include "tamyiz/classifier.hpp"
#include "tamyiz/dataset.hpp"
#include "tamyiz/eval.hpp"
#include "tamyiz/features.hpp"
#include "tamyiz/geo.hpp"
#include "tamyiz/lexicon.hpp"
#include "tamyiz/network.hpp"
#include "tamyiz/service.hpp"

namespace {

using namespace tamyiz;

std::vector<UserProfile> load_dataset(const std::string& path, const std::string& exclude_path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    std::set<std::string> exclude;
    ParseOptions opts;
    if (!exclude_path.empty()) {
        std::ifstream ex(exclude_path);
        if (!ex) throw std::runtime_error("cannot open exclusion list: " + exclude_path);
        exclude = load_id_list(ex);
        opts.exclude_ids = &exclude;
    }
    ParseResult result = parse_profiles(in, opts);
    for (const auto& d : result.diagnostics) {
        std::cerr << path << ":" << d.line << ": " << d.message << "\n";
    }
    if (result.excluded > 0) {
        std::cerr << path << ": " << result.excluded << " account(s) dropped by exclusion list\n";
    }
    return std::move(result.profiles);
}

Lexicon load_lexicon_files(const std::string& lexicon_path, const std::string& exclusions_path) {
    std::ifstream in(lexicon_path);
    if (!in) throw std::runtime_error("cannot open lexicon: " + lexicon_path);
    Lexicon lex = Lexicon::load(in);
    if (!exclusions_path.empty()) {
        std::ifstream ex(exclusions_path);
        if (!ex) throw std::runtime_error("cannot open exclusion file: " + exclusions_path);
        lex.load_exclusions(ex);
    }
    return lex;
}

int run_build_lexicon(const std::string& in_path, const std::string& exclude_path,
                      const std::string& exceptions_dir, int min_count,
                      const std::string& out_path, const std::string& candidates_path,
                      const std::string& exclusions_out) {
    auto profiles = load_dataset(in_path, exclude_path);
    auto exceptions = ExceptionTables::load_dir(exceptions_dir);
    LexiconBuild build = build_lexicon(profiles, min_count, exceptions);

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write lexicon: " + out_path);
    build.lexicon.save(out);

    std::string excl_path = exclusions_out.empty() ? out_path + ".exclusions" : exclusions_out;
    std::ofstream excl(excl_path, std::ios::trunc);
    if (!excl) throw std::runtime_error("cannot write exclusions: " + excl_path);
    build.lexicon.save_exclusions(excl);

    if (!candidates_path.empty()) {
        std::ofstream cand(candidates_path, std::ios::trunc);
        if (!cand) throw std::runtime_error("cannot write candidates: " + candidates_path);
        cand << "token\tsurface\tcount\theuristic\tstatus\n";
        for (const auto& c : build.candidates) {
            const char* h = c.heuristic == HeuristicGender::Feminine    ? "f"
                            : c.heuristic == HeuristicGender::Masculine ? "m"
                                                                        : "ambiguous";
            const char* status = c.status == LexiconCandidate::Status::Kept ? "kept"
                                 : c.status == LexiconCandidate::Status::BelowMinCount
                                     ? "below_min_count"
                                     : "excluded";
            cand << c.normalized_form << '\t' << c.canonical_surface << '\t' << c.count << '\t'
                 << h << '\t' << status << '\n';
        }
    }
    std::cerr << "lexicon: " << build.lexicon.size() << " entries, "
              << build.lexicon.exclusions().size() << " excluded tokens\n";
    return 0;
}

int run_label(const std::string& in_path, const std::string& exclude_path,
              const std::string& lexicon_path, const std::string& exclusions_path,
              const std::string& gazetteer_path, const std::string& out_path,
              bool do_anonymize, const std::string& secret) {
    auto profiles = load_dataset(in_path, exclude_path);
    Lexicon lex = load_lexicon_files(lexicon_path, exclusions_path);
    Gazetteer gaz = Gazetteer::load_file(gazetteer_path);

    std::size_t gender_filled = 0, country_filled = 0;
    for (auto& p : profiles) {
        if (p.gold_gender == GenderLabel::Unknown) {
            p.gold_gender = match_description(p.description, lex);
            if (p.gold_gender != GenderLabel::Unknown) ++gender_filled;
        }
        if (p.gold_country == "?") {
            std::string code = gaz.map_location(p.location_raw);
            if (code != "UNK") {
                p.gold_country = code;
                ++country_filled;
            }
        }
    }
    if (do_anonymize) profiles = anonymize(profiles, secret);

    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write dataset: " + out_path);
    write_profiles(out, profiles);
    std::cerr << "labeled " << profiles.size() << " profiles (" << gender_filled
              << " genders, " << country_filled << " countries filled)\n";
    return 0;
}

int run_train(const std::string& in_path, const std::string& exclude_path,
              const std::string& features, const std::string& tweet_mode,
              const std::string& out_path, double lambda, int epochs, std::uint64_t seed) {
    auto profiles = load_dataset(in_path, exclude_path);
    FeaturizerConfig feat;
    feat.set = feature_set_from_string(features);
    feat.tweet_mode = tweet_mode == "single" ? TweetMode::SingleFirst : TweetMode::Aggregate;
    Hyperparams hyper{lambda, epochs, seed};
    std::string warning;
    GenderModel model = train_gender_model(profiles, feat, hyper, &warning);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    save_model_file(model, out_path);
    std::cerr << "model " << model.version() << ": dim " << model.weights.size()
              << ", objective " << model.meta.objective << "\n";
    return 0;
}

int run_evaluate(const std::string& train_path, const std::string& test_path,
                 const std::string& exclude_path, const std::string& features,
                 const std::string& tweet_mode, const std::string& train_name, double lambda,
                 int epochs, std::uint64_t seed, const std::string& out_path,
                 const std::string& detail_path, bool with_baseline) {
    auto train = load_dataset(train_path, exclude_path);
    auto test = load_dataset(test_path, exclude_path);

    ExperimentConfig config;
    config.features = feature_set_from_string(features);
    config.tweet_mode = tweet_mode == "single" ? TweetMode::SingleFirst : TweetMode::Aggregate;
    config.hyper = Hyperparams{lambda, epochs, seed};
    config.train_name = train_name;
    EvalReport report = run_experiment(train, test, config);

    std::ostringstream rows;
    rows << EvalReport::tsv_header() << '\n';
    if (with_baseline) {
        std::vector<GenderLabel> train_gold, test_gold;
        for (const auto& p : train) {
            if (p.gold_gender != GenderLabel::Unknown) train_gold.push_back(p.gold_gender);
        }
        for (const auto& p : test) {
            if (p.gold_gender != GenderLabel::Unknown) test_gold.push_back(p.gold_gender);
        }
        EvalReport baseline = majority_baseline(train_gold, test_gold);
        baseline.train_name = train_name;
        rows << baseline.tsv_row() << '\n';
    }
    rows << report.tsv_row() << '\n';

    std::cout << rows.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write report: " + out_path);
        out << rows.str();
    }
    if (!detail_path.empty()) {
        std::ofstream out(detail_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write detail file: " + detail_path);
        out << report.detail_json() << '\n';
    }
    return 0;
}

int run_predict(const std::string& model_path, const std::string& name) {
    GenderModel model = load_model_file(model_path);
    PredictResponse r = predict_response(model, name);
    std::printf("%s\t%.6f\n", r.gender.c_str(), r.probability);
    return 0;
}

int run_valence(const std::string& in_path, const std::string& exclude_path,
                const std::string& out_path, long long min_total, double threshold,
                std::size_t top_k, const std::string& top_category) {
    auto profiles = load_dataset(in_path, exclude_path);
    std::map<std::string, TokenCounts> corpora;
    for (const auto& p : profiles) {
        if (p.gold_gender == GenderLabel::Unknown) continue;
        auto& bucket = corpora[p.gold_gender == GenderLabel::Male ? "m" : "f"];
        for (const auto& [token, count] : profile_tweet_token_counts(p)) {
            bucket[token] += count;
        }
    }
    auto scores = valence(corpora, min_total);
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write valence report: " + out_path);
    write_valence_report(scores, out);
    if (!top_category.empty()) {
        for (const auto& s : top_valence_words(scores, top_category, threshold, top_k)) {
            std::cout << s.token << '\t' << s.score.at(top_category) << '\t'
                      << s.counts.at(top_category) << '\n';
        }
    }
    std::cerr << "valence: " << scores.size() << " tokens scored\n";
    return 0;
}

int run_stats(const std::string& in_path, const std::string& exclude_path,
              const std::string& lexicon_path, const std::string& exclusions_path,
              const std::string& pairs_path, const std::string& out_dir, std::size_t top_k) {
    auto profiles = load_dataset(in_path, exclude_path);
    Lexicon lex;
    if (!lexicon_path.empty()) lex = load_lexicon_files(lexicon_path, exclusions_path);
    std::vector<ProfessionPair> pairs;
    if (!pairs_path.empty()) {
        std::ifstream in(pairs_path);
        if (!in) throw std::runtime_error("cannot open pairs file: " + pairs_path);
        pairs = load_profession_pairs(in);
    }
    StatsReport report = stats_report(profiles, lex, pairs, top_k);
    write_stats_reports(report, out_dir);
    std::cerr << "stats: " << report.accounts.male << " male / " << report.accounts.female
              << " female accounts reported to " << out_dir << "\n";
    return 0;
}

PredictionService* g_service = nullptr;

int run_serve(const std::string& model_path, const std::string& bind) {
    auto colon = bind.rfind(':');
    if (colon == std::string::npos) {
        throw std::runtime_error("--bind must be host:port, got '" + bind + "'");
    }
    const std::string host = bind.substr(0, colon);
    const int port = std::stoi(bind.substr(colon + 1));

    GenderModel model = load_model_file(model_path);
    PredictionService service(std::move(model));
    g_service = &service;
    std::signal(SIGINT, [](int) {
        if (g_service) g_service->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (g_service) g_service->stop();
    });

    std::string error;
    std::cerr << "serving on " << host << ":" << port << "\n";
    if (!service.run(host, port, &error)) {
        g_service = nullptr;
        throw std::runtime_error(error);
    }
    g_service = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gender inference and analysis toolkit for Arabic social profiles"};
    app.require_subcommand(1);

    std::string in_path, out_path, exclude_path, model_path, name;
    std::string lexicon_path, exclusions_path, gazetteer_path = "data/gazetteer.tsv";
    std::string exceptions_dir = "data/exceptions";
    std::string features = "usernames", tweet_mode = "aggregate", train_name = "train";
    std::string train_path, test_path, detail_path, candidates_path, exclusions_out;
    std::string pairs_path, bind = "127.0.0.1:8080", secret = "tamyiz", top_category;
    int min_count = 2, epochs = 20;
    double lambda = 1e-4, threshold = 0.5, tau = kDefaultConfidenceTau;
    long long min_total = kValenceMinTotal;
    std::size_t top_k = 50;
    std::uint64_t seed = 42;
    bool do_anonymize = false, with_baseline = false;

    auto* build = app.add_subcommand("build-lexicon", "Build the gender-marker word list");
    build->add_option("--in", in_path, "Input dataset (JSONL)")->required();
    build->add_option("--out", out_path, "Output lexicon TSV")->required();
    build->add_option("--min-count", min_count, "Minimum corpus count (>= 2)");
    build->add_option("--exceptions", exceptions_dir, "Exception tables directory");
    build->add_option("--candidates", candidates_path, "Candidate list output TSV");
    build->add_option("--exclusions-out", exclusions_out, "Excluded-token output file");
    build->add_option("--exclude", exclude_path, "Account exclusion list (user_ids)");

    auto* label = app.add_subcommand("label", "Label a dataset with lexicon and gazetteer");
    label->add_option("--in", in_path)->required();
    label->add_option("--out", out_path)->required();
    label->add_option("--lexicon", lexicon_path)->required();
    label->add_option("--exclusions", exclusions_path, "Excluded-token file");
    label->add_option("--gazetteer", gazetteer_path);
    label->add_option("--exclude", exclude_path);
    label->add_flag("--anonymize", do_anonymize, "Replace identifiers before writing");
    label->add_option("--secret", secret, "Pseudonym secret for --anonymize");

    auto* train = app.add_subcommand("train", "Train a gender model");
    train->add_option("--in", in_path)->required();
    train->add_option("--out", out_path, "Output model file")->required();
    train->add_option("--features", features)
        ->check(CLI::IsMember({"usernames", "description", "tweets", "all"}));
    train->add_option("--tweet-mode", tweet_mode)->check(CLI::IsMember({"aggregate", "single"}));
    train->add_option("--lambda", lambda, "Regularization strength");
    train->add_option("--epochs", epochs);
    train->add_option("--seed", seed);
    train->add_option("--exclude", exclude_path);

    auto* evaluate = app.add_subcommand("evaluate", "Train on one set, score another");
    evaluate->add_option("--train", train_path)->required();
    evaluate->add_option("--test", test_path)->required();
    evaluate->add_option("--features", features)
        ->check(CLI::IsMember({"usernames", "description", "tweets", "all"}));
    evaluate->add_option("--tweet-mode", tweet_mode)->check(CLI::IsMember({"aggregate", "single"}));
    evaluate->add_option("--train-name", train_name);
    evaluate->add_option("--lambda", lambda);
    evaluate->add_option("--epochs", epochs);
    evaluate->add_option("--seed", seed);
    evaluate->add_option("--out", out_path, "Also write the TSV rows here");
    evaluate->add_option("--detail", detail_path, "Write confusion-matrix JSON here");
    evaluate->add_flag("--baseline", with_baseline, "Include the majority-baseline row");
    evaluate->add_option("--exclude", exclude_path);

    auto* predict = app.add_subcommand("predict", "Predict gender for one name");
    predict->add_option("--model", model_path)->required();
    predict->add_option("--name", name)->required();

    auto* valence_cmd = app.add_subcommand("valence", "Token valence scores from tweets");
    valence_cmd->add_option("--in", in_path)->required();
    valence_cmd->add_option("--out", out_path)->required();
    valence_cmd->add_option("--min-total", min_total, "Minimum combined token count");
    valence_cmd->add_option("--threshold", threshold, "Score threshold for --category listing");
    valence_cmd->add_option("--top", top_k, "List size for --category listing");
    valence_cmd->add_option("--category", top_category, "Print top tokens for this category (m|f)");
    valence_cmd->add_option("--exclude", exclude_path);

    auto* stats = app.add_subcommand("stats", "Descriptive statistics reports");
    stats->add_option("--in", in_path)->required();
    stats->add_option("--out", out_path, "Output directory")->required();
    stats->add_option("--lexicon", lexicon_path, "Lexicon for gender fallback");
    stats->add_option("--exclusions", exclusions_path);
    stats->add_option("--pairs", pairs_path, "Profession pairs TSV");
    stats->add_option("--top", top_k, "Top-k list size");
    stats->add_option("--exclude", exclude_path);

    auto* serve = app.add_subcommand("serve", "Run the HTTP prediction service");
    serve->add_option("--model", model_path)->required();
    serve->add_option("--bind", bind, "host:port");

    // Accepted for interface completeness; the combined predictor reads it.
    app.add_option("--tau", tau, "Confidence threshold for the friend-vote fallback");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) {
            return run_build_lexicon(in_path, exclude_path, exceptions_dir, min_count, out_path,
                                     candidates_path, exclusions_out);
        }
        if (label->parsed()) {
            return run_label(in_path, exclude_path, lexicon_path, exclusions_path, gazetteer_path,
                             out_path, do_anonymize, secret);
        }
        if (train->parsed()) {
            return run_train(in_path, exclude_path, features, tweet_mode, out_path, lambda,
                             epochs, seed);
        }
        if (evaluate->parsed()) {
            return run_evaluate(train_path, test_path, exclude_path, features, tweet_mode,
                                train_name, lambda, epochs, seed, out_path, detail_path,
                                with_baseline);
        }
        if (predict->parsed()) return run_predict(model_path, name);
        if (valence_cmd->parsed()) {
            return run_valence(in_path, exclude_path, out_path, min_total, threshold, top_k,
                               top_category);
        }
        if (stats->parsed()) {
            return run_stats(in_path, exclude_path, lexicon_path, exclusions_path, pairs_path,
                             out_path, top_k);
        }
        if (serve->parsed()) return run_serve(model_path, bind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
