#include "tamyiz/eval.hpp"

#include <cstdio>
#include <sstream>

namespace tamyiz {
namespace {

struct Rational {
    __int128 num = 0;
    __int128 den = 1;  // den > 0; num/den is the fraction (not a percentage)
};

Rational ratio(long long num, long long den) {
    if (den == 0) return {0, 1};  // zero-denominator convention
    return {num, den};
}

Rational average(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den * 2};
}

// Percentage in tenths, rounded half away from zero. Exact.
int percent_tenths(Rational r) {
    if (r.num == 0) return 0;
    __int128 num = r.num * 1000;  // fraction -> tenths of a percent
    __int128 t = (2 * num + r.den) / (2 * r.den);
    return static_cast<int>(t);
}

double percent(Rational r) {
    return 100.0 * static_cast<double>(r.num) / static_cast<double>(r.den);
}

void fill_metrics(EvalReport& report) {
    const long long tp_m = report.confusion[0][0];
    const long long fn_m = report.confusion[0][1];
    const long long fp_m = report.confusion[1][0];
    const long long tp_f = report.confusion[1][1];
    const long long n = report.test_size();

    // Per class: P = tp/pp, R = tp/ap, F1 = 2*tp/(pp+ap).
    const Rational p_m = ratio(tp_m, tp_m + fp_m);
    const Rational r_m = ratio(tp_m, tp_m + fn_m);
    const Rational f_m = ratio(2 * tp_m, (tp_m + fp_m) + (tp_m + fn_m));
    const Rational p_f = ratio(tp_f, tp_f + fn_m);
    const Rational r_f = ratio(tp_f, tp_f + fp_m);
    const Rational f_f = ratio(2 * tp_f, (tp_f + fn_m) + (tp_f + fp_m));

    const Rational acc = ratio(tp_m + tp_f, n);
    const Rational macro_p = average(p_m, p_f);
    const Rational macro_r = average(r_m, r_f);
    const Rational macro_f = average(f_m, f_f);

    report.accuracy = percent(acc);
    report.macro_precision = percent(macro_p);
    report.macro_recall = percent(macro_r);
    report.macro_f1 = percent(macro_f);
    report.accuracy_tenths = percent_tenths(acc);
    report.precision_tenths = percent_tenths(macro_p);
    report.recall_tenths = percent_tenths(macro_r);
    report.f1_tenths = percent_tenths(macro_f);
}

void append_tenths(std::string& out, int tenths) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%d.%d", tenths / 10, tenths % 10);
    out += buf;
}

}  // namespace

std::string EvalReport::tsv_header() {
    return "train\tfeatures\tacc\tp\tr\tf1";
}

std::string EvalReport::tsv_row() const {
    std::string out = train_name + "\t" + feature_name + "\t";
    append_tenths(out, accuracy_tenths);
    out += '\t';
    append_tenths(out, precision_tenths);
    out += '\t';
    append_tenths(out, recall_tenths);
    out += '\t';
    append_tenths(out, f1_tenths);
    return out;
}

std::string EvalReport::detail_json() const {
    std::ostringstream out;
    out.precision(10);
    out << "{\"train\":\"" << train_name << "\",\"features\":\"" << feature_name << "\","
        << "\"confusion\":{\"male\":{\"male\":" << confusion[0][0]
        << ",\"female\":" << confusion[0][1] << "},\"female\":{\"male\":" << confusion[1][0]
        << ",\"female\":" << confusion[1][1] << "}},"
        << "\"accuracy\":" << accuracy << ",\"macro_precision\":" << macro_precision
        << ",\"macro_recall\":" << macro_recall << ",\"macro_f1\":" << macro_f1 << "}";
    return out.str();
}

EvalReport compute_metrics(const std::vector<GenderLabel>& predictions,
                           const std::vector<GenderLabel>& gold) {
    if (predictions.size() != gold.size()) {
        throw std::invalid_argument("compute_metrics: length mismatch");
    }
    if (predictions.empty()) {
        throw std::invalid_argument("compute_metrics: empty input");
    }
    EvalReport report;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (gold[i] == GenderLabel::Unknown) {
            throw std::invalid_argument("compute_metrics: gold labels must be Male or Female");
        }
        if (predictions[i] == GenderLabel::Unknown) {
            throw std::invalid_argument("compute_metrics: predictions must be Male or Female");
        }
        const int g = gold[i] == GenderLabel::Male ? 0 : 1;
        const int p = predictions[i] == GenderLabel::Male ? 0 : 1;
        report.confusion[g][p] += 1;
    }
    fill_metrics(report);
    return report;
}

EvalReport majority_baseline(const std::vector<GenderLabel>& train_gold,
                             const std::vector<GenderLabel>& test_gold) {
    if (train_gold.empty()) {
        throw std::invalid_argument("majority_baseline: empty training labels");
    }
    long long males = 0, females = 0;
    for (GenderLabel g : train_gold) {
        if (g == GenderLabel::Male) {
            ++males;
        } else if (g == GenderLabel::Female) {
            ++females;
        }
    }
    const GenderLabel majority = females > males ? GenderLabel::Female : GenderLabel::Male;
    std::vector<GenderLabel> predictions(test_gold.size(), majority);
    EvalReport report = compute_metrics(predictions, test_gold);
    report.feature_name = "majority";
    return report;
}

EvalReport run_experiment(const std::vector<UserProfile>& train,
                          const std::vector<UserProfile>& test, const ExperimentConfig& config,
                          GenderModel* trained_model) {
    FeaturizerConfig feat;
    feat.set = config.features;
    feat.tweet_mode = config.tweet_mode;
    GenderModel model = train_gender_model(train, feat, config.hyper);

    std::vector<GenderLabel> predictions, gold;
    predictions.reserve(test.size());
    gold.reserve(test.size());
    for (const auto& p : test) {
        if (p.gold_gender == GenderLabel::Unknown) continue;
        predictions.push_back(model.predict_profile(p).label);
        gold.push_back(p.gold_gender);
    }
    EvalReport report = compute_metrics(predictions, gold);
    report.train_name = config.train_name;
    report.feature_name = to_string(config.features);
    if (config.features == FeatureSet::Tweets && config.tweet_mode == TweetMode::SingleFirst) {
        report.feature_name += "-single";
    }
    if (trained_model) *trained_model = std::move(model);
    return report;
}

}  // namespace tamyiz
