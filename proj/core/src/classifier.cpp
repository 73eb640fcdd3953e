#include "tamyiz/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace tamyiz {
namespace {

double logistic(double z) {
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

void write_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_u64(out, bits);
}

void write_str(std::ostream& out, std::string_view s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) {
        throw ModelFormatError("model file truncated");
    }
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) {
        throw ModelFormatError("model file truncated");
    }
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

double read_f64(std::istream& in) {
    std::uint64_t bits = read_u64(in);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::string read_str(std::istream& in) {
    std::uint32_t len = read_u32(in);
    if (len > (1u << 28)) throw ModelFormatError("model file corrupt: oversized string");
    std::string s(len, '\0');
    if (len && !in.read(s.data(), len)) {
        throw ModelFormatError("model file truncated");
    }
    return s;
}

std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

constexpr char kHeaderPrefix[] = "tamyiz-model format ";

}  // namespace

double hinge_objective(const std::vector<Example>& examples, const std::vector<double>& weights,
                       double bias, double lambda) {
    double w2 = 0.0;
    for (double w : weights) w2 += w * w;
    double loss = 0.0;
    for (const auto& ex : examples) {
        const double y = ex.y == GenderLabel::Male ? 1.0 : -1.0;
        loss += std::max(0.0, 1.0 - y * (ex.x.dot(weights) + bias));
    }
    return 0.5 * lambda * w2 + loss / static_cast<double>(examples.size());
}

LinearFit train_linear(const std::vector<Example>& examples, std::size_t dimension,
                       const Hyperparams& hyper) {
    if (examples.empty()) throw TrainError("train: no examples");
    bool has_male = false, has_female = false;
    for (const auto& ex : examples) {
        if (ex.y == GenderLabel::Male) {
            has_male = true;
        } else if (ex.y == GenderLabel::Female) {
            has_female = true;
        } else {
            throw TrainError("train: labels must be Male or Female");
        }
        for (std::size_t i = 0; i < ex.x.nnz(); ++i) {
            if (!std::isfinite(ex.x.val[i])) throw TrainError("train: non-finite feature value");
            if (ex.x.idx[i] >= dimension) throw TrainError("train: feature index out of range");
        }
    }
    if (!has_male || !has_female) {
        throw TrainError("train: need at least one example of each class");
    }
    if (hyper.lambda <= 0.0 || hyper.epochs < 1) {
        throw TrainError("train: lambda must be positive and epochs >= 1");
    }

    std::vector<double> w(dimension, 0.0);
    double b = 0.0;
    std::vector<double> best_w = w;
    double best_b = b;
    double best_obj = hinge_objective(examples, w, b, hyper.lambda);

    std::mt19937_64 rng(hyper.seed);
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);

    std::uint64_t t = 0;
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t k : order) {
            const auto& ex = examples[k];
            const double y = ex.y == GenderLabel::Male ? 1.0 : -1.0;
            ++t;
            const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
            const double margin = ex.x.dot(w) + b;
            const double decay = 1.0 - eta * hyper.lambda;
            for (double& wi : w) wi *= decay;
            if (y * margin < 1.0) {
                for (std::size_t i = 0; i < ex.x.nnz(); ++i) {
                    w[ex.x.idx[i]] += eta * y * ex.x.val[i];
                }
                b += eta * y;
            }
        }
        // The schedule's last iterate can sit above the best visited
        // point; keep the best epoch snapshot instead.
        const double obj = hinge_objective(examples, w, b, hyper.lambda);
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
    }

    LinearFit fit;
    fit.weights = std::move(best_w);
    fit.bias = best_b;
    fit.objective = best_obj;
    return fit;
}

Prediction GenderModel::predict(const SparseVector& v) const {
    for (std::uint32_t i : v.idx) {
        if (i >= weights.size()) {
            throw std::invalid_argument("predict: vector dimension exceeds model dimension");
        }
    }
    Prediction p;
    p.margin = v.dot(weights) + bias;
    p.label = p.margin >= 0.0 ? GenderLabel::Male : GenderLabel::Female;
    p.p_male = logistic(calibration.a * p.margin + calibration.b);
    return p;
}

Prediction GenderModel::predict_name(std::string_view name) const {
    SparseVector v = featurizer.transform_name(name);
    return predict(v);
}

Prediction GenderModel::predict_profile(const UserProfile& profile) const {
    return predict(featurizer.transform(profile));
}

std::string GenderModel::version() const {
    std::uint64_t h = 14695981039346656037ull;
    h = fnv1a64(weights.data(), weights.size() * sizeof(double), h);
    h = fnv1a64(&bias, sizeof(bias), h);
    for (const auto& vocab : featurizer.vocabularies()) {
        std::uint64_t n = vocab.size();
        h = fnv1a64(&n, sizeof(n), h);
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%u.%016llx", kModelFormatMajor,
                  static_cast<unsigned long long>(h));
    return buf;
}

Calibration calibrate_margins(const std::vector<double>& margins,
                              const std::vector<GenderLabel>& labels, std::string* warning) {
    Calibration cal;
    cal.fitted = true;
    auto degenerate = [&](const char* why) {
        if (warning) *warning = std::string("calibration fell back to identity: ") + why;
        Calibration id;
        id.fitted = true;
        return id;
    };
    if (margins.size() != labels.size() || margins.empty()) {
        return degenerate("empty or mismatched dev set");
    }
    bool has_male = false, has_female = false;
    for (GenderLabel y : labels) {
        (y == GenderLabel::Male ? has_male : has_female) = true;
    }
    if (!has_male || !has_female) return degenerate("dev set has a single class");
    const double first = margins.front();
    bool constant = std::all_of(margins.begin(), margins.end(),
                                [&](double m) { return m == first; });
    if (constant) return degenerate("all dev margins identical");

    // 1-D logistic regression of y on a*margin (intercept fixed at zero so
    // margin 0 maps to probability 0.5). Newton with a small ridge.
    double a = 1.0;
    const double ridge = 1e-6;
    for (int iter = 0; iter < 100; ++iter) {
        double g = ridge * a, h = ridge;
        for (std::size_t i = 0; i < margins.size(); ++i) {
            const double y = labels[i] == GenderLabel::Male ? 1.0 : 0.0;
            const double p = logistic(a * margins[i]);
            g += (p - y) * margins[i];
            h += p * (1.0 - p) * margins[i] * margins[i];
        }
        if (h <= 0.0) break;
        double step = g / h;
        step = std::clamp(step, -10.0, 10.0);
        a -= step;
        a = std::clamp(a, -1e6, 1e6);
        if (std::abs(step) < 1e-12) break;
    }
    if (!(a > 0.0)) return degenerate("margins anti-correlated with labels");
    cal.a = a;
    cal.b = 0.0;
    return cal;
}

void calibrate(GenderModel& model, const std::vector<Example>& dev, std::string* warning) {
    std::vector<double> margins;
    std::vector<GenderLabel> labels;
    margins.reserve(dev.size());
    labels.reserve(dev.size());
    for (const auto& ex : dev) {
        margins.push_back(ex.x.dot(model.weights) + model.bias);
        labels.push_back(ex.y);
    }
    model.calibration = calibrate_margins(margins, labels, warning);
}

GenderModel train_gender_model(const std::vector<UserProfile>& train,
                               const FeaturizerConfig& feat_config, const Hyperparams& hyper,
                               std::string* calibration_warning) {
    GenderModel model;
    model.hyper = hyper;
    model.featurizer = ProfileFeaturizer(feat_config);
    model.featurizer.fit(train);

    std::vector<Example> all;
    all.reserve(train.size());
    for (const auto& p : train) {
        if (p.gold_gender == GenderLabel::Unknown) continue;
        all.push_back({model.featurizer.transform(p), p.gold_gender});
    }
    if (all.empty()) throw TrainError("train: no labeled profiles");

    // Last 10% of the seeded shuffle is held out for calibration.
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(hyper.seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t n_dev = all.size() / 10;
    std::vector<Example> fit_set, dev_set;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i + n_dev < order.size() ? fit_set : dev_set).push_back(all[order[i]]);
    }
    // A dev split missing a class cannot calibrate; train on everything.
    bool dev_ok = false, fit_ok = false;
    {
        bool m = false, f = false;
        for (const auto& e : dev_set) (e.y == GenderLabel::Male ? m : f) = true;
        dev_ok = m && f;
        m = f = false;
        for (const auto& e : fit_set) (e.y == GenderLabel::Male ? m : f) = true;
        fit_ok = m && f;
    }
    if (!dev_ok || !fit_ok) {
        fit_set = all;
        dev_set.clear();
    }

    LinearFit fit = train_linear(fit_set, model.featurizer.dimension(), hyper);
    model.weights = std::move(fit.weights);
    model.bias = fit.bias;
    model.meta.objective = fit.objective;
    model.meta.n_train = fit_set.size();
    if (!dev_set.empty()) {
        calibrate(model, dev_set, calibration_warning);
    } else if (calibration_warning) {
        *calibration_warning = "calibration skipped: dev split lacked both classes";
    }
    return model;
}

void save_model(const GenderModel& model, std::ostream& out) {
    out << kHeaderPrefix << kModelFormatMajor << '.' << kModelFormatMinor << '\n';
    write_u32(out, kModelFormatMajor);
    write_u32(out, kModelFormatMinor);

    const auto& cfg = model.featurizer.config();
    out.put(static_cast<char>(cfg.set));
    out.put(static_cast<char>(cfg.tweet_mode));
    write_u32(out, static_cast<std::uint32_t>(cfg.range.low));
    write_u32(out, static_cast<std::uint32_t>(cfg.range.high));
    write_u32(out, static_cast<std::uint32_t>(cfg.min_df_username));
    write_u32(out, static_cast<std::uint32_t>(cfg.min_df_description));
    write_u32(out, static_cast<std::uint32_t>(cfg.min_df_tweets));
    write_u64(out, cfg.tweet_cap);

    write_f64(out, model.hyper.lambda);
    write_u32(out, static_cast<std::uint32_t>(model.hyper.epochs));
    write_u64(out, model.hyper.seed);
    write_f64(out, model.meta.objective);
    write_u64(out, model.meta.n_train);
    write_f64(out, model.calibration.a);
    write_f64(out, model.calibration.b);
    out.put(model.calibration.fitted ? 1 : 0);

    const auto& vocabs = model.featurizer.vocabularies();
    write_u32(out, static_cast<std::uint32_t>(vocabs.size()));
    for (const auto& vocab : vocabs) {
        out.put(static_cast<char>(vocab.field));
        write_u32(out, static_cast<std::uint32_t>(vocab.range.low));
        write_u32(out, static_cast<std::uint32_t>(vocab.range.high));
        write_u32(out, static_cast<std::uint32_t>(vocab.min_df));
        write_u64(out, vocab.size());
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            write_str(out, vocab.grams[i]);
            write_f64(out, vocab.idf[i]);
        }
    }

    write_u64(out, model.weights.size());
    for (double w : model.weights) write_f64(out, w);
    write_f64(out, model.bias);
    write_str(out, model.version());
    write_u32(out, 0x00444E45);  // "END\0" sentinel
    if (!out) throw ModelFormatError("model write failed");
}

void save_model_file(const GenderModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ModelFormatError("cannot open model file for writing: " + path);
    save_model(model, out);
}

GenderModel load_model(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ModelFormatError("model file empty");
    if (header.rfind(kHeaderPrefix, 0) != 0) {
        throw ModelFormatError("not a model file (bad header)");
    }
    const std::uint32_t major = read_u32(in);
    const std::uint32_t minor = read_u32(in);
    if (major > kModelFormatMajor) {
        std::ostringstream msg;
        msg << "model format " << major << "." << minor << " is newer than supported format "
            << kModelFormatMajor << "." << kModelFormatMinor;
        throw ModelFormatError(msg.str());
    }

    FeaturizerConfig cfg;
    int set_byte = in.get();
    int mode_byte = in.get();
    if (set_byte == EOF || mode_byte == EOF) throw ModelFormatError("model file truncated");
    if (set_byte > 3 || mode_byte > 1) throw ModelFormatError("model file corrupt: bad enum");
    cfg.set = static_cast<FeatureSet>(set_byte);
    cfg.tweet_mode = static_cast<TweetMode>(mode_byte);
    cfg.range.low = static_cast<int>(read_u32(in));
    cfg.range.high = static_cast<int>(read_u32(in));
    cfg.min_df_username = static_cast<int>(read_u32(in));
    cfg.min_df_description = static_cast<int>(read_u32(in));
    cfg.min_df_tweets = static_cast<int>(read_u32(in));
    cfg.tweet_cap = read_u64(in);

    GenderModel model;
    model.featurizer = ProfileFeaturizer(cfg);
    model.hyper.lambda = read_f64(in);
    model.hyper.epochs = static_cast<int>(read_u32(in));
    model.hyper.seed = read_u64(in);
    model.meta.objective = read_f64(in);
    model.meta.n_train = read_u64(in);
    model.calibration.a = read_f64(in);
    model.calibration.b = read_f64(in);
    int fitted = in.get();
    if (fitted == EOF) throw ModelFormatError("model file truncated");
    model.calibration.fitted = fitted != 0;

    const std::uint32_t n_vocabs = read_u32(in);
    if (n_vocabs > 3) throw ModelFormatError("model file corrupt: vocabulary count");
    for (std::uint32_t v = 0; v < n_vocabs; ++v) {
        Vocabulary vocab;
        int field_byte = in.get();
        if (field_byte == EOF) throw ModelFormatError("model file truncated");
        if (field_byte > 2) throw ModelFormatError("model file corrupt: bad field tag");
        vocab.field = static_cast<FieldTag>(field_byte);
        vocab.range.low = static_cast<int>(read_u32(in));
        vocab.range.high = static_cast<int>(read_u32(in));
        vocab.min_df = static_cast<int>(read_u32(in));
        const std::uint64_t size = read_u64(in);
        if (size > (1ull << 32)) throw ModelFormatError("model file corrupt: vocabulary size");
        vocab.grams.reserve(size);
        vocab.idf.reserve(size);
        for (std::uint64_t i = 0; i < size; ++i) {
            vocab.grams.push_back(read_str(in));
            vocab.idf.push_back(read_f64(in));
            vocab.index.emplace(vocab.grams.back(), static_cast<std::uint32_t>(i));
        }
        model.featurizer.vocabularies().push_back(std::move(vocab));
    }

    const std::uint64_t n_weights = read_u64(in);
    if (n_weights != model.featurizer.dimension()) {
        throw ModelFormatError("model file corrupt: weight count does not match vocabularies");
    }
    model.weights.reserve(n_weights);
    for (std::uint64_t i = 0; i < n_weights; ++i) model.weights.push_back(read_f64(in));
    model.bias = read_f64(in);
    read_str(in);  // stored version digest; recomputed on demand
    if (read_u32(in) != 0x00444E45) throw ModelFormatError("model file corrupt: missing end marker");
    return model;
}

GenderModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFormatError("cannot open model file: " + path);
    return load_model(in);
}

}  // namespace tamyiz
