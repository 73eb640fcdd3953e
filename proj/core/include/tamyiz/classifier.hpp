// Linear max-margin gender classifier over sparse tf-idf vectors.
//
// Training minimizes L2-regularized hinge loss with epoch-based subgradient
// descent (step 1/(lambda*t), seeded shuffling), which keeps runs bitwise
// reproducible. Margins are mapped to probabilities by a monotone logistic
// calibration centered at zero so that p_male >= 0.5 exactly when the
// margin is non-negative.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamyiz/dataset.hpp"
#include "tamyiz/features.hpp"

namespace tamyiz {

struct Hyperparams {
    double lambda = 1e-4;  // regularization strength
    int epochs = 20;
    std::uint64_t seed = 42;
};

struct Calibration {
    double a = 1.0;  // slope over margins; never negative
    double b = 0.0;  // kept in the container format; the fitter centers it at 0
    bool fitted = false;
};

struct TrainMeta {
    double objective = 0.0;  // hinge objective of the returned weights
    std::uint64_t n_train = 0;
};

struct Prediction {
    GenderLabel label = GenderLabel::Male;  // Male iff margin >= 0 (ties to Male)
    double margin = 0.0;
    double p_male = 0.5;

    // Calibrated confidence of the returned label; >= 0.5 by construction.
    double confidence() const { return label == GenderLabel::Male ? p_male : 1.0 - p_male; }
};

class TrainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LinearFit {
    std::vector<double> weights;
    double bias = 0.0;
    double objective = 0.0;
};

struct Example {
    SparseVector x;
    GenderLabel y = GenderLabel::Male;  // Male or Female only
};

// lambda/2 ||w||^2 + mean hinge; the quantity the trainer minimizes.
double hinge_objective(const std::vector<Example>& examples, const std::vector<double>& weights,
                       double bias, double lambda);

// Deterministic Pegasos-style subgradient descent. Requires at least one
// example of each class and finite feature values.
LinearFit train_linear(const std::vector<Example>& examples, std::size_t dimension,
                       const Hyperparams& hyper);

struct GenderModel {
    ProfileFeaturizer featurizer;
    std::vector<double> weights;
    double bias = 0.0;
    Calibration calibration;
    Hyperparams hyper;
    TrainMeta meta;

    Prediction predict(const SparseVector& v) const;
    Prediction predict_name(std::string_view name) const;
    Prediction predict_profile(const UserProfile& profile) const;

    // Stable content digest; reported as model_version by the service.
    std::string version() const;
};

// Fits the calibration slope on dev margins by 1-D logistic regression.
// Degenerate dev sets (single class or constant margins) fall back to the
// identity calibration; `warning` receives a message in that case.
Calibration calibrate_margins(const std::vector<double>& margins,
                              const std::vector<GenderLabel>& labels, std::string* warning);
void calibrate(GenderModel& model, const std::vector<Example>& dev, std::string* warning = nullptr);

// End-to-end: featurize, train, calibrate on the last 10% of the seeded
// shuffle of the training profiles (held out from the weight fit).
GenderModel train_gender_model(const std::vector<UserProfile>& train,
                               const FeaturizerConfig& feat_config, const Hyperparams& hyper,
                               std::string* calibration_warning = nullptr);

// Versioned container: a human-readable header line, then little-endian
// integers and IEEE-754 doubles. Round trips preserve predictions exactly.
inline constexpr std::uint32_t kModelFormatMajor = 1;
inline constexpr std::uint32_t kModelFormatMinor = 0;

void save_model(const GenderModel& model, std::ostream& out);
void save_model_file(const GenderModel& model, const std::string& path);
GenderModel load_model(std::istream& in);
GenderModel load_model_file(const std::string& path);

}  // namespace tamyiz
