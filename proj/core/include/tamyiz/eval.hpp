// Metrics, baselines and the experiment harness.
//
// Metrics are accuracy and macro-averaged precision/recall/F1 with the
// zero-denominator convention P=R=F1=0 for an absent class. Percentages
// are computed from the confusion counts with exact integer arithmetic and
// rounded half away from zero to one decimal, which is what reproduces the
// published majority-baseline row (macro P 26.65 -> 26.7).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamyiz/classifier.hpp"
#include "tamyiz/dataset.hpp"
#include "tamyiz/features.hpp"

namespace tamyiz {

struct EvalReport {
    std::string train_name;
    std::string feature_name;
    // confusion[gold][pred], index 0 = Male, 1 = Female.
    long long confusion[2][2] = {{0, 0}, {0, 0}};
    // Raw fractions in [0,100].
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    // Exact percentages in tenths (53.3% -> 533), no floating error.
    int accuracy_tenths = 0;
    int precision_tenths = 0;
    int recall_tenths = 0;
    int f1_tenths = 0;

    long long test_size() const {
        return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
    }
    std::string tsv_row() const;        // train, features, Acc, P, R, F1 (one decimal)
    static std::string tsv_header();
    std::string detail_json() const;    // confusion matrix + raw metrics
};

// predictions and gold must have equal nonzero length; gold labels must be
// Male or Female.
EvalReport compute_metrics(const std::vector<GenderLabel>& predictions,
                           const std::vector<GenderLabel>& gold);

// Predicts the majority class of train_gold everywhere; an exactly
// balanced training set breaks the tie to Male.
EvalReport majority_baseline(const std::vector<GenderLabel>& train_gold,
                             const std::vector<GenderLabel>& test_gold);

struct ExperimentConfig {
    FeatureSet features = FeatureSet::Usernames;
    TweetMode tweet_mode = TweetMode::Aggregate;
    Hyperparams hyper;
    std::string train_name = "train";
};

// Fits vectorizers and weights on the training set only (with the last 10%
// of its seeded shuffle held out for calibration), then scores the test
// set. The test set is never touched during fitting.
EvalReport run_experiment(const std::vector<UserProfile>& train,
                          const std::vector<UserProfile>& test, const ExperimentConfig& config,
                          GenderModel* trained_model = nullptr);

}  // namespace tamyiz
