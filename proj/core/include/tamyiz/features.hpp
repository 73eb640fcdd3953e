// Character n-gram tf-idf featurization of profile text fields.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tamyiz/dataset.hpp"

namespace tamyiz {

struct SparseVector {
    std::vector<std::uint32_t> idx;  // strictly increasing
    std::vector<double> val;

    std::size_t nnz() const { return idx.size(); }
    double dot(const std::vector<double>& dense) const;
    double l2_norm() const;

    bool operator==(const SparseVector&) const = default;
};

struct NgramRange {
    int low = 2;
    int high = 5;
};

// All contiguous code-point substrings with length in [low, high]. Text
// shorter than `low` yields itself as the single gram (empty text yields
// nothing). Multiplicities are the term frequencies.
std::map<std::string, int> char_ngrams(std::string_view normalized_text, NgramRange range);

enum class FieldTag { Username, Description, Tweets };

struct Vocabulary {
    std::vector<std::string> grams;  // index order == lexicographic order
    std::vector<double> idf;
    std::map<std::string, std::uint32_t> index;
    NgramRange range;
    int min_df = 1;
    FieldTag field = FieldTag::Username;

    std::size_t size() const { return grams.size(); }
};

// Grams with document frequency >= min_df; idf(g) = ln((1+N)/(1+df)) + 1.
// Indices are assigned in lexicographic gram order, so the vocabulary is
// independent of corpus order.
Vocabulary fit_vectorizer(const std::vector<std::string>& normalized_corpus, NgramRange range,
                          int min_df, FieldTag field = FieldTag::Username);

// normalize -> n-grams -> tf * idf -> L2. Out-of-vocabulary grams are
// dropped; the result has unit norm unless no gram is in vocabulary.
SparseVector vectorize(std::string_view text, const Vocabulary& vocab);

// Tweet text preparation: URLs become "URL", @mentions become "@USER".
std::string mask_tweet(std::string_view tweet);

enum class FeatureSet { Usernames, Description, Tweets, All };
enum class TweetMode { Aggregate, SingleFirst };

const char* to_string(FeatureSet f);
FeatureSet feature_set_from_string(std::string_view s);

struct FeaturizerConfig {
    FeatureSet set = FeatureSet::Usernames;
    TweetMode tweet_mode = TweetMode::Aggregate;
    NgramRange range;
    int min_df_username = 1;
    int min_df_description = 2;
    int min_df_tweets = 2;
    std::size_t tweet_cap = 200;  // aggregated tweets per user
};

// Extracts, normalizes and vectorizes the configured fields of a profile.
// For FeatureSet::All the three per-field vectors are concatenated into one
// block-structured vector and the whole is renormalized.
class ProfileFeaturizer {
public:
    ProfileFeaturizer() = default;
    explicit ProfileFeaturizer(FeaturizerConfig config) : config_(config) {}

    void fit(const std::vector<UserProfile>& profiles);
    SparseVector transform(const UserProfile& profile) const;
    // Featurizes a bare name through the username vocabulary (block 0).
    SparseVector transform_name(std::string_view name) const;

    std::string field_text(const UserProfile& profile, FieldTag tag) const;

    const FeaturizerConfig& config() const { return config_; }
    const std::vector<Vocabulary>& vocabularies() const { return vocabs_; }
    std::vector<Vocabulary>& vocabularies() { return vocabs_; }
    std::size_t dimension() const;
    bool fitted() const { return !vocabs_.empty(); }

private:
    std::vector<FieldTag> fields() const;

    FeaturizerConfig config_;
    std::vector<Vocabulary> vocabs_;
};

}  // namespace tamyiz
