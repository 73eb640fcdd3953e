#include "tamyiz/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tamyiz/normalize.hpp"

namespace tamyiz {
namespace {

bool is_url_start(std::string_view s, std::size_t i) {
    return s.compare(i, 7, "http://") == 0 || s.compare(i, 8, "https://") == 0 ||
           s.compare(i, 4, "www.") == 0;
}

bool is_word_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) || c == '_';
}

std::string substr_cp(const std::vector<char32_t>& cps, std::size_t start, std::size_t len) {
    std::string out;
    for (std::size_t i = start; i < start + len; ++i) append_utf8(out, cps[i]);
    return out;
}

}  // namespace

double SparseVector::dot(const std::vector<double>& dense) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        sum += dense[idx[i]] * val[i];
    }
    return sum;
}

double SparseVector::l2_norm() const {
    double sum = 0.0;
    for (double v : val) sum += v * v;
    return std::sqrt(sum);
}

std::map<std::string, int> char_ngrams(std::string_view normalized_text, NgramRange range) {
    if (range.low < 1 || range.low > range.high) {
        throw std::invalid_argument("char_ngrams: require 1 <= low <= high");
    }
    std::map<std::string, int> grams;
    auto cps = decode_utf8(normalized_text);
    const std::size_t n = cps.size();
    if (n == 0) return grams;
    if (n < static_cast<std::size_t>(range.low)) {
        grams[substr_cp(cps, 0, n)] += 1;
        return grams;
    }
    for (int len = range.low; len <= range.high && static_cast<std::size_t>(len) <= n; ++len) {
        for (std::size_t start = 0; start + len <= n; ++start) {
            grams[substr_cp(cps, start, len)] += 1;
        }
    }
    return grams;
}

Vocabulary fit_vectorizer(const std::vector<std::string>& normalized_corpus, NgramRange range,
                          int min_df, FieldTag field) {
    if (normalized_corpus.empty()) {
        throw std::invalid_argument("fit_vectorizer: empty corpus");
    }
    std::map<std::string, int> df;
    for (const auto& doc : normalized_corpus) {
        for (const auto& [gram, tf] : char_ngrams(doc, range)) {
            df[gram] += 1;  // one per document
        }
    }
    Vocabulary vocab;
    vocab.range = range;
    vocab.min_df = min_df;
    vocab.field = field;
    const double n_docs = static_cast<double>(normalized_corpus.size());
    for (const auto& [gram, count] : df) {  // std::map iterates lexicographically
        if (count < min_df) continue;
        vocab.index.emplace(gram, static_cast<std::uint32_t>(vocab.grams.size()));
        vocab.grams.push_back(gram);
        vocab.idf.push_back(std::log((1.0 + n_docs) / (1.0 + count)) + 1.0);
    }
    return vocab;
}

SparseVector vectorize(std::string_view text, const Vocabulary& vocab) {
    SparseVector v;
    const std::string norm = normalize_text(text);
    std::map<std::uint32_t, double> weights;
    for (const auto& [gram, tf] : char_ngrams(norm, vocab.range)) {
        auto it = vocab.index.find(gram);
        if (it == vocab.index.end()) continue;
        weights[it->second] = tf * vocab.idf[it->second];
    }
    double norm2 = 0.0;
    for (const auto& [i, w] : weights) norm2 += w * w;
    const double scale = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
    v.idx.reserve(weights.size());
    v.val.reserve(weights.size());
    for (const auto& [i, w] : weights) {
        v.idx.push_back(i);
        v.val.push_back(w * scale);
    }
    return v;
}

std::string mask_tweet(std::string_view tweet) {
    std::string out;
    out.reserve(tweet.size());
    std::size_t i = 0;
    while (i < tweet.size()) {
        if (is_url_start(tweet, i)) {
            out += "URL";
            while (i < tweet.size() && !std::isspace(static_cast<unsigned char>(tweet[i]))) ++i;
            continue;
        }
        if (tweet[i] == '@' && i + 1 < tweet.size() && is_word_char(tweet[i + 1])) {
            out += "@USER";
            ++i;
            while (i < tweet.size() && is_word_char(tweet[i])) ++i;
            continue;
        }
        out.push_back(tweet[i]);
        ++i;
    }
    return out;
}

const char* to_string(FeatureSet f) {
    switch (f) {
        case FeatureSet::Usernames: return "usernames";
        case FeatureSet::Description: return "description";
        case FeatureSet::Tweets: return "tweets";
        default: return "all";
    }
}

FeatureSet feature_set_from_string(std::string_view s) {
    if (s == "usernames") return FeatureSet::Usernames;
    if (s == "description") return FeatureSet::Description;
    if (s == "tweets") return FeatureSet::Tweets;
    if (s == "all") return FeatureSet::All;
    throw std::invalid_argument("unknown feature set '" + std::string(s) + "'");
}

std::vector<FieldTag> ProfileFeaturizer::fields() const {
    switch (config_.set) {
        case FeatureSet::Usernames: return {FieldTag::Username};
        case FeatureSet::Description: return {FieldTag::Description};
        case FeatureSet::Tweets: return {FieldTag::Tweets};
        default: return {FieldTag::Username, FieldTag::Description, FieldTag::Tweets};
    }
}

std::string ProfileFeaturizer::field_text(const UserProfile& profile, FieldTag tag) const {
    switch (tag) {
        case FieldTag::Username:
            return profile.username();
        case FieldTag::Description:
            return profile.description;
        case FieldTag::Tweets: {
            if (profile.tweets.empty()) return {};
            if (config_.tweet_mode == TweetMode::SingleFirst) {
                return mask_tweet(profile.tweets.front());
            }
            std::string joined;
            const std::size_t n = std::min(profile.tweets.size(), config_.tweet_cap);
            for (std::size_t i = 0; i < n; ++i) {
                if (i) joined.push_back(' ');
                joined += mask_tweet(profile.tweets[i]);
            }
            return joined;
        }
    }
    return {};
}

void ProfileFeaturizer::fit(const std::vector<UserProfile>& profiles) {
    vocabs_.clear();
    for (FieldTag tag : fields()) {
        std::vector<std::string> corpus;
        corpus.reserve(profiles.size());
        for (const auto& p : profiles) {
            corpus.push_back(normalize_text(field_text(p, tag)));
        }
        int min_df = tag == FieldTag::Username     ? config_.min_df_username
                     : tag == FieldTag::Description ? config_.min_df_description
                                                     : config_.min_df_tweets;
        vocabs_.push_back(fit_vectorizer(corpus, config_.range, min_df, tag));
    }
}

std::size_t ProfileFeaturizer::dimension() const {
    std::size_t dim = 0;
    for (const auto& v : vocabs_) dim += v.size();
    return dim;
}

SparseVector ProfileFeaturizer::transform(const UserProfile& profile) const {
    if (!fitted()) throw std::logic_error("ProfileFeaturizer::transform before fit");
    const auto tags = fields();
    SparseVector out;
    std::uint32_t offset = 0;
    double norm2 = 0.0;
    for (std::size_t b = 0; b < tags.size(); ++b) {
        SparseVector block = vectorize(field_text(profile, tags[b]), vocabs_[b]);
        for (std::size_t i = 0; i < block.nnz(); ++i) {
            out.idx.push_back(block.idx[i] + offset);
            out.val.push_back(block.val[i]);
            norm2 += block.val[i] * block.val[i];
        }
        offset += static_cast<std::uint32_t>(vocabs_[b].size());
    }
    if (tags.size() > 1 && norm2 > 0.0) {
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto& v : out.val) v *= scale;
    }
    return out;
}

SparseVector ProfileFeaturizer::transform_name(std::string_view name) const {
    if (!fitted()) throw std::logic_error("ProfileFeaturizer::transform_name before fit");
    if (vocabs_.front().field != FieldTag::Username) {
        throw std::logic_error("model has no username vocabulary");
    }
    return vectorize(name, vocabs_.front());
}

}  // namespace tamyiz
