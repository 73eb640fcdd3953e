// Shared fixtures and generators for the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tamyiz/classifier.hpp"
#include "tamyiz/dataset.hpp"
#include "tamyiz/features.hpp"

#ifndef TAMYIZ_DATA_DIR
#define TAMYIZ_DATA_DIR "data"
#endif

namespace test_helpers {

inline std::string data_path(const std::string& rel) {
    return std::string(TAMYIZ_DATA_DIR) + "/" + rel;
}

inline std::vector<tamyiz::UserProfile> load_fixture60() {
    std::ifstream in(data_path("fixtures/profiles60.jsonl"));
    REQUIRE(in.good());
    auto result = tamyiz::parse_profiles(in);
    REQUIRE(result.profiles.size() == 60);
    REQUIRE(result.diagnostics.empty());
    return std::move(result.profiles);
}

// Random code point excluding surrogates, biased toward Arabic and ASCII
// so normalization paths actually fire.
inline char32_t random_codepoint(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0:
            return static_cast<char32_t>(0x0600 + rng() % 0x100);  // Arabic block
        case 1:
            return static_cast<char32_t>(0x20 + rng() % 0x60);  // ASCII
        default: {
            char32_t cp;
            do {
                cp = static_cast<char32_t>(rng() % 0x110000);
            } while (cp >= 0xD800 && cp <= 0xDFFF);
            return cp;
        }
    }
}

inline std::string random_unicode_string(std::mt19937_64& rng, std::size_t max_len = 40) {
    std::string out;
    const std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        tamyiz::append_utf8(out, random_codepoint(rng));
    }
    return out;
}

// Names over disjoint letter pools; the crafted model below classifies
// them by construction.
inline std::string random_male_name(std::mt19937_64& rng) {
    static const char kPool[] = "badrgmo";
    std::string s;
    const std::size_t len = 3 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i) s.push_back(kPool[rng() % 7]);
    return s;
}

inline std::string random_female_name(std::mt19937_64& rng) {
    static const char kPool[] = "selikhf";
    std::string s;
    const std::size_t len = 3 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i) s.push_back(kPool[rng() % 7]);
    return s;
}

// A hand-built model over 2-grams of two disjoint alphabets: male-pool
// grams weigh positive, female-pool grams negative. Any name drawn from
// one pool gets a margin of the matching sign.
inline tamyiz::GenderModel crafted_pool_model() {
    using namespace tamyiz;
    const std::string males = "badrgmo";
    const std::string females = "selikhf";
    Vocabulary vocab;
    vocab.range = {2, 2};
    vocab.min_df = 1;
    vocab.field = FieldTag::Username;
    std::vector<std::string> grams;
    for (char a : males) {
        for (char b : males) grams.push_back(std::string{a, b});
    }
    for (char a : females) {
        for (char b : females) grams.push_back(std::string{a, b});
    }
    std::sort(grams.begin(), grams.end());
    GenderModel model;
    for (const auto& g : grams) {
        vocab.index.emplace(g, static_cast<std::uint32_t>(vocab.grams.size()));
        vocab.grams.push_back(g);
        vocab.idf.push_back(1.0);
        model.weights.push_back(males.find(g[0]) != std::string::npos ? 2.0 : -2.0);
    }
    FeaturizerConfig cfg;
    cfg.set = FeatureSet::Usernames;
    cfg.range = {2, 2};
    model.featurizer = ProfileFeaturizer(cfg);
    model.featurizer.vocabularies().push_back(std::move(vocab));
    model.bias = 0.0;
    model.calibration = {1.0, 0.0, true};
    return model;
}

// Arabic fixture for the demo contract: grams of the feminine suffix
// weigh negative, the shared stem weighs positive.
inline tamyiz::GenderModel crafted_arabic_model() {
    using namespace tamyiz;
    Vocabulary vocab;
    vocab.range = {2, 3};
    vocab.min_df = 1;
    vocab.field = FieldTag::Username;
    GenderModel model;
    auto add = [&](const std::string& gram, double w) {
        vocab.index.emplace(gram, static_cast<std::uint32_t>(vocab.grams.size()));
        vocab.grams.push_back(gram);
        vocab.idf.push_back(1.0);
        model.weights.push_back(w);
    };
    // Normalized "مهندس" 2-grams push male; the trailing Haa of the
    // normalized feminine form pushes female hard.
    const std::string stem = normalize_text("مهندس");
    auto cps = decode_utf8(stem);
    for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
        std::string g;
        append_utf8(g, cps[i]);
        append_utf8(g, cps[i + 1]);
        add(g, 0.5);
    }
    std::string fem_gram;  // "سه" closes the feminine form
    append_utf8(fem_gram, cps.back());
    append_utf8(fem_gram, U'ه');
    add(fem_gram, -10.0);
    std::sort(vocab.grams.begin(), vocab.grams.end());
    vocab.index.clear();
    std::vector<double> w(vocab.grams.size());
    for (std::size_t i = 0; i < vocab.grams.size(); ++i) {
        vocab.index.emplace(vocab.grams[i], static_cast<std::uint32_t>(i));
    }
    // Re-align weights with the sorted gram order.
    for (std::size_t i = 0; i < vocab.grams.size(); ++i) {
        const std::string& g = vocab.grams[i];
        w[i] = g == fem_gram ? -10.0 : 0.5;
    }
    model.weights = std::move(w);
    FeaturizerConfig cfg;
    cfg.set = FeatureSet::Usernames;
    cfg.range = {2, 3};
    model.featurizer = ProfileFeaturizer(cfg);
    model.featurizer.vocabularies().push_back(std::move(vocab));
    model.bias = 0.0;
    model.calibration = {1.0, 0.0, true};
    return model;
}

inline tamyiz::UserProfile make_profile(const std::string& id, const std::string& name,
                                        tamyiz::GenderLabel gold) {
    tamyiz::UserProfile p;
    p.user_id = id;
    p.display_name = name;
    p.screen_name = id;
    p.gold_gender = gold;
    return p;
}

}  // namespace test_helpers
