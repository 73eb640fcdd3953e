// Corpus contrast and descriptive statistics over labeled profiles.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamyiz/dataset.hpp"
#include "tamyiz/lexicon.hpp"

namespace tamyiz {

using TokenCounts = std::map<std::string, long long>;

// Token usage rates contrasted across categories. For token x and
// category i with rate r_i = C(x|i)/T_i the score is 2*r_i/sum_l r_l - 1,
// always in [-1, +1]; +1 means the token occurs only in that category.
// With two categories the scores sum to zero.
struct ValenceScore {
    std::string token;
    std::map<std::string, double> score;       // category -> [-1, +1]
    std::map<std::string, long long> counts;   // category -> raw count
    long long total = 0;
};

inline constexpr long long kValenceMinTotal = 5;

// Requires >= 2 categories, each with a positive token total. Tokens whose
// combined count is below min_total are skipped.
std::vector<ValenceScore> valence(const std::map<std::string, TokenCounts>& corpora,
                                  long long min_total = kValenceMinTotal);

// Tokens with score > threshold in `category`, ranked by score desc,
// count desc, token asc, truncated to k.
std::vector<ValenceScore> top_valence_words(const std::vector<ValenceScore>& scores,
                                            const std::string& category, double threshold = 0.5,
                                            std::size_t k = 100);

// Whitespace tokens of the normalized tweet text with URL/@USER masking.
std::vector<std::string> tweet_tokens(const std::string& tweet);
TokenCounts profile_tweet_token_counts(const UserProfile& profile);

struct ProfessionPair {
    std::string masculine;  // surface forms as configured
    std::string feminine;
    std::string domain;
};

std::vector<ProfessionPair> load_profession_pairs(std::istream& in);

struct GenderCount {
    long long male = 0;
    long long female = 0;
    long long total() const { return male + female; }
};

struct ProfessionGapRow {
    ProfessionPair pair;
    long long masculine_count = 0;
    long long feminine_count = 0;
    double masculine_pct = 0.0;  // of masculine_count + feminine_count
    double feminine_pct = 0.0;
};

struct TokenCountRow {
    std::string token;
    long long count = 0;
};

struct StatsReport {
    GenderCount accounts;
    GenderCount verified;
    std::map<std::string, GenderCount> by_country;          // gold country incl. OTH/"?"
    std::map<int, GenderCount> joined_by_year;
    std::map<int, GenderCount> joined_cumulative;           // monotone by year
    double mean_followers_male = 0.0, mean_followers_female = 0.0;
    double mean_friends_male = 0.0, mean_friends_female = 0.0;
    std::vector<TokenCountRow> top_description_words_male;  // first description words
    std::vector<TokenCountRow> top_description_words_female;
    std::vector<TokenCountRow> top_names_male;              // first display-name tokens
    std::vector<TokenCountRow> top_names_female;
    std::vector<ProfessionGapRow> profession_gaps;
};

// Gender comes from gold labels, falling back to the lexicon match when
// gold is unknown; unknown-gender profiles are skipped.
StatsReport stats_report(const std::vector<UserProfile>& profiles, const Lexicon& lexicon,
                         const std::vector<ProfessionPair>& pairs, std::size_t top_k = 50);

// One TSV per report section, written under `dir` with documented headers.
void write_stats_reports(const StatsReport& report, const std::string& dir);
void write_valence_report(const std::vector<ValenceScore>& scores, std::ostream& out);

}  // namespace tamyiz
