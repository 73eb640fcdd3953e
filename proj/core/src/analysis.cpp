#include "tamyiz/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "tamyiz/features.hpp"
#include "tamyiz/normalize.hpp"

namespace tamyiz {
namespace {

std::string pct1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::vector<TokenCountRow> top_rows(const TokenCounts& counts, std::size_t k) {
    std::vector<TokenCountRow> rows;
    rows.reserve(counts.size());
    for (const auto& [token, count] : counts) rows.push_back({token, count});
    std::sort(rows.begin(), rows.end(), [](const TokenCountRow& a, const TokenCountRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.token < b.token;
    });
    if (rows.size() > k) rows.resize(k);
    return rows;
}

std::ofstream open_report(const std::string& dir, const char* name) {
    std::ofstream out(dir + "/" + name, std::ios::trunc);
    if (!out) throw std::runtime_error(std::string("cannot write report file ") + dir + "/" + name);
    return out;
}

}  // namespace

std::vector<ValenceScore> valence(const std::map<std::string, TokenCounts>& corpora,
                                  long long min_total) {
    if (corpora.size() < 2) {
        throw std::invalid_argument("valence: need at least two categories");
    }
    std::map<std::string, long long> totals;
    for (const auto& [category, counts] : corpora) {
        long long t = 0;
        for (const auto& [token, c] : counts) t += c;
        if (t <= 0) {
            throw std::invalid_argument("valence: category '" + category + "' has no tokens");
        }
        totals[category] = t;
    }

    std::map<std::string, ValenceScore> by_token;
    for (const auto& [category, counts] : corpora) {
        for (const auto& [token, c] : counts) {
            auto& entry = by_token[token];
            entry.token = token;
            entry.counts[category] += c;
            entry.total += c;
        }
    }

    std::vector<ValenceScore> out;
    for (auto& [token, entry] : by_token) {
        if (entry.total < min_total) continue;
        double rate_sum = 0.0;
        std::map<std::string, double> rates;
        for (const auto& [category, t] : totals) {
            auto it = entry.counts.find(category);
            const long long c = it == entry.counts.end() ? 0 : it->second;
            entry.counts[category] = c;
            const double rate = static_cast<double>(c) / static_cast<double>(t);
            rates[category] = rate;
            rate_sum += rate;
        }
        for (const auto& [category, rate] : rates) {
            entry.score[category] = rate_sum > 0.0 ? 2.0 * rate / rate_sum - 1.0 : 0.0;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<ValenceScore> top_valence_words(const std::vector<ValenceScore>& scores,
                                            const std::string& category, double threshold,
                                            std::size_t k) {
    std::vector<ValenceScore> out;
    for (const auto& s : scores) {
        auto it = s.score.find(category);
        if (it != s.score.end() && it->second > threshold) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [&](const ValenceScore& a, const ValenceScore& b) {
        const double sa = a.score.at(category), sb = b.score.at(category);
        if (sa != sb) return sa > sb;
        const long long ca = a.counts.at(category), cb = b.counts.at(category);
        if (ca != cb) return ca > cb;
        return a.token < b.token;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<std::string> tweet_tokens(const std::string& tweet) {
    const std::string norm = normalize_text(mask_tweet(tweet));
    std::vector<std::string> tokens;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= norm.size(); ++i) {
        if (i == norm.size() || norm[i] == ' ') {
            if (i > start) tokens.push_back(norm.substr(start, i - start));
            start = i + 1;
        }
    }
    return tokens;
}

TokenCounts profile_tweet_token_counts(const UserProfile& profile) {
    TokenCounts counts;
    for (const auto& tweet : profile.tweets) {
        for (auto& token : tweet_tokens(tweet)) {
            counts[token] += 1;
        }
    }
    return counts;
}

std::vector<ProfessionPair> load_profession_pairs(std::istream& in) {
    std::vector<ProfessionPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                cols.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (cols.size() < 2) {
            throw std::runtime_error("profession pairs line " + std::to_string(line_no) +
                                     ": expected masculine<TAB>feminine[<TAB>domain]");
        }
        ProfessionPair p;
        p.masculine = cols[0];
        p.feminine = cols[1];
        if (cols.size() > 2) p.domain = cols[2];
        pairs.push_back(std::move(p));
    }
    return pairs;
}

StatsReport stats_report(const std::vector<UserProfile>& profiles, const Lexicon& lexicon,
                         const std::vector<ProfessionPair>& pairs, std::size_t top_k) {
    StatsReport report;
    long long followers_m = 0, followers_f = 0, friends_m = 0, friends_f = 0;
    TokenCounts desc_words_m, desc_words_f, names_m, names_f, first_word_all;

    for (const auto& p : profiles) {
        GenderLabel g = p.gold_gender;
        if (g == GenderLabel::Unknown) g = match_description(p.description, lexicon);

        if (auto word = first_token(p.description)) {
            first_word_all[*word] += 1;
        }
        if (g == GenderLabel::Unknown) continue;

        const bool male = g == GenderLabel::Male;
        (male ? report.accounts.male : report.accounts.female) += 1;
        if (p.verified) (male ? report.verified.male : report.verified.female) += 1;

        auto& country = report.by_country[p.gold_country];
        (male ? country.male : country.female) += 1;

        if (auto year = p.joined_year()) {
            auto& yc = report.joined_by_year[*year];
            (male ? yc.male : yc.female) += 1;
        }

        (male ? followers_m : followers_f) += p.followers_count;
        (male ? friends_m : friends_f) += p.friends_count;

        if (auto word = first_token(p.description)) {
            (male ? desc_words_m : desc_words_f)[*word] += 1;
        }
        if (auto name = first_token(p.display_name)) {
            (male ? names_m : names_f)[*name] += 1;
        }
    }

    GenderCount running;
    for (const auto& [year, c] : report.joined_by_year) {
        running.male += c.male;
        running.female += c.female;
        report.joined_cumulative[year] = running;
    }

    if (report.accounts.male > 0) {
        report.mean_followers_male = static_cast<double>(followers_m) / report.accounts.male;
        report.mean_friends_male = static_cast<double>(friends_m) / report.accounts.male;
    }
    if (report.accounts.female > 0) {
        report.mean_followers_female = static_cast<double>(followers_f) / report.accounts.female;
        report.mean_friends_female = static_cast<double>(friends_f) / report.accounts.female;
    }

    report.top_description_words_male = top_rows(desc_words_m, top_k);
    report.top_description_words_female = top_rows(desc_words_f, top_k);
    report.top_names_male = top_rows(names_m, top_k);
    report.top_names_female = top_rows(names_f, top_k);

    for (const auto& pair : pairs) {
        ProfessionGapRow row;
        row.pair = pair;
        const std::string masc = normalize_text(pair.masculine);
        const std::string fem = normalize_text(pair.feminine);
        if (auto it = first_word_all.find(masc); it != first_word_all.end()) {
            row.masculine_count = it->second;
        }
        if (auto it = first_word_all.find(fem); it != first_word_all.end()) {
            row.feminine_count = it->second;
        }
        const long long total = row.masculine_count + row.feminine_count;
        if (total > 0) {
            row.masculine_pct = 100.0 * static_cast<double>(row.masculine_count) / total;
            row.feminine_pct = 100.0 * static_cast<double>(row.feminine_count) / total;
        }
        report.profession_gaps.push_back(std::move(row));
    }
    return report;
}

void write_stats_reports(const StatsReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);

    {
        auto out = open_report(dir, "accounts.tsv");
        out << "group\tmale\tfemale\tmale_pct\tfemale_pct\n";
        auto row = [&out](const char* name, const GenderCount& c) {
            const double total = static_cast<double>(c.total());
            out << name << '\t' << c.male << '\t' << c.female << '\t'
                << (total > 0 ? pct1(100.0 * c.male / total) : "0.0") << '\t'
                << (total > 0 ? pct1(100.0 * c.female / total) : "0.0") << '\n';
        };
        row("all", report.accounts);
        row("verified", report.verified);
    }
    {
        auto out = open_report(dir, "country_gender.tsv");
        out << "country\tmale\tfemale\tfemale_pct\n";
        for (const auto& [country, c] : report.by_country) {
            const double total = static_cast<double>(c.total());
            out << country << '\t' << c.male << '\t' << c.female << '\t'
                << (total > 0 ? pct1(100.0 * c.female / total) : "0.0") << '\n';
        }
    }
    {
        auto out = open_report(dir, "joining_years.tsv");
        out << "year\tmale\tfemale\tcumulative_male\tcumulative_female\n";
        for (const auto& [year, c] : report.joined_by_year) {
            const auto& cum = report.joined_cumulative.at(year);
            out << year << '\t' << c.male << '\t' << c.female << '\t' << cum.male << '\t'
                << cum.female << '\n';
        }
    }
    {
        auto out = open_report(dir, "engagement.tsv");
        out << "gender\tmean_followers\tmean_friends\n";
        out << "m\t" << pct1(report.mean_followers_male) << '\t' << pct1(report.mean_friends_male)
            << '\n';
        out << "f\t" << pct1(report.mean_followers_female) << '\t'
            << pct1(report.mean_friends_female) << '\n';
    }
    {
        auto out = open_report(dir, "top_description_words.tsv");
        out << "gender\ttoken\tcount\n";
        for (const auto& r : report.top_description_words_male) {
            out << "m\t" << r.token << '\t' << r.count << '\n';
        }
        for (const auto& r : report.top_description_words_female) {
            out << "f\t" << r.token << '\t' << r.count << '\n';
        }
    }
    {
        auto out = open_report(dir, "top_names.tsv");
        out << "gender\ttoken\tcount\n";
        for (const auto& r : report.top_names_male) {
            out << "m\t" << r.token << '\t' << r.count << '\n';
        }
        for (const auto& r : report.top_names_female) {
            out << "f\t" << r.token << '\t' << r.count << '\n';
        }
    }
    {
        auto out = open_report(dir, "profession_gaps.tsv");
        out << "masculine\tfeminine\tmasculine_count\tfeminine_count\tmasculine_pct\tfeminine_pct\tdomain\n";
        for (const auto& r : report.profession_gaps) {
            out << r.pair.masculine << '\t' << r.pair.feminine << '\t' << r.masculine_count << '\t'
                << r.feminine_count << '\t' << pct1(r.masculine_pct) << '\t'
                << pct1(r.feminine_pct) << '\t' << r.pair.domain << '\n';
        }
    }
}

void write_valence_report(const std::vector<ValenceScore>& scores, std::ostream& out) {
    std::vector<std::string> categories;
    if (!scores.empty()) {
        for (const auto& [category, s] : scores.front().score) categories.push_back(category);
    }
    out << "token\ttotal";
    for (const auto& c : categories) out << "\tcount_" << c << "\tscore_" << c;
    out << '\n';
    out.precision(6);
    out.setf(std::ios::fixed);
    for (const auto& s : scores) {
        out << s.token << '\t' << s.total;
        for (const auto& c : categories) {
            out << '\t' << s.counts.at(c) << '\t' << s.score.at(c);
        }
        out << '\n';
    }
}

}  // namespace tamyiz
