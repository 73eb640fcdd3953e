#include "tamyiz/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tamyiz/normalize.hpp"

namespace tamyiz {
namespace {

constexpr char32_t kTaaMarbouta = 0x0629;
constexpr char32_t kYaa = 0x064A;
constexpr char32_t kAlifMaqsoura = 0x0649;
constexpr char32_t kKasratan = 0x064D;

bool is_arabic_mark(char32_t cp) {
    return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670 || (cp >= 0x06D6 && cp <= 0x06ED);
}

// Last letter of the surface, ignoring trailing diacritics.
std::optional<char32_t> last_letter(const std::vector<char32_t>& cps) {
    for (auto it = cps.rbegin(); it != cps.rend(); ++it) {
        if (is_letter(*it)) return *it;
        if (!is_arabic_mark(*it)) break;
    }
    return std::nullopt;
}

std::string encode(const std::vector<char32_t>& cps) {
    std::string out;
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

// Letters plus any Arabic marks riding on them; mirrors first_token but on
// the raw text so the Taa Marbouta survives for the gender heuristic.
std::optional<std::string> surface_first_word(std::string_view raw) {
    std::string token;
    bool in_token = false;
    for (char32_t cp : decode_utf8(raw)) {
        if (is_letter(cp) || (in_token && is_arabic_mark(cp))) {
            append_utf8(token, cp);
            in_token = true;
        } else if (in_token) {
            break;
        }
    }
    if (token.empty()) return std::nullopt;
    return token;
}

const char* source_name(LexiconEntry::Source s) {
    switch (s) {
        case LexiconEntry::Source::Heuristic: return "heuristic";
        case LexiconEntry::Source::ExceptionList: return "exception";
        default: return "counterpart";
    }
}

LexiconEntry::Source source_from_name(const std::string& s) {
    if (s == "heuristic") return LexiconEntry::Source::Heuristic;
    if (s == "exception") return LexiconEntry::Source::ExceptionList;
    if (s == "counterpart") return LexiconEntry::Source::Counterpart;
    throw std::runtime_error("unknown lexicon source '" + s + "'");
}

}  // namespace

std::set<std::string> ExceptionTables::load_token_file(std::istream& in) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string norm = normalize_text(line);
        if (!norm.empty()) out.insert(norm);
    }
    return out;
}

ExceptionTables ExceptionTables::load_dir(const std::string& dir) {
    auto load_one = [&dir](const char* name) {
        std::ifstream in(dir + "/" + name);
        if (!in) throw std::runtime_error("cannot open exception table: " + dir + "/" + name);
        return load_token_file(in);
    };
    ExceptionTables t;
    t.feminine_no_marker = load_one("feminine_no_marker.txt");
    t.ambiguous = load_one("ambiguous.txt");
    t.masculine_only = load_one("masculine_only.txt");
    t.dual_gender_titles = load_one("dual_gender_titles.txt");
    return t;
}

HeuristicGender heuristic_gender(std::string_view surface, const ExceptionTables& exceptions) {
    if (surface.empty()) throw std::invalid_argument("heuristic_gender: empty token");
    const std::string norm = normalize_text(surface);
    if (exceptions.feminine_no_marker.count(norm)) return HeuristicGender::Feminine;
    if (exceptions.ambiguous.count(norm)) return HeuristicGender::Ambiguous;
    auto cps = decode_utf8(surface);
    if (auto last = last_letter(cps); last && *last == kTaaMarbouta) {
        return HeuristicGender::Feminine;
    }
    return HeuristicGender::Masculine;
}

std::vector<std::string> counterpart_variants(std::string_view surface, LexGender gender) {
    std::vector<char32_t> cps;
    for (char32_t cp : decode_utf8(surface)) {
        if (!is_arabic_mark(cp)) cps.push_back(cp);
    }
    if (cps.empty()) return {};

    if (gender == LexGender::Feminine) {
        if (cps.back() != kTaaMarbouta) return {};
        std::vector<char32_t> stem(cps.begin(), cps.end() - 1);
        if (stem.empty()) return {};
        std::vector<std::string> out;
        out.push_back(encode(stem));
        if (stem.back() == kYaa) {
            // Defective stems admit the Alif Maqsoura and tanween endings.
            std::vector<char32_t> v = stem;
            v.back() = kAlifMaqsoura;
            out.push_back(encode(v));
            v = stem;
            v.pop_back();
            v.push_back(kKasratan);
            out.push_back(encode(v));
        }
        return out;
    }

    std::vector<char32_t> stem = cps;
    if (stem.back() == kAlifMaqsoura) stem.back() = kYaa;
    stem.push_back(kTaaMarbouta);
    return {encode(stem)};
}

void Lexicon::insert(LexiconEntry entry) {
    auto it = by_norm_.find(entry.normalized_form);
    if (it != by_norm_.end()) {
        auto& existing = entries_[it->second];
        for (auto& v : entry.surface_variants) {
            if (std::find(existing.surface_variants.begin(), existing.surface_variants.end(), v) ==
                existing.surface_variants.end()) {
                existing.surface_variants.push_back(std::move(v));
            }
        }
        existing.corpus_count += entry.corpus_count;
        return;
    }
    by_norm_.emplace(entry.normalized_form, entries_.size());
    entries_.push_back(std::move(entry));
}

const LexiconEntry* Lexicon::lookup(std::string_view normalized) const {
    auto it = by_norm_.find(std::string(normalized));
    if (it == by_norm_.end()) return nullptr;
    return &entries_[it->second];
}

void Lexicon::exclude(std::string normalized) {
    exclusions_.insert(std::move(normalized));
}

void Lexicon::sort_entries() {
    std::sort(entries_.begin(), entries_.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        if (a.corpus_count != b.corpus_count) return a.corpus_count > b.corpus_count;
        return a.normalized_form < b.normalized_form;
    });
    by_norm_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        by_norm_.emplace(entries_[i].normalized_form, i);
    }
}

void Lexicon::save(std::ostream& out) const {
    for (const auto& e : entries_) {
        out << e.normalized_form << '\t' << (e.gender == LexGender::Feminine ? 'f' : 'm') << '\t'
            << source_name(e.source) << '\t' << e.corpus_count << '\t';
        for (std::size_t i = 0; i < e.surface_variants.size(); ++i) {
            if (i) out << ',';
            out << e.surface_variants[i];
        }
        out << '\n';
    }
}

Lexicon Lexicon::load(std::istream& in) {
    Lexicon lex;
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
        if (cols.size() != 5) {
            throw std::runtime_error("lexicon line " + std::to_string(line_no) + ": expected 5 columns");
        }
        LexiconEntry e;
        e.normalized_form = cols[0];
        if (cols[1] == "f") {
            e.gender = LexGender::Feminine;
        } else if (cols[1] == "m") {
            e.gender = LexGender::Masculine;
        } else {
            throw std::runtime_error("lexicon line " + std::to_string(line_no) + ": gender must be m or f");
        }
        e.source = source_from_name(cols[2]);
        e.corpus_count = std::stoll(cols[3]);
        std::stringstream vs(cols[4]);
        std::string v;
        while (std::getline(vs, v, ',')) {
            if (!v.empty()) e.surface_variants.push_back(v);
        }
        lex.insert(std::move(e));
    }
    return lex;
}

void Lexicon::save_exclusions(std::ostream& out) const {
    for (const auto& t : exclusions_) {
        out << t << '\n';
    }
}

void Lexicon::load_exclusions(std::istream& in) {
    for (auto& t : ExceptionTables::load_token_file(in)) {
        exclusions_.insert(t);
    }
}

LexiconBuild build_lexicon(const std::vector<UserProfile>& profiles, int min_count,
                           const ExceptionTables& exceptions) {
    if (min_count < 2) {
        throw std::invalid_argument("build_lexicon: min_count must be >= 2");
    }

    struct TokenStats {
        long long total = 0;
        std::map<std::string, long long> surfaces;
    };
    std::map<std::string, TokenStats> stats;

    for (const auto& p : profiles) {
        if (p.description.empty()) continue;
        auto surface = surface_first_word(p.description);
        if (!surface) continue;
        auto norm = first_token(*surface);
        if (!norm) continue;
        auto& s = stats[*norm];
        s.total += 1;
        s.surfaces[*surface] += 1;
    }

    LexiconBuild build;
    for (const auto& t : exceptions.dual_gender_titles) build.lexicon.exclude(t);
    for (const auto& t : exceptions.ambiguous) build.lexicon.exclude(t);

    for (const auto& [norm, s] : stats) {
        // Canonical surface: most frequent, ties to the lexicographically
        // smaller; feminine entries prefer a marker-bearing surface so the
        // canonical form carries the suffix.
        auto pick_surface = [&s](auto&& pred) -> std::string {
            std::string best;
            long long best_count = -1;
            for (const auto& [surf, count] : s.surfaces) {
                if (!pred(surf)) continue;
                if (count > best_count || (count == best_count && surf < best)) {
                    best = surf;
                    best_count = count;
                }
            }
            return best;
        };

        LexiconCandidate cand;
        cand.normalized_form = norm;
        cand.count = s.total;
        cand.canonical_surface = pick_surface([](const std::string&) { return true; });

        HeuristicGender hg = HeuristicGender::Masculine;
        if (exceptions.feminine_no_marker.count(norm)) {
            hg = HeuristicGender::Feminine;
        } else if (exceptions.ambiguous.count(norm)) {
            hg = HeuristicGender::Ambiguous;
        } else {
            bool any_feminine = false;
            for (const auto& [surf, count] : s.surfaces) {
                if (heuristic_gender(surf, exceptions) == HeuristicGender::Feminine) {
                    any_feminine = true;
                    break;
                }
            }
            hg = any_feminine ? HeuristicGender::Feminine : HeuristicGender::Masculine;
        }
        cand.heuristic = hg;

        if (build.lexicon.excluded(norm) || hg == HeuristicGender::Ambiguous) {
            cand.status = LexiconCandidate::Status::Excluded;
            build.lexicon.exclude(norm);
            build.candidates.push_back(std::move(cand));
            continue;
        }
        if (s.total < min_count) {
            cand.status = LexiconCandidate::Status::BelowMinCount;
            build.candidates.push_back(std::move(cand));
            continue;
        }

        LexiconEntry e;
        e.normalized_form = norm;
        e.corpus_count = s.total;
        if (exceptions.feminine_no_marker.count(norm)) {
            e.gender = LexGender::Feminine;
            e.source = LexiconEntry::Source::ExceptionList;
        } else if (hg == HeuristicGender::Feminine) {
            e.gender = LexGender::Feminine;
            e.source = LexiconEntry::Source::Heuristic;
            // Canonical surface must carry the marker.
            std::string marked = pick_surface([&exceptions](const std::string& surf) {
                return heuristic_gender(surf, exceptions) == HeuristicGender::Feminine;
            });
            if (!marked.empty()) cand.canonical_surface = marked;
        } else {
            e.gender = LexGender::Masculine;
            e.source = LexiconEntry::Source::Heuristic;
        }
        // Observed surfaces, most frequent first.
        std::vector<std::pair<std::string, long long>> surfs(s.surfaces.begin(), s.surfaces.end());
        std::sort(surfs.begin(), surfs.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        e.surface_variants.push_back(cand.canonical_surface);
        for (const auto& [surf, count] : surfs) {
            if (surf != cand.canonical_surface && normalize_text(surf) == norm) {
                e.surface_variants.push_back(surf);
            }
        }
        build.lexicon.insert(std::move(e));
        build.candidates.push_back(std::move(cand));
    }

    // Counterpart pass over a snapshot of the observed entries.
    std::vector<LexiconEntry> observed = build.lexicon.entries();
    std::sort(observed.begin(), observed.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        if (a.corpus_count != b.corpus_count) return a.corpus_count > b.corpus_count;
        return a.normalized_form < b.normalized_form;
    });
    for (const auto& e : observed) {
        if (e.source == LexiconEntry::Source::ExceptionList) continue;
        if (e.gender == LexGender::Masculine && exceptions.masculine_only.count(e.normalized_form)) continue;
        const std::string& canonical = e.surface_variants.front();
        for (const auto& variant : counterpart_variants(canonical, e.gender)) {
            auto vnorm = first_token(variant);
            if (!vnorm || build.lexicon.excluded(*vnorm) || build.lexicon.lookup(*vnorm)) continue;
            LexiconEntry c;
            c.normalized_form = *vnorm;
            c.gender = e.gender == LexGender::Feminine ? LexGender::Masculine : LexGender::Feminine;
            c.source = LexiconEntry::Source::Counterpart;
            c.corpus_count = 0;
            // Group sibling variants sharing this normalized form.
            for (const auto& sibling : counterpart_variants(canonical, e.gender)) {
                if (first_token(sibling) == vnorm) c.surface_variants.push_back(sibling);
            }
            build.lexicon.insert(std::move(c));
        }
    }

    build.lexicon.sort_entries();
    std::sort(build.candidates.begin(), build.candidates.end(),
              [](const LexiconCandidate& a, const LexiconCandidate& b) {
                  if (a.count != b.count) return a.count > b.count;
                  return a.normalized_form < b.normalized_form;
              });
    return build;
}

GenderLabel match_description(std::string_view description, const Lexicon& lexicon) {
    auto token = first_token(description);
    if (!token) return GenderLabel::Unknown;
    if (lexicon.excluded(*token)) return GenderLabel::Unknown;
    const LexiconEntry* e = lexicon.lookup(*token);
    if (!e) return GenderLabel::Unknown;
    return e->gender == LexGender::Feminine ? GenderLabel::Female : GenderLabel::Male;
}

}  // namespace tamyiz
