// Gender-marker word list built from profile-description first words.
//
// Arabic nouns and adjectives usually mark the feminine with a trailing
// Taa Marbouta; the masculine is the unmarked form. The lexicon collects
// first description words, assigns gender with that suffix rule plus
// editable exception tables, and generates opposite-gender counterparts
// (with spelling variants) for coverage. Dual-gender titles and ambiguous
// words live on a separate exclusion list and never yield a label.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamyiz/dataset.hpp"

namespace tamyiz {

enum class LexGender { Masculine, Feminine };
enum class HeuristicGender { Masculine, Feminine, Ambiguous };

struct LexiconEntry {
    std::string normalized_form;
    std::vector<std::string> surface_variants;
    LexGender gender = LexGender::Masculine;
    enum class Source { Heuristic, ExceptionList, Counterpart } source = Source::Heuristic;
    long long corpus_count = 0;
};

// One token per line, '#' comments. Tokens are normalized at load.
struct ExceptionTables {
    std::set<std::string> feminine_no_marker;  // feminine without the suffix
    std::set<std::string> ambiguous;           // feminine-marked but dual-gender
    std::set<std::string> masculine_only;      // no feminine counterpart exists
    std::set<std::string> dual_gender_titles;  // titles used for both genders

    static ExceptionTables load_dir(const std::string& dir);
    static std::set<std::string> load_token_file(std::istream& in);
};

class Lexicon {
public:
    void insert(LexiconEntry entry);
    const LexiconEntry* lookup(std::string_view normalized) const;
    bool excluded(std::string_view normalized) const { return exclusions_.count(std::string(normalized)) > 0; }
    void exclude(std::string normalized);

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    const std::set<std::string>& exclusions() const { return exclusions_; }
    std::size_t size() const { return entries_.size(); }

    // TSV: normalized_form, gender (m|f), source, count, variants (comma-joined).
    void save(std::ostream& out) const;
    static Lexicon load(std::istream& in);
    void save_exclusions(std::ostream& out) const;
    void load_exclusions(std::istream& in);

    // Canonical order: corpus_count desc, normalized_form asc.
    void sort_entries();

private:
    std::vector<LexiconEntry> entries_;
    std::map<std::string, std::size_t> by_norm_;
    std::set<std::string> exclusions_;
};

// Gender of a single token from its surface form: the exception tables
// first, then Feminine iff the surface ends in Taa Marbouta. The surface
// matters because normalization folds the marker away (ة -> ه).
HeuristicGender heuristic_gender(std::string_view surface, const ExceptionTables& exceptions);

// Opposite-gender surface forms. Feminine -> masculine strips the suffix
// and adds the ending variants (lawyer: muhami, muhama, muhamin); masculine
// -> feminine appends the suffix plus its loose-Haa spelling.
std::vector<std::string> counterpart_variants(std::string_view surface, LexGender gender);

struct LexiconCandidate {
    std::string normalized_form;
    std::string canonical_surface;
    long long count = 0;
    HeuristicGender heuristic = HeuristicGender::Masculine;
    enum class Status { Kept, BelowMinCount, Excluded } status = Status::Kept;
};

struct LexiconBuild {
    Lexicon lexicon;
    std::vector<LexiconCandidate> candidates;
};

// min_count must be >= 2: words seen once are noise by construction.
LexiconBuild build_lexicon(const std::vector<UserProfile>& profiles, int min_count,
                           const ExceptionTables& exceptions);

// First description word against the lexicon. Excluded or unknown first
// words (and empty descriptions) give Unknown.
GenderLabel match_description(std::string_view description, const Lexicon& lexicon);

}  // namespace tamyiz
