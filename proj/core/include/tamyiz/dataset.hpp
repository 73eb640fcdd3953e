// Profile records: one JSON object per line, fixed field names.
//
// Schema (field names are normative and case sensitive):
//   user_id, display_name, screen_name, description, location_raw,
//   created_at (ISO-8601 date), followers_count, friends_count, verified,
//   tweets (array of strings), friend_names (array of strings, <= 100),
//   gold_gender ("m" | "f" | "?"), gold_country (Arab alpha-2 | "OTH" | "?").
//
// Missing optional fields default to empty / zero / unknown. user_id is
// required and must be unique within a dataset.
#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamyiz {

enum class GenderLabel { Male, Female, Unknown };

const char* to_string(GenderLabel g);     // "m" / "f" / "?"
GenderLabel gender_from_string(std::string_view s);

struct UserProfile {
    std::string user_id;
    std::string display_name;
    std::string screen_name;
    std::string description;
    std::string location_raw;
    std::string created_at;  // "YYYY-MM-DD" or empty when unknown
    long long followers_count = 0;
    long long friends_count = 0;
    bool verified = false;
    std::vector<std::string> tweets;
    std::vector<std::string> friend_names;  // at most 100 entries
    GenderLabel gold_gender = GenderLabel::Unknown;
    std::string gold_country = "?";  // wire form; "?" means unknown

    std::optional<int> joined_year() const;

    // display_name with screen_name as fallback; the "Usernames" feature.
    const std::string& username() const {
        return display_name.empty() ? screen_name : display_name;
    }

    bool operator==(const UserProfile&) const = default;
};

struct ParseDiagnostic {
    std::size_t line = 0;
    std::string message;
};

struct ParseResult {
    std::vector<UserProfile> profiles;
    std::vector<ParseDiagnostic> diagnostics;
    std::size_t excluded = 0;  // records dropped by the exclusion list
};

struct ParseOptions {
    // Account filter applied at ingest: user_ids listed here are dropped.
    const std::set<std::string>* exclude_ids = nullptr;
};

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses line-delimited records. Malformed lines are reported with their
// line number and skipped; a duplicate user_id keeps the first occurrence.
// Non-UTF-8 input raises DecodeError.
ParseResult parse_profiles(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_profiles_string(std::string_view data, const ParseOptions& opts = {});

// One line, keys in sorted order, no trailing newline.
std::string serialize_profile(const UserProfile& p);
void write_profiles(std::ostream& out, const std::vector<UserProfile>& profiles);

// Replaces user_id with a fresh sequential ID and screen_name with a
// pseudonym keyed by `secret`. Everything else is preserved; the mapping
// is injective and deterministic for a fixed secret and input.
std::vector<UserProfile> anonymize(const std::vector<UserProfile>& profiles,
                                   std::string_view secret);

// Reads one user_id per line; '#' starts a comment.
std::set<std::string> load_id_list(std::istream& in);

}  // namespace tamyiz
