// Free-text location to country code resolution.
//
// An offline gazetteer (TSV of alias<TAB>alpha-2) stands in for an online
// geocoder: deterministic, auditable, test-friendly. Output is the closed
// set of the 22 Arab League codes plus OTH (outside the Arab world) and
// UNK (empty or unresolvable).
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tamyiz {

inline constexpr const char* kArabCodes[] = {
    "AE", "BH", "DZ", "DJ", "EG", "IQ", "JO", "KM", "KW", "LB", "LY",
    "MA", "MR", "OM", "PS", "QA", "SA", "SD", "SO", "SY", "TN", "YE",
};

bool is_arab_code(std::string_view code);
bool is_iso_alpha2(std::string_view code);  // full ISO 3166-1 alpha-2 set

class GazetteerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Gazetteer {
public:
    // Rows are alias<TAB>code; aliases are normalized at load. Duplicate
    // consistent rows merge; a conflicting alias or unknown code throws.
    static Gazetteer load(std::istream& in);
    static Gazetteer load_file(const std::string& path);

    void add(std::string_view alias, std::string_view code);  // same validation as load

    std::size_t size() const { return exact_.size(); }

    // Resolution order: whole-string lookup, then longest alias occurring
    // as a substring on token boundaries (ties broken by earliest
    // occurrence). A non-Arab hit maps to OTH; no hit maps to UNK.
    // Empty or whitespace-only input maps to UNK.
    std::string map_location(std::string_view location_raw) const;

private:
    std::unordered_map<std::string, std::string> exact_;
    // Sorted by (code point length desc, alias asc) for longest-match scans.
    mutable std::vector<std::pair<std::string, std::string>> ordered_;
    mutable bool ordered_dirty_ = true;
};

// Optional client interface for an external geocoding service, kept behind
// the same contract as the gazetteer (normalized query in, alpha-2 or
// nothing out). Responses are cached in a TSV file keyed by normalized
// query so repeated runs never re-issue a lookup.
class GeocoderClient {
public:
    using Backend = std::function<std::optional<std::string>(const std::string& normalized_query)>;

    GeocoderClient(Backend backend, std::string cache_path);
    ~GeocoderClient();

    std::optional<std::string> resolve(std::string_view location_raw);

private:
    Backend backend_;
    std::string cache_path_;
    std::unordered_map<std::string, std::string> cache_;  // "" marks a miss
    bool dirty_ = false;
};

}  // namespace tamyiz
