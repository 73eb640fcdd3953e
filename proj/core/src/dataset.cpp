#include "tamyiz/dataset.hpp"

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tamyiz/geo.hpp"
#include "tamyiz/normalize.hpp"

namespace tamyiz {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxFriends = 100;

bool valid_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string get_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return {};
    if (!it->is_string()) throw std::runtime_error(std::string(key) + " must be a string");
    return it->get<std::string>();
}

long long get_count(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return 0;
    if (!it->is_number_integer()) throw std::runtime_error(std::string(key) + " must be an integer");
    long long v = it->get<long long>();
    if (v < 0) throw std::runtime_error(std::string(key) + " must be non-negative");
    return v;
}

std::vector<std::string> get_string_list(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return {};
    if (!it->is_array()) throw std::runtime_error(std::string(key) + " must be an array");
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_string()) throw std::runtime_error(std::string(key) + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

UserProfile profile_from_json(const json& j, std::vector<std::string>& warnings) {
    if (!j.is_object()) throw std::runtime_error("record is not an object");
    UserProfile p;
    p.user_id = get_string(j, "user_id");
    if (p.user_id.empty()) throw std::runtime_error("user_id is required");
    p.display_name = get_string(j, "display_name");
    p.screen_name = get_string(j, "screen_name");
    p.description = get_string(j, "description");
    p.location_raw = get_string(j, "location_raw");
    p.created_at = get_string(j, "created_at");
    if (!p.created_at.empty() && !valid_date(p.created_at)) {
        throw std::runtime_error("created_at must be an ISO-8601 date");
    }
    p.followers_count = get_count(j, "followers_count");
    p.friends_count = get_count(j, "friends_count");
    if (auto it = j.find("verified"); it != j.end()) {
        if (!it->is_boolean()) throw std::runtime_error("verified must be a boolean");
        p.verified = it->get<bool>();
    }
    p.tweets = get_string_list(j, "tweets");
    p.friend_names = get_string_list(j, "friend_names");
    if (p.friend_names.size() > kMaxFriends) {
        warnings.push_back("friend_names truncated to 100 entries");
        p.friend_names.resize(kMaxFriends);
    }
    if (auto it = j.find("gold_gender"); it != j.end()) {
        if (!it->is_string()) throw std::runtime_error("gold_gender must be a string");
        p.gold_gender = gender_from_string(it->get<std::string>());
    }
    if (auto it = j.find("gold_country"); it != j.end()) {
        if (!it->is_string()) throw std::runtime_error("gold_country must be a string");
        std::string c = it->get<std::string>();
        if (c != "?" && c != "OTH" && !is_arab_code(c)) {
            throw std::runtime_error("gold_country '" + c + "' is not an Arab alpha-2 code, OTH or ?");
        }
        p.gold_country = c;
    }
    return p;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

const char* to_string(GenderLabel g) {
    switch (g) {
        case GenderLabel::Male: return "m";
        case GenderLabel::Female: return "f";
        default: return "?";
    }
}

GenderLabel gender_from_string(std::string_view s) {
    if (s == "m") return GenderLabel::Male;
    if (s == "f") return GenderLabel::Female;
    if (s == "?") return GenderLabel::Unknown;
    throw std::runtime_error("gold_gender must be one of m, f, ?");
}

std::optional<int> UserProfile::joined_year() const {
    if (created_at.size() < 4) return std::nullopt;
    return (created_at[0] - '0') * 1000 + (created_at[1] - '0') * 100 +
           (created_at[2] - '0') * 10 + (created_at[3] - '0');
}

ParseResult parse_profiles(std::istream& in, const ParseOptions& opts) {
    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!utf8_valid(line)) {
            throw DecodeError("line " + std::to_string(line_no) + ": input is not valid UTF-8");
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            result.diagnostics.push_back({line_no, std::string("invalid record: ") + e.what()});
            continue;
        }
        std::vector<std::string> warnings;
        UserProfile p;
        try {
            p = profile_from_json(j, warnings);
        } catch (const std::exception& e) {
            result.diagnostics.push_back({line_no, std::string("invalid record: ") + e.what()});
            continue;
        }
        for (const auto& w : warnings) {
            result.diagnostics.push_back({line_no, w});
        }
        if (!seen_ids.insert(p.user_id).second) {
            result.diagnostics.push_back({line_no, "duplicate user_id '" + p.user_id + "', first occurrence kept"});
            continue;
        }
        if (opts.exclude_ids && opts.exclude_ids->count(p.user_id)) {
            ++result.excluded;
            continue;
        }
        result.profiles.push_back(std::move(p));
    }
    return result;
}

ParseResult parse_profiles_string(std::string_view data, const ParseOptions& opts) {
    std::istringstream in{std::string(data)};
    return parse_profiles(in, opts);
}

std::string serialize_profile(const UserProfile& p) {
    json j;
    j["user_id"] = p.user_id;
    j["display_name"] = p.display_name;
    j["screen_name"] = p.screen_name;
    j["description"] = p.description;
    j["location_raw"] = p.location_raw;
    j["created_at"] = p.created_at;
    j["followers_count"] = p.followers_count;
    j["friends_count"] = p.friends_count;
    j["verified"] = p.verified;
    j["tweets"] = p.tweets;
    j["friend_names"] = p.friend_names;
    j["gold_gender"] = to_string(p.gold_gender);
    j["gold_country"] = p.gold_country;
    return j.dump();
}

void write_profiles(std::ostream& out, const std::vector<UserProfile>& profiles) {
    for (const auto& p : profiles) {
        out << serialize_profile(p) << '\n';
    }
}

std::vector<UserProfile> anonymize(const std::vector<UserProfile>& profiles,
                                   std::string_view secret) {
    std::vector<UserProfile> out;
    out.reserve(profiles.size());
    const std::uint64_t key = fnv1a64(secret, 0);
    std::unordered_map<std::string, int> used;
    std::size_t seq = 0;
    for (const auto& p : profiles) {
        UserProfile a = p;
        ++seq;
        char id[24];
        std::snprintf(id, sizeof(id), "u%06zu", seq);
        a.user_id = id;
        std::uint64_t h = fnv1a64(p.screen_name, key);
        char pseudo[24];
        std::snprintf(pseudo, sizeof(pseudo), "p%016llx", static_cast<unsigned long long>(h));
        std::string name = pseudo;
        // Distinct inputs must map to distinct pseudonyms.
        int& n = used[name];
        if (++n > 1) name += "_" + std::to_string(n);
        a.screen_name = name;
        out.push_back(std::move(a));
    }
    return out;
}

std::set<std::string> load_id_list(std::istream& in) {
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        if (start < line.size()) ids.insert(line.substr(start));
    }
    return ids;
}

}  // namespace tamyiz
