#include "tamyiz/geo.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "tamyiz/normalize.hpp"

namespace tamyiz {
namespace {

// ISO 3166-1 alpha-2, officially assigned.
const std::set<std::string_view> kIsoAlpha2 = {
    "AD","AE","AF","AG","AI","AL","AM","AO","AQ","AR","AS","AT","AU","AW","AX","AZ",
    "BA","BB","BD","BE","BF","BG","BH","BI","BJ","BL","BM","BN","BO","BQ","BR","BS",
    "BT","BV","BW","BY","BZ","CA","CC","CD","CF","CG","CH","CI","CK","CL","CM","CN",
    "CO","CR","CU","CV","CW","CX","CY","CZ","DE","DJ","DK","DM","DO","DZ","EC","EE",
    "EG","EH","ER","ES","ET","FI","FJ","FK","FM","FO","FR","GA","GB","GD","GE","GF",
    "GG","GH","GI","GL","GM","GN","GP","GQ","GR","GS","GT","GU","GW","GY","HK","HM",
    "HN","HR","HT","HU","ID","IE","IL","IM","IN","IO","IQ","IR","IS","IT","JE","JM",
    "JO","JP","KE","KG","KH","KI","KM","KN","KP","KR","KW","KY","KZ","LA","LB","LC",
    "LI","LK","LR","LS","LT","LU","LV","LY","MA","MC","MD","ME","MF","MG","MH","MK",
    "ML","MM","MN","MO","MP","MQ","MR","MS","MT","MU","MV","MW","MX","MY","MZ","NA",
    "NC","NE","NF","NG","NI","NL","NO","NP","NR","NU","NZ","OM","PA","PE","PF","PG",
    "PH","PK","PL","PM","PN","PR","PS","PT","PW","PY","QA","RE","RO","RS","RU","RW",
    "SA","SB","SC","SD","SE","SG","SH","SI","SJ","SK","SL","SM","SN","SO","SR","SS",
    "ST","SV","SX","SY","SZ","TC","TD","TF","TG","TH","TJ","TK","TL","TM","TN","TO",
    "TR","TT","TV","TW","TZ","UA","UG","UM","US","UY","UZ","VA","VC","VE","VG","VI",
    "VN","VU","WF","WS","YE","YT","ZA","ZM","ZW",
};

std::size_t cp_length(std::string_view utf8) {
    std::size_t n = 0;
    for (unsigned char c : utf8) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

bool boundary_char(char32_t cp) {
    return !is_letter(cp) && !is_digit(cp);
}

char32_t cp_before(std::string_view s, std::size_t pos) {
    // pos is a code point boundary > 0.
    std::size_t i = pos;
    do {
        --i;
    } while (i > 0 && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80);
    auto cps = decode_utf8(s.substr(i, pos - i));
    return cps.empty() ? U' ' : cps.front();
}

char32_t cp_at(std::string_view s, std::size_t pos) {
    std::size_t end = pos + 1;
    while (end < s.size() && (static_cast<unsigned char>(s[end]) & 0xC0) == 0x80) ++end;
    auto cps = decode_utf8(s.substr(pos, end - pos));
    return cps.empty() ? U' ' : cps.front();
}

}  // namespace

bool is_arab_code(std::string_view code) {
    for (const char* c : kArabCodes) {
        if (code == c) return true;
    }
    return false;
}

bool is_iso_alpha2(std::string_view code) {
    return kIsoAlpha2.count(code) > 0;
}

Gazetteer Gazetteer::load(std::istream& in) {
    Gazetteer g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw GazetteerError("line " + std::to_string(line_no) + ": expected alias<TAB>code");
        }
        g.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return g;
}

Gazetteer Gazetteer::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GazetteerError("cannot open gazetteer file: " + path);
    return load(in);
}

void Gazetteer::add(std::string_view alias, std::string_view code) {
    std::string norm = normalize_text(alias);
    if (norm.empty()) {
        throw GazetteerError("alias '" + std::string(alias) + "' is empty after normalization");
    }
    std::string c(code);
    if (c != "OTH" && !is_iso_alpha2(c)) {
        throw GazetteerError("unknown country code '" + c + "' for alias '" + norm + "'");
    }
    auto [it, inserted] = exact_.emplace(norm, c);
    if (!inserted && it->second != c) {
        throw GazetteerError("conflicting entries for alias '" + norm + "': " +
                             it->second + " vs " + c);
    }
    ordered_dirty_ = true;
}

std::string Gazetteer::map_location(std::string_view location_raw) const {
    const std::string query = normalize_text(location_raw);
    if (query.empty()) return "UNK";

    auto to_result = [](const std::string& code) -> std::string {
        if (code == "OTH" || !is_arab_code(code)) return "OTH";
        return code;
    };

    if (auto it = exact_.find(query); it != exact_.end()) {
        return to_result(it->second);
    }

    if (ordered_dirty_) {
        ordered_.assign(exact_.begin(), exact_.end());
        std::sort(ordered_.begin(), ordered_.end(), [](const auto& a, const auto& b) {
            std::size_t la = cp_length(a.first), lb = cp_length(b.first);
            if (la != lb) return la > lb;
            return a.first < b.first;
        });
        ordered_dirty_ = false;
    }

    // Longest alias wins; among equally long aliases the earliest
    // occurrence in the query wins.
    const std::string* best_code = nullptr;
    std::size_t best_len = 0, best_pos = 0;
    for (const auto& [alias, code] : ordered_) {
        std::size_t len = cp_length(alias);
        if (best_code && len < best_len) break;
        std::size_t pos = 0;
        while ((pos = query.find(alias, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || boundary_char(cp_before(query, pos));
            std::size_t end = pos + alias.size();
            bool right_ok = end == query.size() || boundary_char(cp_at(query, end));
            if (left_ok && right_ok) break;
            ++pos;
        }
        if (pos == std::string::npos) continue;
        if (!best_code || len > best_len || (len == best_len && pos < best_pos)) {
            best_code = &code;
            best_len = len;
            best_pos = pos;
        }
    }
    if (!best_code) return "UNK";
    return to_result(*best_code);
}

GeocoderClient::GeocoderClient(Backend backend, std::string cache_path)
    : backend_(std::move(backend)), cache_path_(std::move(cache_path)) {
    std::ifstream in(cache_path_);
    std::string line;
    while (std::getline(in, line)) {
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        cache_[line.substr(0, tab)] = line.substr(tab + 1);
    }
}

GeocoderClient::~GeocoderClient() {
    if (!dirty_) return;
    std::ofstream out(cache_path_, std::ios::trunc);
    std::vector<std::pair<std::string, std::string>> rows(cache_.begin(), cache_.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [k, v] : rows) {
        out << k << '\t' << v << '\n';
    }
}

std::optional<std::string> GeocoderClient::resolve(std::string_view location_raw) {
    const std::string query = normalize_text(location_raw);
    if (query.empty()) return std::nullopt;
    if (auto it = cache_.find(query); it != cache_.end()) {
        if (it->second.empty()) return std::nullopt;
        return it->second;
    }
    std::optional<std::string> resolved = backend_ ? backend_(query) : std::nullopt;
    cache_[query] = resolved.value_or("");
    dirty_ = true;
    return resolved;
}

}  // namespace tamyiz
