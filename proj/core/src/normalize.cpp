#include "tamyiz/normalize.hpp"

#include <algorithm>
#include <cstdint>

#include "unicode_tables.hpp"

namespace tamyiz {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in_ranges(const detail::CpRange* ranges, std::size_t n, char32_t cp) {
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (cp < ranges[mid].lo) {
            hi = mid;
        } else if (cp > ranges[mid].hi) {
            lo = mid + 1;
        } else {
            return true;
        }
    }
    return false;
}

const char* norm_lookup(char32_t cp) {
    std::size_t lo = 0, hi = detail::kNormTableSize;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (detail::kNormTable[mid].cp < cp) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < detail::kNormTableSize && detail::kNormTable[lo].cp == cp) {
        return detail::kNormTable[lo].replacement;
    }
    return nullptr;
}

}  // namespace

bool is_letter(char32_t cp) {
    return in_ranges(detail::kLetterRanges, detail::kLetterRangesSize, cp);
}

bool is_digit(char32_t cp) {
    return in_ranges(detail::kDigitRanges, detail::kDigitRangesSize, cp);
}

bool is_space(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::vector<char32_t> decode_utf8(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const std::size_t n = text.size();
    while (i < n) {
        std::uint8_t b = s[i];
        if (b < 0x80) {
            out.push_back(b);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > n) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        char32_t acc = cp;
        for (int k = 1; k < len; ++k) {
            std::uint8_t c = s[i + k];
            if ((c & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            acc = (acc << 6) | (c & 0x3F);
        }
        if (!ok) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        // Overlong forms, surrogates and out-of-range values are malformed.
        static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (acc < kMin[len] || acc > 0x10FFFF || (acc >= 0xD800 && acc <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(acc);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool utf8_valid(std::string_view text) {
    std::size_t i = 0;
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const std::size_t n = text.size();
    while (i < n) {
        std::uint8_t b = s[i];
        if (b < 0x80) {
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((b & 0xE0) == 0xC0) {
            len = 2;
            cp = b & 0x1F;
        } else if ((b & 0xF0) == 0xE0) {
            len = 3;
            cp = b & 0x0F;
        } else if ((b & 0xF8) == 0xF0) {
            len = 4;
            cp = b & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (int k = 1; k < len; ++k) {
            std::uint8_t c = s[i + k];
            if ((c & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (c & 0x3F);
        }
        static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

std::string normalize_text(std::string_view text) {
    std::string mapped;
    mapped.reserve(text.size());
    for (char32_t cp : decode_utf8(text)) {
        if (const char* repl = norm_lookup(cp)) {
            mapped.append(repl);
        } else {
            append_utf8(mapped, cp);
        }
    }
    // Collapse whitespace runs and trim.
    std::string out;
    out.reserve(mapped.size());
    bool pending_space = false;
    for (char32_t cp : decode_utf8(mapped)) {
        if (is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, cp);
    }
    return out;
}

std::optional<std::string> first_token(std::string_view description) {
    const std::string norm = normalize_text(description);
    std::string token;
    for (char32_t cp : decode_utf8(norm)) {
        if (is_letter(cp)) {
            append_utf8(token, cp);
        } else if (!token.empty()) {
            break;
        }
    }
    if (token.empty()) return std::nullopt;
    return token;
}

}  // namespace tamyiz
