// Arabic-aware text canonicalization.
//
// All lexicon matching and featurization in this toolkit runs on normalized
// text so that orthographic variants (diacritics, tatweel, Alif shapes,
// Taa Marbouta, Alif Maqsoura, presentation forms, decorated Latin) collapse
// to one spelling. Latin letters are lower-cased, whitespace runs collapse
// to a single space, and the result is trimmed.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tamyiz {

// Idempotent: normalize_text(normalize_text(x)) == normalize_text(x).
// Invalid UTF-8 bytes are replaced with U+FFFD before processing.
std::string normalize_text(std::string_view text);

// First maximal run of letters in normalize_text(description), skipping
// leading punctuation, digits and symbols. Empty input or input without
// letters yields nullopt. The returned token is already normalized.
std::optional<std::string> first_token(std::string_view description);

// Code-point helpers shared by tokenizers.
bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);

// UTF-8 plumbing. decode_utf8 substitutes U+FFFD for malformed sequences;
// utf8_valid reports whether the input is well-formed UTF-8.
std::vector<char32_t> decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);
bool utf8_valid(std::string_view text);

}  // namespace tamyiz
