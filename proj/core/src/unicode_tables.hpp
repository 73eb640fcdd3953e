// Lookup tables produced by scripts/gen_unicode_tables.py.
#pragma once

#include <cstddef>
#include <cstdint>

namespace tamyiz::detail {

struct NormEntry {
    char32_t cp;
    const char* replacement;  // UTF-8, already a normalization fixpoint
};

struct CpRange {
    char32_t lo;
    char32_t hi;
};

extern const NormEntry kNormTable[];
extern const std::size_t kNormTableSize;

extern const CpRange kLetterRanges[];
extern const std::size_t kLetterRangesSize;

extern const CpRange kDigitRanges[];
extern const std::size_t kDigitRangesSize;

}  // namespace tamyiz::detail
