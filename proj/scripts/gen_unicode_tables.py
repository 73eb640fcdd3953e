#!/usr/bin/env python3
"""Generates core/src/unicode_tables.cpp.

The C++ normalizer works per code point. For every code point whose
normalized form differs from itself we emit a (code point -> UTF-8 string)
entry; the emitted string is already a fixpoint of the whole pipeline, so
the runtime needs a single table pass. Letter and digit ranges are emitted
for tokenization.

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

ARABIC_DIACRITICS = set(range(0x064B, 0x0653))  # fathatan .. sukun
TATWEEL = 0x0640
ALIF_VARIANTS = {0x0622, 0x0623, 0x0625, 0x0671}  # madda, hamza above/below, wasla
ALIF = "ا"
TAA_MARBOUTA = 0x0629
HAA = "ه"
ALIF_MAQSOURA = 0x0649
YAA = "ي"


def map_char(ch: str) -> str:
    cp = ord(ch)
    if cp in ARABIC_DIACRITICS or cp == TATWEEL:
        return ""
    nk = unicodedata.normalize("NFKC", ch)
    if nk != ch:
        return "".join(map_char(c) for c in nk)
    if cp in ALIF_VARIANTS:
        return ALIF
    if cp == TAA_MARBOUTA:
        return HAA
    if cp == ALIF_MAQSOURA:
        return YAA
    low = ch.lower()
    if low != ch:
        return "".join(map_char(c) for c in low)
    return ch


def fixpoint(ch: str) -> str:
    out = ch
    for _ in range(8):
        nxt = "".join(map_char(c) for c in out)
        if nxt == out:
            return out
        out = nxt
    raise RuntimeError(f"no fixpoint for U+{ord(ch):04X}")


def cpp_utf8_literal(s: str) -> str:
    data = s.encode("utf-8")
    return '"' + "".join(f"\\x{b:02x}" for b in data) + '"'


def collect_ranges(pred):
    ranges = []
    start = None
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = pred(chr(cp))
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, 0x10FFFF))
    return ranges


def main() -> int:
    entries = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)
        mapped = fixpoint(ch)
        if mapped != ch:
            entries.append((cp, mapped))

    letter_ranges = collect_ranges(lambda c: unicodedata.category(c).startswith("L"))
    digit_ranges = collect_ranges(lambda c: unicodedata.category(c) == "Nd")

    out = []
    out.append("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit."
               % unicodedata.unidata_version)
    out.append("")
    out.append('#include "unicode_tables.hpp"')
    out.append("")
    out.append("namespace tamyiz::detail {")
    out.append("")
    out.append("const NormEntry kNormTable[] = {")
    for cp, mapped in entries:
        out.append("    {0x%06X, %s}," % (cp, cpp_utf8_literal(mapped)))
    out.append("};")
    out.append("const std::size_t kNormTableSize = sizeof(kNormTable) / sizeof(kNormTable[0]);")
    out.append("")
    out.append("const CpRange kLetterRanges[] = {")
    for lo, hi in letter_ranges:
        out.append("    {0x%06X, 0x%06X}," % (lo, hi))
    out.append("};")
    out.append("const std::size_t kLetterRangesSize = sizeof(kLetterRanges) / sizeof(kLetterRanges[0]);")
    out.append("")
    out.append("const CpRange kDigitRanges[] = {")
    for lo, hi in digit_ranges:
        out.append("    {0x%06X, 0x%06X}," % (lo, hi))
    out.append("};")
    out.append("const std::size_t kDigitRangesSize = sizeof(kDigitRanges) / sizeof(kDigitRanges[0]);")
    out.append("")
    out.append("}  // namespace tamyiz::detail")
    out.append("")

    with open("core/src/unicode_tables.cpp", "w", encoding="utf-8") as f:
        f.write("\n".join(out))
    sys.stderr.write("entries=%d letter_ranges=%d digit_ranges=%d\n"
                     % (len(entries), len(letter_ranges), len(digit_ranges)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
