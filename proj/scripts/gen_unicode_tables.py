#!/usr/bin/env python3
"""Regenerates src/unicode_tables.cpp from the Python unicodedata module.

Emits sorted range/pair tables for:
  - general category P* (punctuation) and L*/N* (word characters)
  - 1:1 lowercase mappings (simple case folding)
  - canonical combining classes, full canonical decompositions (NFD),
    and primary composite pairs for NFC

Hangul syllables are intentionally absent from the decomposition and
composition tables; they are handled algorithmically in text.cpp.

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def is_hangul_syllable(cp: int) -> bool:
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def ranges_for(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        if pred(cp):
            if start is None:
                start = cp
        else:
            if start is not None:
                out.append((start, cp - 1))
                start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def gen():
    surrogate_lo, surrogate_hi = 0xD800, 0xDFFF

    def cat(cp):
        if surrogate_lo <= cp <= surrogate_hi:
            return "Cs"
        return unicodedata.category(chr(cp))

    punct_ranges = ranges_for(lambda cp: cat(cp).startswith("P"))
    word_ranges = ranges_for(lambda cp: cat(cp)[0] in ("L", "N"))

    fold_pairs = []
    for cp in range(MAX_CP):
        if surrogate_lo <= cp <= surrogate_hi:
            continue
        low = chr(cp).lower()
        if len(low) == 1 and ord(low) != cp:
            fold_pairs.append((cp, ord(low)))

    ccc_pairs = []
    for cp in range(MAX_CP):
        if surrogate_lo <= cp <= surrogate_hi:
            continue
        c = unicodedata.combining(chr(cp))
        if c:
            ccc_pairs.append((cp, c))

    # Full canonical decomposition (NFD of the single code point).
    decomp_entries = []  # (cp, offset, len)
    decomp_pool = []
    for cp in range(MAX_CP):
        if surrogate_lo <= cp <= surrogate_hi or is_hangul_syllable(cp):
            continue
        nfd = unicodedata.normalize("NFD", chr(cp))
        if len(nfd) == 1 and ord(nfd) == cp:
            continue
        cps = [ord(ch) for ch in nfd]
        decomp_entries.append((cp, len(decomp_pool), len(cps)))
        decomp_pool.extend(cps)

    # Primary composites: first-level canonical pairs that survive an
    # NFD -> NFC round trip (i.e. not in the composition exclusions).
    comp_triples = []
    for cp in range(MAX_CP):
        if surrogate_lo <= cp <= surrogate_hi or is_hangul_syllable(cp):
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = d.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        if unicodedata.normalize("NFC", unicodedata.normalize("NFD", chr(cp))) == chr(cp):
            comp_triples.append((a, b, cp))
    comp_triples.sort()

    def fmt_rows(rows, per_line, fmt_one):
        lines = []
        for i in range(0, len(rows), per_line):
            lines.append("    " + " ".join(fmt_one(r) for r in rows[i : i + per_line]))
        return "\n".join(lines)

    with open("src/unicode_tables.cpp", "w", encoding="utf-8") as f:
        f.write(
            "// Generated by scripts/gen_unicode_tables.py from Python unicodedata\n"
            f"// (UCD {unicodedata.unidata_version}). Do not edit by hand.\n"
            '#include "unicode_tables.hpp"\n\n'
            "namespace claimpipe::uni {\n\n"
        )
        f.write(f"const CpRange kPunctRanges[] = {{\n{fmt_rows(punct_ranges, 6, lambda r: f'{{{r[0]:#x},{r[1]:#x}}},')}\n}};\n")
        f.write(f"const std::size_t kPunctRangeCount = {len(punct_ranges)};\n\n")
        f.write(f"const CpRange kWordRanges[] = {{\n{fmt_rows(word_ranges, 6, lambda r: f'{{{r[0]:#x},{r[1]:#x}}},')}\n}};\n")
        f.write(f"const std::size_t kWordRangeCount = {len(word_ranges)};\n\n")
        f.write(f"const CpPair kFoldPairs[] = {{\n{fmt_rows(fold_pairs, 6, lambda r: f'{{{r[0]:#x},{r[1]:#x}}},')}\n}};\n")
        f.write(f"const std::size_t kFoldPairCount = {len(fold_pairs)};\n\n")
        f.write(f"const CccEntry kCccEntries[] = {{\n{fmt_rows(ccc_pairs, 6, lambda r: f'{{{r[0]:#x},{r[1]}}},')}\n}};\n")
        f.write(f"const std::size_t kCccEntryCount = {len(ccc_pairs)};\n\n")
        f.write(f"const DecompEntry kDecompEntries[] = {{\n{fmt_rows(decomp_entries, 5, lambda r: f'{{{r[0]:#x},{r[1]},{r[2]}}},')}\n}};\n")
        f.write(f"const std::size_t kDecompEntryCount = {len(decomp_entries)};\n\n")
        f.write(f"const char32_t kDecompPool[] = {{\n{fmt_rows(decomp_pool, 10, lambda c: f'{c:#x},')}\n}};\n\n")
        f.write(f"const CompTriple kCompTriples[] = {{\n{fmt_rows(comp_triples, 4, lambda r: f'{{{r[0]:#x},{r[1]:#x},{r[2]:#x}}},')}\n}};\n")
        f.write(f"const std::size_t kCompTripleCount = {len(comp_triples)};\n\n")
        f.write("}  // namespace claimpipe::uni\n")

    print(
        f"punct={len(punct_ranges)} word={len(word_ranges)} fold={len(fold_pairs)} "
        f"ccc={len(ccc_pairs)} decomp={len(decomp_entries)} pool={len(decomp_pool)} comp={len(comp_triples)}"
    )


if __name__ == "__main__":
    sys.exit(gen())
