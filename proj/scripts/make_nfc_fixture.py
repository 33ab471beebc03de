#!/usr/bin/env python3
"""Freezes NFC expectations from Python's unicodedata for the C++ tests.

Run from the repository root; writes tests/data/nfc_cases.json.
"""

import json
import unicodedata

CASES = [
    "café",              # e + combining acute -> é
    "Å",                        # angstrom sign -> Å
    "Å",                  # A + ring -> Å
    "ḍ̇",                  # d-dot-above + dot-below (reordering)
    "ḍ̇",                 # already ordered
    "क़",                        # composition exclusion, stays decomposed
    "क़",                  # ka + nukta, must not compose
    "각",            # Hangul jamo -> 각
    "각",                  # LV syllable + T -> LVT
    "q̣̇w",                # mixed marks then starter
    "á̖",                 # acute then low grave (reorder + compose)
    "Na Holanda, a ministra trabalha duas (2) horas. Gostei muito.",
    "é́",                  # é + another acute
    "à̖̀",      # stacked marks
    "ᾀ",            # greek with ypogegrammeni
    "",
]


def main():
    out = [{"input": s, "nfc": unicodedata.normalize("NFC", s)} for s in CASES]
    with open("tests/data/nfc_cases.json", "w", encoding="utf-8") as f:
        json.dump(out, f, ensure_ascii=True, indent=1)
    print(f"nfc_cases.json: {len(out)} cases")


if __name__ == "__main__":
    main()
