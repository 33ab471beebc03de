// Declarations for the generated Unicode property tables.
// See scripts/gen_unicode_tables.py.
#pragma once

#include <cstddef>
#include <cstdint>

namespace claimpipe::uni {

struct CpRange {
    char32_t lo;
    char32_t hi;
};

struct CpPair {
    char32_t from;
    char32_t to;
};

struct CccEntry {
    char32_t cp;
    std::uint8_t ccc;
};

struct DecompEntry {
    char32_t cp;
    std::uint32_t offset;
    std::uint32_t len;
};

struct CompTriple {
    char32_t first;
    char32_t second;
    char32_t composite;
};

extern const CpRange kPunctRanges[];
extern const std::size_t kPunctRangeCount;

extern const CpRange kWordRanges[];
extern const std::size_t kWordRangeCount;

extern const CpPair kFoldPairs[];
extern const std::size_t kFoldPairCount;

extern const CccEntry kCccEntries[];
extern const std::size_t kCccEntryCount;

extern const DecompEntry kDecompEntries[];
extern const std::size_t kDecompEntryCount;

extern const char32_t kDecompPool[];

extern const CompTriple kCompTriples[];
extern const std::size_t kCompTripleCount;

}  // namespace claimpipe::uni
