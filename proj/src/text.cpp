#include "claimpipe/text.hpp"

#include <algorithm>

#include "unicode_tables.hpp"

namespace claimpipe::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable composition constants (UAX #15 §3.12).
constexpr char32_t kSBase = 0xAC00;
constexpr char32_t kLBase = 0x1100;
constexpr char32_t kVBase = 0x1161;
constexpr char32_t kTBase = 0x11A7;
constexpr int kLCount = 19;
constexpr int kVCount = 21;
constexpr int kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

bool in_ranges(const uni::CpRange* ranges, std::size_t n, char32_t cp) {
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

int combining_class(char32_t cp) {
    std::size_t lo = 0, hi = uni::kCccEntryCount;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (uni::kCccEntries[mid].cp < cp) {
            lo = mid + 1;
        } else if (uni::kCccEntries[mid].cp > cp) {
            hi = mid;
        } else {
            return uni::kCccEntries[mid].ccc;
        }
    }
    return 0;
}

void decompose_cp(char32_t cp, std::u32string& out) {
    if (cp >= kSBase && cp < kSBase + static_cast<char32_t>(kSCount)) {
        int s = static_cast<int>(cp - kSBase);
        out.push_back(kLBase + s / kNCount);
        out.push_back(kVBase + (s % kNCount) / kTCount);
        if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
        return;
    }
    std::size_t lo = 0, hi = uni::kDecompEntryCount;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (uni::kDecompEntries[mid].cp < cp) {
            lo = mid + 1;
        } else if (uni::kDecompEntries[mid].cp > cp) {
            hi = mid;
        } else {
            const auto& e = uni::kDecompEntries[mid];
            for (std::uint32_t i = 0; i < e.len; ++i) out.push_back(uni::kDecompPool[e.offset + i]);
            return;
        }
    }
    out.push_back(cp);
}

char32_t compose_pair(char32_t a, char32_t b) {
    if (a >= kLBase && a < kLBase + static_cast<char32_t>(kLCount) && b >= kVBase &&
        b < kVBase + static_cast<char32_t>(kVCount)) {
        return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    }
    if (a >= kSBase && a < kSBase + static_cast<char32_t>(kSCount) && (a - kSBase) % kTCount == 0 &&
        b > kTBase && b < kTBase + static_cast<char32_t>(kTCount)) {
        return a + (b - kTBase);
    }
    std::size_t lo = 0, hi = uni::kCompTripleCount;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        const auto& t = uni::kCompTriples[mid];
        if (t.first < a || (t.first == a && t.second < b)) {
            lo = mid + 1;
        } else if (t.first > a || (t.first == a && t.second > b)) {
            hi = mid;
        } else {
            return t.composite;
        }
    }
    return 0;
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        unsigned char b0 = static_cast<unsigned char>(s[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        char32_t min_cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
            min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
            min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
            min_cp = 0x10000;
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
        for (int k = 1; k < len; ++k) {
            unsigned char bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (bk & 0x3F);
        }
        if (!ok || cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
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
    return out;
}

bool is_whitespace(char32_t cp) {
    // Unicode White_Space property.
    switch (cp) {
        case 0x09:
        case 0x0A:
        case 0x0B:
        case 0x0C:
        case 0x0D:
        case 0x20:
        case 0x85:
        case 0xA0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punctuation(char32_t cp) { return in_ranges(uni::kPunctRanges, uni::kPunctRangeCount, cp); }

bool is_word_char(char32_t cp) {
    return cp == U'_' || in_ranges(uni::kWordRanges, uni::kWordRangeCount, cp);
}

char32_t fold_case(char32_t cp) {
    std::size_t lo = 0, hi = uni::kFoldPairCount;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (uni::kFoldPairs[mid].from < cp) {
            lo = mid + 1;
        } else if (uni::kFoldPairs[mid].from > cp) {
            hi = mid;
        } else {
            return uni::kFoldPairs[mid].to;
        }
    }
    return cp;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::u32string cps = decode_utf8(s);
    std::u32string cur;
    for (char32_t cp : cps) {
        if (is_whitespace(cp)) {
            if (!cur.empty()) {
                out.push_back(encode_utf8(cur));
                cur.clear();
            }
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(encode_utf8(cur));
    return out;
}

std::size_t count_words(std::string_view s) {
    std::u32string cps = decode_utf8(s);
    std::size_t n = 0;
    bool in_word = false;
    for (char32_t cp : cps) {
        if (is_whitespace(cp)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++n;
        }
    }
    return n;
}

std::string strip_punctuation(std::string_view s) {
    std::u32string cps = decode_utf8(s);
    std::u32string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!is_punctuation(cp)) out.push_back(cp);
    }
    return encode_utf8(out);
}

std::string fold_case_utf8(std::string_view s) {
    std::u32string cps = decode_utf8(s);
    for (char32_t& cp : cps) cp = fold_case(cp);
    return encode_utf8(cps);
}

std::string collapse_whitespace(std::string_view s) {
    std::u32string cps = decode_utf8(s);
    std::u32string out;
    bool pending_space = false;
    for (char32_t cp : cps) {
        if (is_whitespace(cp)) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) {
                out.push_back(U' ');
                pending_space = false;
            }
            out.push_back(cp);
        }
    }
    return encode_utf8(out);
}

std::string rtrim(std::string_view s) {
    std::u32string cps = decode_utf8(s);
    std::size_t end = cps.size();
    while (end > 0 && is_whitespace(cps[end - 1])) --end;
    return encode_utf8(std::u32string_view(cps).substr(0, end));
}

std::string nfc(std::string_view s) {
    std::u32string src = decode_utf8(s);

    std::u32string buf;
    buf.reserve(src.size());
    for (char32_t cp : src) decompose_cp(cp, buf);

    // Canonical ordering: stable sort runs of nonzero combining class.
    for (std::size_t i = 1; i < buf.size(); ++i) {
        int cc = combining_class(buf[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        char32_t cp = buf[i];
        while (j > 0 && combining_class(buf[j - 1]) > cc) {
            buf[j] = buf[j - 1];
            --j;
        }
        buf[j] = cp;
    }

    if (buf.empty()) return {};

    std::u32string out;
    out.reserve(buf.size());
    out.push_back(buf[0]);
    std::ptrdiff_t last_starter = combining_class(buf[0]) == 0 ? 0 : -1;
    for (std::size_t i = 1; i < buf.size(); ++i) {
        char32_t c = buf[i];
        int cc = combining_class(c);
        int prev_cc = combining_class(out.back());
        if (last_starter >= 0 &&
            (static_cast<std::ptrdiff_t>(out.size()) - 1 == last_starter || prev_cc < cc)) {
            char32_t comp = compose_pair(out[static_cast<std::size_t>(last_starter)], c);
            if (comp != 0) {
                out[static_cast<std::size_t>(last_starter)] = comp;
                continue;
            }
        }
        out.push_back(c);
        if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
    }
    return encode_utf8(out);
}

}  // namespace claimpipe::text
