// Unicode-aware text primitives shared by the pipeline stages.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claimpipe::text {

/// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

bool is_whitespace(char32_t cp);
/// Unicode general category P*.
bool is_punctuation(char32_t cp);
/// Unicode letters, digits, or underscore.
bool is_word_char(char32_t cp);
/// 1:1 lowercase mapping; identity when none exists.
char32_t fold_case(char32_t cp);

/// Maximal runs of non-whitespace code points, in order.
std::vector<std::string> split_whitespace(std::string_view s);
std::size_t count_words(std::string_view s);

/// Removes every category-P code point.
std::string strip_punctuation(std::string_view s);
std::string fold_case_utf8(std::string_view s);

/// Trims edges and collapses internal whitespace runs to single ASCII spaces.
std::string collapse_whitespace(std::string_view s);
std::string rtrim(std::string_view s);

/// Canonical composition (NFC).
std::string nfc(std::string_view s);

}  // namespace claimpipe::text
