// Post cleaning: trailing-placeholder removal, repetition condensation,
// and cross-split deduplication.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "claimpipe/corpus.hpp"

namespace claimpipe {

struct CleaningReport {
    std::string record_id;
    bool trailing_placeholder_removed = false;
    std::optional<std::size_t> repetition_period_tokens;  // the period s when condensation fired
    std::size_t tokens_before = 0;
    std::size_t tokens_after = 0;
};

struct CleaningOptions {
    /// Literal prefix-only repetition check (drops a trailing remainder)
    /// instead of requiring the pattern to cover the whole post.
    bool faithful_pseudocode = false;
};

/// Removes one trailing "None" (word-boundary delimited) plus trailing
/// whitespace; otherwise returns the text unchanged.
std::string strip_trailing_placeholder(std::string_view post);

/// Collapses a post that is an exact whole-post repetition of its
/// smallest leading token pattern down to a single copy. Tokens are
/// always rejoined with single spaces.
std::pair<std::string, std::optional<std::size_t>> condense_repetition(
    std::string_view post, const CleaningOptions& options = {});

struct CleanResult {
    std::string text;
    CleaningReport report;
};

/// Placeholder removal followed by repetition condensation.
CleanResult clean_post(std::string_view post, const CleaningOptions& options = {},
                       std::string_view record_id = {});

struct DedupReport {
    std::string key;  // normalized cleaned post
    std::string kept_language;
    Split kept_split;
    std::string kept_id;
    std::vector<std::tuple<std::string, Split, std::string>> removed;  // (language, split, id)
};

struct DedupOptions {
    /// Also drop repeats of a key inside a single split (first occurrence kept).
    bool within_split = false;
};

/// Duplicate key = NFC-normalized cleaned post with whitespace runs
/// collapsed, scoped per language. Retention priority: test > dev > train.
std::pair<std::vector<Record>, std::vector<DedupReport>> dedupe_cross_split(
    const std::vector<Record>& records, const DedupOptions& options = {});

/// The dedup key function, exposed for tests.
std::string dedup_key(std::string_view cleaned_post);

}  // namespace claimpipe
