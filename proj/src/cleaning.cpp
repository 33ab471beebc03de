#include "claimpipe/cleaning.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "claimpipe/errors.hpp"
#include "claimpipe/text.hpp"

namespace claimpipe {

namespace {

constexpr std::string_view kPlaceholder = "None";

int split_priority(Split s) {
    switch (s) {
        case Split::test:
            return 2;
        case Split::dev:
            return 1;
        case Split::train:
            return 0;
    }
    return -1;
}

std::string join_tokens(const std::vector<std::string>& tokens, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

}  // namespace

std::string strip_trailing_placeholder(std::string_view post) {
    std::string trimmed = text::rtrim(post);
    if (trimmed.size() < kPlaceholder.size() ||
        trimmed.compare(trimmed.size() - kPlaceholder.size(), kPlaceholder.size(), kPlaceholder) !=
            0) {
        return std::string(post);
    }
    // Word boundary: "None" must not be glued to a preceding word character.
    std::size_t start = trimmed.size() - kPlaceholder.size();
    if (start > 0) {
        std::u32string head = text::decode_utf8(std::string_view(trimmed).substr(0, start));
        if (!head.empty() && text::is_word_char(head.back())) return std::string(post);
    }
    return text::rtrim(std::string_view(trimmed).substr(0, start));
}

std::pair<std::string, std::optional<std::size_t>> condense_repetition(
    std::string_view post, const CleaningOptions& options) {
    std::vector<std::string> tokens = text::split_whitespace(post);
    const std::size_t n = tokens.size();
    for (std::size_t s = 1; s <= n / 2; ++s) {
        const std::size_t repeats = n / s;
        if (!options.faithful_pseudocode && repeats * s != n) continue;
        bool all_equal = true;
        for (std::size_t i = 0; i < repeats * s && all_equal; ++i) {
            all_equal = tokens[i] == tokens[i % s];
        }
        if (all_equal) return {join_tokens(tokens, s), s};
    }
    return {join_tokens(tokens, n), std::nullopt};
}

CleanResult clean_post(std::string_view post, const CleaningOptions& options,
                       std::string_view record_id) {
    CleanResult res;
    res.report.record_id = std::string(record_id);
    res.report.tokens_before = text::count_words(post);

    std::string stripped = strip_trailing_placeholder(post);
    res.report.trailing_placeholder_removed = stripped != post;

    auto [condensed, period] = condense_repetition(stripped, options);
    res.text = std::move(condensed);
    res.report.repetition_period_tokens = period;
    res.report.tokens_after = text::count_words(res.text);
    return res;
}

std::string dedup_key(std::string_view cleaned_post) {
    return text::collapse_whitespace(text::nfc(cleaned_post));
}

std::pair<std::vector<Record>, std::vector<DedupReport>> dedupe_cross_split(
    const std::vector<Record>& records, const DedupOptions& options) {
    struct Occurrence {
        std::size_t index;
        Split split;
    };
    // key: (language, normalized post) -> occurrences in input order
    std::map<std::pair<std::string, std::string>, std::vector<Occurrence>> groups;
    std::vector<std::string> keys(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Record& r = records[i];
        if (!r.cleaned_post) {
            throw DataError("dedupe: record " + r.id + " has no cleaned_post");
        }
        keys[i] = dedup_key(*r.cleaned_post);
        groups[{r.language.code, keys[i]}].push_back({i, r.split});
    }

    std::vector<bool> removed(records.size(), false);
    std::vector<DedupReport> reports;
    for (const auto& [key, occs] : groups) {
        int best = -1;
        for (const auto& o : occs) best = std::max(best, split_priority(o.split));
        std::vector<std::size_t> kept, dropped;
        bool kept_one_in_best = false;
        for (const auto& o : occs) {
            bool keep = split_priority(o.split) == best;
            if (keep && options.within_split) {
                keep = !kept_one_in_best;
                kept_one_in_best = true;
            }
            (keep ? kept : dropped).push_back(o.index);
        }
        if (dropped.empty()) continue;
        DedupReport rep;
        rep.key = key.second;
        const Record& kr = records[kept.front()];
        rep.kept_language = kr.language.code;
        rep.kept_split = kr.split;
        rep.kept_id = kr.id;
        for (std::size_t idx : dropped) {
            removed[idx] = true;
            rep.removed.emplace_back(records[idx].language.code, records[idx].split,
                                     records[idx].id);
        }
        reports.push_back(std::move(rep));
    }

    std::vector<Record> survivors;
    survivors.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!removed[i]) survivors.push_back(records[i]);
    }
    return {std::move(survivors), std::move(reports)};
}

}  // namespace claimpipe
