// Data model, dataset I/O, and descriptive statistics for the task corpus.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace claimpipe {

enum class Split { train, dev, test };
enum class Setting { monolingual, zero_shot };

std::string to_string(Split s);
Split split_from_string(std::string_view s);

/// One of the 20 task language codes. 13 ship train/dev/test splits
/// (monolingual); 7 ship test only (zero-shot).
struct LanguageCode {
    std::string code;
    Setting setting;

    /// Throws ConfigError for codes outside the task's 20 languages.
    static LanguageCode parse(std::string_view code);

    bool operator==(const LanguageCode& o) const { return code == o.code; }
};

const std::vector<std::string>& monolingual_codes();
const std::vector<std::string>& zero_shot_codes();

struct Record {
    std::string id;
    LanguageCode language;
    Split split = Split::train;
    std::string raw_post;
    std::optional<std::string> cleaned_post;
    std::optional<std::string> reference_claim;
    std::optional<std::string> prediction;
};

enum class CorpusFormat { csv, jsonl };
enum class TextField { raw_post, cleaned_post, reference_claim };

/// CSV column mapping; the task release uses "post" / "normalized claim".
struct CsvColumns {
    std::string post = "post";
    std::string claim = "normalized claim";
    std::string id;  // empty: synthesize <language>-<split>-<row index>
};

/// Loads one (language, split) file. Rows keep file order; ids are
/// synthesized when the file carries none.
std::vector<Record> load_corpus(const std::filesystem::path& path, CorpusFormat format,
                                const LanguageCode& language, Split split,
                                const CsvColumns& columns = {});

/// Canonical JSONL interchange (keys: id, language, split, post,
/// cleaned_post, normalized_claim, prediction; absent fields omitted).
Record record_from_json(const nlohmann::json& j, std::size_t line_no);
nlohmann::ordered_json record_to_json(const Record& r);
std::vector<Record> read_records_jsonl(const std::filesystem::path& path);
void write_records_jsonl(const std::filesystem::path& path, const std::vector<Record>& records);

struct HistogramBin {
    std::size_t lower_bound;
    std::size_t frequency;
};

struct CorpusStats {
    std::size_t n = 0;
    double mean_words = 0.0;
    double std_words = 0.0;  // population
    std::size_t min_words = 0;
    std::size_t max_words = 0;
    std::vector<HistogramBin> histogram;  // fixed-width bins of 10 words from 0
};

/// Whitespace word counts over the selected field.
CorpusStats word_count_stats(const std::vector<Record>& records, TextField field);

nlohmann::ordered_json stats_to_json(const CorpusStats& s);

struct SplitCounts {
    std::map<std::pair<std::string, Split>, std::size_t> counts;
};

SplitCounts split_counts(const std::vector<Record>& records);
nlohmann::ordered_json split_counts_to_json(const SplitCounts& c);

const std::string& field_text(const Record& r, TextField field);  // throws if absent

}  // namespace claimpipe
