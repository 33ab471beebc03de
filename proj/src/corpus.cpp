#include "claimpipe/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "claimpipe/errors.hpp"
#include "claimpipe/text.hpp"

namespace claimpipe {

namespace {

const std::vector<std::string> kMonolingual = {"ar", "en", "fr", "de", "hi", "id", "mr",
                                               "pl", "pt", "pa", "es", "ta", "th"};
const std::vector<std::string> kZeroShot = {"bn", "cs", "nl", "el", "ko", "ro", "te"};

// RFC-4180: quoted fields may contain commas, doubled quotes, and newlines.
// Returns rows of fields plus the 1-based line each row starts on.
std::vector<std::pair<std::size_t, std::vector<std::string>>> parse_csv(const std::string& data,
                                                                        const std::string& where) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t line = 1;
    std::size_t row_start_line = 1;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.emplace_back(row_start_line, row);
        row.clear();
    };

    for (std::size_t i = 0; i < data.size(); ++i) {
        char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
        } else if (c == '"' && field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') {
            // handled at the '\n'
        } else if (c == '\n') {
            end_row();
            ++line;
            row_start_line = line;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) {
        throw DataError(where + ": unterminated quoted field starting near line " +
                        std::to_string(row_start_line));
    }
    if (!field.empty() || !row.empty() || field_was_quoted) end_row();
    return rows;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void validate_record(const Record& r, const std::string& where) {
    if (r.id.empty()) throw DataError(where + ": empty record id");
    if (r.raw_post.empty()) throw DataError(where + ": record " + r.id + " has empty post");
    if (r.language.setting == Setting::zero_shot && r.split != Split::test) {
        throw DataError(where + ": record " + r.id + " is zero-shot language '" +
                        r.language.code + "' but split is " + to_string(r.split));
    }
}

}  // namespace

std::string to_string(Split s) {
    switch (s) {
        case Split::train:
            return "train";
        case Split::dev:
            return "dev";
        case Split::test:
            return "test";
    }
    return "?";
}

Split split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "dev") return Split::dev;
    if (s == "test") return Split::test;
    throw ConfigError("unknown split '" + std::string(s) + "' (expected train|dev|test)");
}

LanguageCode LanguageCode::parse(std::string_view code) {
    std::string c(code);
    if (std::find(kMonolingual.begin(), kMonolingual.end(), c) != kMonolingual.end()) {
        return {c, Setting::monolingual};
    }
    if (std::find(kZeroShot.begin(), kZeroShot.end(), c) != kZeroShot.end()) {
        return {c, Setting::zero_shot};
    }
    throw ConfigError("unknown language code '" + c + "'");
}

const std::vector<std::string>& monolingual_codes() { return kMonolingual; }
const std::vector<std::string>& zero_shot_codes() { return kZeroShot; }

Record record_from_json(const nlohmann::json& j, std::size_t line_no) {
    const std::string where = "line " + std::to_string(line_no);
    if (!j.is_object()) throw DataError(where + ": expected a JSON object");
    Record r;
    try {
        r.language = LanguageCode::parse(j.at("language").get<std::string>());
        r.split = split_from_string(j.at("split").get<std::string>());
        r.raw_post = j.at("post").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(where + ": " + e.what());
    }
    r.id = j.value("id", "");
    if (j.contains("cleaned_post")) r.cleaned_post = j.at("cleaned_post").get<std::string>();
    if (j.contains("normalized_claim")) {
        r.reference_claim = j.at("normalized_claim").get<std::string>();
    } else if (j.contains("normalized claim")) {
        r.reference_claim = j.at("normalized claim").get<std::string>();
    }
    if (j.contains("prediction")) r.prediction = j.at("prediction").get<std::string>();
    return r;
}

nlohmann::ordered_json record_to_json(const Record& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["language"] = r.language.code;
    j["split"] = to_string(r.split);
    j["post"] = r.raw_post;
    if (r.cleaned_post) j["cleaned_post"] = *r.cleaned_post;
    if (r.reference_claim) j["normalized_claim"] = *r.reference_claim;
    if (r.prediction) j["prediction"] = *r.prediction;
    return j;
}

std::vector<Record> read_records_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<Record> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        Record r = record_from_json(j, line_no);
        if (r.id.empty()) {
            r.id = r.language.code + "-" + to_string(r.split) + "-" + std::to_string(out.size());
        }
        validate_record(r, path.string() + ":" + std::to_string(line_no));
        out.push_back(std::move(r));
    }
    if (out.empty()) throw DataError(path.string() + ": empty corpus");
    return out;
}

void write_records_jsonl(const std::filesystem::path& path, const std::vector<Record>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    for (const Record& r : records) out << record_to_json(r).dump() << "\n";
}

std::vector<Record> load_corpus(const std::filesystem::path& path, CorpusFormat format,
                                const LanguageCode& language, Split split,
                                const CsvColumns& columns) {
    if (language.setting == Setting::zero_shot && split != Split::test) {
        throw DataError("language '" + language.code + "' is zero-shot; only a test split exists");
    }
    if (format == CorpusFormat::jsonl) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open " + path.string());
        std::vector<Record> out;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
            if (!j.is_object() || !j.contains("post")) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": missing 'post' key");
            }
            Record r;
            r.language = language;
            r.split = split;
            if (j.contains("language")) {
                auto declared = j.at("language").get<std::string>();
                if (declared != language.code) {
                    throw DataError(path.string() + ":" + std::to_string(line_no) +
                                    ": record language '" + declared + "' does not match '" +
                                    language.code + "'");
                }
            }
            if (j.contains("split")) {
                auto declared = split_from_string(j.at("split").get<std::string>());
                if (declared != split) {
                    throw DataError(path.string() + ":" + std::to_string(line_no) +
                                    ": record split does not match requested split");
                }
            }
            r.raw_post = j.at("post").get<std::string>();
            r.id = j.value("id", "");
            if (r.id.empty()) {
                r.id = language.code + "-" + to_string(split) + "-" + std::to_string(out.size());
            }
            if (j.contains("cleaned_post")) r.cleaned_post = j.at("cleaned_post").get<std::string>();
            if (j.contains("normalized_claim")) {
                r.reference_claim = j.at("normalized_claim").get<std::string>();
            } else if (j.contains("normalized claim")) {
                r.reference_claim = j.at("normalized claim").get<std::string>();
            }
            if (j.contains("prediction")) r.prediction = j.at("prediction").get<std::string>();
            validate_record(r, path.string() + ":" + std::to_string(line_no));
            out.push_back(std::move(r));
        }
        if (out.empty()) throw DataError(path.string() + ": empty corpus");
        return out;
    }

    // CSV
    const std::string data = read_file(path);
    auto rows = parse_csv(data, path.string());
    if (rows.empty()) throw DataError(path.string() + ": empty corpus");
    const auto& header = rows.front().second;
    auto col_index = [&](const std::string& name) -> std::ptrdiff_t {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const auto post_col = col_index(columns.post);
    if (post_col < 0) {
        throw DataError(path.string() + ": no column named '" + columns.post + "' in header");
    }
    const auto claim_col = col_index(columns.claim);
    const auto id_col = columns.id.empty() ? -1 : col_index(columns.id);
    if (!columns.id.empty() && id_col < 0) {
        throw DataError(path.string() + ": no column named '" + columns.id + "' in header");
    }

    std::vector<Record> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& [line_no, fields] = rows[i];
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (static_cast<std::size_t>(post_col) >= fields.size()) {
            throw DataError(where + ": row has " + std::to_string(fields.size()) +
                            " fields, 'post' column missing");
        }
        Record r;
        r.language = language;
        r.split = split;
        r.raw_post = fields[static_cast<std::size_t>(post_col)];
        if (id_col >= 0 && static_cast<std::size_t>(id_col) < fields.size()) {
            r.id = fields[static_cast<std::size_t>(id_col)];
        }
        if (r.id.empty()) {
            r.id = language.code + "-" + to_string(split) + "-" + std::to_string(out.size());
        }
        if (claim_col >= 0 && static_cast<std::size_t>(claim_col) < fields.size() &&
            !fields[static_cast<std::size_t>(claim_col)].empty()) {
            r.reference_claim = fields[static_cast<std::size_t>(claim_col)];
        }
        validate_record(r, where);
        out.push_back(std::move(r));
    }
    if (out.empty()) throw DataError(path.string() + ": empty corpus");
    return out;
}

const std::string& field_text(const Record& r, TextField field) {
    switch (field) {
        case TextField::raw_post:
            return r.raw_post;
        case TextField::cleaned_post:
            if (!r.cleaned_post) throw DataError("record " + r.id + " has no cleaned_post");
            return *r.cleaned_post;
        case TextField::reference_claim:
            if (!r.reference_claim) throw DataError("record " + r.id + " has no reference claim");
            return *r.reference_claim;
    }
    throw DataError("bad field selector");
}

CorpusStats word_count_stats(const std::vector<Record>& records, TextField field) {
    if (records.empty()) throw DataError("word_count_stats: empty record list");
    std::vector<std::size_t> counts;
    counts.reserve(records.size());
    for (const Record& r : records) counts.push_back(text::count_words(field_text(r, field)));

    CorpusStats s;
    s.n = counts.size();
    s.min_words = *std::min_element(counts.begin(), counts.end());
    s.max_words = *std::max_element(counts.begin(), counts.end());
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c);
    s.mean_words = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - s.mean_words;
        ss += d * d;
    }
    s.std_words = std::sqrt(ss / static_cast<double>(s.n));

    s.histogram.resize(s.max_words / 10 + 1);
    for (std::size_t b = 0; b < s.histogram.size(); ++b) s.histogram[b] = {b * 10, 0};
    for (auto c : counts) ++s.histogram[c / 10].frequency;
    return s;
}

nlohmann::ordered_json stats_to_json(const CorpusStats& s) {
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["mean_words"] = s.mean_words;
    j["std_words"] = s.std_words;
    j["min_words"] = s.min_words;
    j["max_words"] = s.max_words;
    auto hist = nlohmann::ordered_json::array();
    for (const auto& b : s.histogram) hist.push_back({b.lower_bound, b.frequency});
    j["histogram"] = hist;
    return j;
}

SplitCounts split_counts(const std::vector<Record>& records) {
    SplitCounts c;
    for (const Record& r : records) ++c.counts[{r.language.code, r.split}];
    return c;
}

nlohmann::ordered_json split_counts_to_json(const SplitCounts& c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [key, count] : c.counts) {
        arr.push_back({{"language", key.first}, {"split", to_string(key.second)}, {"count", count}});
    }
    return arr;
}

}  // namespace claimpipe
