// From-scratch METEOR scorer: punctuation-stripped unigram alignment
// with a fragmentation penalty, averaged over a corpus.
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace claimpipe {

enum class MatchStage { exact, stem, synonym };

struct MeteorParams {
    double alpha = 0.9;  // recall weight in the harmonic mean
    double beta = 3.0;   // penalty exponent
    double gamma = 0.5;  // penalty weight
    std::vector<MatchStage> stages = {MatchStage::exact};
    bool casefold = true;

    /// Optional resources for the stem/synonym stages; both ship empty.
    /// A null stemmer makes the stem stage behave as identity stemming.
    std::function<std::string(const std::string&)> stemmer;
    /// Synonym-set ids per token; tokens match when their sets intersect.
    std::function<std::vector<int>(const std::string&)> synonym_sets;
};

struct Alignment {
    struct Match {
        std::size_t hyp_index;
        std::size_t ref_index;
        MatchStage stage;
    };
    std::vector<Match> matches;   // one-to-one on both sides
    std::size_t chunk_count = 0;  // maximal contiguous order-preserving runs
};

struct MeteorScore {
    double precision = 0.0;
    double recall = 0.0;
    double fmean = 0.0;
    double penalty = 0.0;
    double score = 0.0;
    std::size_t matches = 0;
    std::size_t chunks = 0;
};

/// Strips category-P code points, case-folds, splits on whitespace.
std::vector<std::string> normalize_for_scoring(std::string_view textin, bool casefold = true);

/// Stage-ordered one-to-one alignment maximizing |matches| and, among
/// maximum-cardinality alignments, minimizing the chunk count.
Alignment align(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                const MeteorParams& params = {});

MeteorScore meteor_single(std::string_view hyp_text, std::string_view ref_text,
                          const MeteorParams& params = {});

/// Arithmetic mean over (prediction, reference) pairs; empty predictions
/// score 0 and stay in the mean. Throws DataError on an empty list.
double corpus_meteor(const std::vector<std::pair<std::string, std::string>>& pairs,
                     const MeteorParams& params = {});

}  // namespace claimpipe
