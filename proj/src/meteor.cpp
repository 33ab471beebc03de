#include "claimpipe/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "claimpipe/errors.hpp"
#include "claimpipe/text.hpp"

namespace claimpipe {

namespace {

// Maximum number of multi-candidate tokens for which the exact
// branch-and-bound alignment search is attempted.
constexpr std::size_t kMaxAmbiguousTokens = 12;

// Kuhn's augmenting-path maximum matching. adj maps hyp slots to ref slots.
class MaxMatcher {
   public:
    MaxMatcher(const std::vector<std::vector<int>>& adj, int n_ref)
        : adj_(adj), match_ref_(static_cast<std::size_t>(n_ref), -1) {}

    int solve() {
        int total = 0;
        for (int h = 0; h < static_cast<int>(adj_.size()); ++h) {
            visited_.assign(match_ref_.size(), false);
            if (try_augment(h)) ++total;
        }
        return total;
    }

   private:
    bool try_augment(int h) {
        for (int r : adj_[static_cast<std::size_t>(h)]) {
            if (visited_[static_cast<std::size_t>(r)]) continue;
            visited_[static_cast<std::size_t>(r)] = true;
            if (match_ref_[static_cast<std::size_t>(r)] < 0 ||
                try_augment(match_ref_[static_cast<std::size_t>(r)])) {
                match_ref_[static_cast<std::size_t>(r)] = h;
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<int>>& adj_;
    std::vector<int> match_ref_;
    std::vector<bool> visited_;
};

using Pair = std::pair<std::size_t, std::size_t>;  // (hyp, ref)

std::size_t count_chunks(std::vector<Pair> pairs) {
    if (pairs.empty()) return 0;
    std::sort(pairs.begin(), pairs.end());
    std::size_t chunks = 1;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first != pairs[i - 1].first + 1 ||
            pairs[i].second != pairs[i - 1].second + 1) {
            ++chunks;
        }
    }
    return chunks;
}

// One hyp position in the stage's ordered walk: either an already-decided
// match (single option) or a free token with candidate refs.
struct Slot {
    std::size_t hyp;
    std::vector<std::size_t> refs;  // candidates; size 1 + fixed => decided
    bool fixed;
};

// Exhaustive search over the slot walk: pick exactly `target` matches among
// the non-fixed slots, minimizing the chunk count of the union. Chunk count
// grows monotonically along the walk, so partial counts prune.
class ChunkSearch {
   public:
    ChunkSearch(const std::vector<Slot>& slots, std::size_t target, std::size_t n_ref)
        : slots_(slots), target_(target), ref_used_(n_ref, false) {}

    std::vector<Pair> run() {
        dfs(0, 0, 0, false, 0, 0);
        return best_pairs_;
    }

   private:
    void dfs(std::size_t idx, std::size_t chosen, std::size_t chunks, bool have_prev,
             std::size_t prev_h, std::size_t prev_r) {
        if (chunks > best_chunks_) return;
        if (idx == slots_.size()) {
            if (chosen == target_ && chunks < best_chunks_) {
                best_chunks_ = chunks;
                best_pairs_ = cur_;
            }
            return;
        }
        const Slot& slot = slots_[idx];
        std::size_t remaining_free = 0;
        for (std::size_t k = idx; k < slots_.size(); ++k) {
            if (!slots_[k].fixed) ++remaining_free;
        }

        auto take = [&](std::size_t r) {
            std::size_t next_chunks =
                chunks + ((have_prev && slot.hyp == prev_h + 1 && r == prev_r + 1) ? 0 : 1);
            cur_.emplace_back(slot.hyp, r);
            ref_used_[r] = true;
            dfs(idx + 1, chosen + (slot.fixed ? 0 : 1), next_chunks, true, slot.hyp, r);
            ref_used_[r] = false;
            cur_.pop_back();
        };

        if (slot.fixed) {
            take(slot.refs[0]);
            return;
        }
        if (chosen < target_) {
            for (std::size_t r : slot.refs) {
                if (!ref_used_[r]) take(r);
            }
        }
        // Skip this token if enough free slots remain to hit the target.
        if (chosen + remaining_free - 1 >= target_) {
            dfs(idx + 1, chosen, chunks, have_prev, prev_h, prev_r);
        }
    }

    const std::vector<Slot>& slots_;
    std::size_t target_;
    std::vector<bool> ref_used_;
    std::vector<Pair> cur_;
    std::vector<Pair> best_pairs_;
    std::size_t best_chunks_ = std::numeric_limits<std::size_t>::max();
};

// Greedy fallback for pathological ambiguity: smallest free candidate,
// preferring the ref that extends the current chunk.
std::vector<Pair> greedy_walk(const std::vector<Slot>& slots, std::size_t n_ref) {
    std::vector<Pair> out;
    std::vector<bool> ref_used(n_ref, false);
    bool have_prev = false;
    std::size_t prev_h = 0, prev_r = 0;
    for (const Slot& slot : slots) {
        std::size_t pick = n_ref;
        if (slot.fixed) {
            pick = slot.refs[0];
        } else {
            if (have_prev && slot.hyp == prev_h + 1 && prev_r + 1 < n_ref &&
                !ref_used[prev_r + 1] &&
                std::find(slot.refs.begin(), slot.refs.end(), prev_r + 1) != slot.refs.end()) {
                pick = prev_r + 1;
            } else {
                for (std::size_t r : slot.refs) {
                    if (!ref_used[r]) {
                        pick = r;
                        break;
                    }
                }
            }
        }
        if (pick == n_ref) continue;
        ref_used[pick] = true;
        out.emplace_back(slot.hyp, pick);
        have_prev = true;
        prev_h = slot.hyp;
        prev_r = pick;
    }
    return out;
}

bool stage_tokens_match(MatchStage stage, const MeteorParams& params, const std::string& a,
                        const std::string& b) {
    switch (stage) {
        case MatchStage::exact:
            return a == b;
        case MatchStage::stem: {
            if (!params.stemmer) return a == b;
            return params.stemmer(a) == params.stemmer(b);
        }
        case MatchStage::synonym: {
            if (!params.synonym_sets) return false;
            auto sa = params.synonym_sets(a);
            auto sb = params.synonym_sets(b);
            for (int x : sa) {
                if (std::find(sb.begin(), sb.end(), x) != sb.end()) return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

std::vector<std::string> normalize_for_scoring(std::string_view textin, bool casefold) {
    std::string stripped = text::strip_punctuation(textin);
    if (casefold) stripped = text::fold_case_utf8(stripped);
    return text::split_whitespace(stripped);
}

Alignment align(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                const MeteorParams& params) {
    Alignment result;
    std::vector<bool> hyp_matched(hyp.size(), false);
    std::vector<bool> ref_matched(ref.size(), false);

    for (MatchStage stage : params.stages) {
        // Candidates among still-unmatched tokens.
        std::vector<std::vector<std::size_t>> cand(hyp.size());
        bool any = false;
        for (std::size_t i = 0; i < hyp.size(); ++i) {
            if (hyp_matched[i]) continue;
            for (std::size_t j = 0; j < ref.size(); ++j) {
                if (ref_matched[j]) continue;
                if (stage_tokens_match(stage, params, hyp[i], ref[j])) {
                    cand[i].push_back(j);
                    any = true;
                }
            }
        }
        if (!any) continue;

        // Stage cardinality via maximum matching.
        std::vector<std::vector<int>> adj;
        std::vector<std::size_t> adj_hyp;
        for (std::size_t i = 0; i < hyp.size(); ++i) {
            if (cand[i].empty()) continue;
            adj_hyp.push_back(i);
            std::vector<int> row;
            for (std::size_t j : cand[i]) row.push_back(static_cast<int>(j));
            adj.push_back(std::move(row));
        }
        const std::size_t target =
            static_cast<std::size_t>(MaxMatcher(adj, static_cast<int>(ref.size())).solve());
        if (target == 0) continue;

        // Decided pairs: mutually unique candidates are in every maximum
        // matching of this stage.
        std::vector<std::size_t> ref_cand_count(ref.size(), 0);
        for (std::size_t i : adj_hyp) {
            for (std::size_t j : cand[i]) ++ref_cand_count[j];
        }
        std::vector<Slot> slots;
        std::size_t fixed_matches = 0;
        std::size_t ambiguous = 0;
        for (const auto& m : result.matches) slots.push_back({m.hyp_index, {m.ref_index}, true});
        for (std::size_t i : adj_hyp) {
            bool mutual_unique = cand[i].size() == 1 && ref_cand_count[cand[i][0]] == 1;
            if (mutual_unique) {
                slots.push_back({i, {cand[i][0]}, true});
                ++fixed_matches;
            } else {
                slots.push_back({i, cand[i], false});
                if (cand[i].size() > 1) ++ambiguous;
            }
        }
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (ref_cand_count[j] > 1) ++ambiguous;
        }
        std::sort(slots.begin(), slots.end(),
                  [](const Slot& a, const Slot& b) { return a.hyp < b.hyp; });

        std::vector<Pair> walk;
        if (ambiguous <= kMaxAmbiguousTokens) {
            walk = ChunkSearch(slots, target - fixed_matches, ref.size()).run();
        }
        if (walk.empty()) walk = greedy_walk(slots, ref.size());

        // The walk re-lists earlier matches; append only this stage's pairs.
        for (const Pair& p : walk) {
            if (hyp_matched[p.first]) continue;
            hyp_matched[p.first] = true;
            ref_matched[p.second] = true;
            result.matches.push_back({p.first, p.second, stage});
        }
    }

    std::vector<Pair> pairs;
    pairs.reserve(result.matches.size());
    for (const auto& m : result.matches) pairs.emplace_back(m.hyp_index, m.ref_index);
    result.chunk_count = count_chunks(std::move(pairs));
    std::sort(result.matches.begin(), result.matches.end(),
              [](const Alignment::Match& a, const Alignment::Match& b) {
                  return a.hyp_index < b.hyp_index;
              });
    return result;
}

MeteorScore meteor_single(std::string_view hyp_text, std::string_view ref_text,
                          const MeteorParams& params) {
    MeteorScore s;
    const auto hyp = normalize_for_scoring(hyp_text, params.casefold);
    const auto ref = normalize_for_scoring(ref_text, params.casefold);
    if (hyp.empty() || ref.empty()) return s;

    Alignment a = align(hyp, ref, params);
    s.matches = a.matches.size();
    s.chunks = a.chunk_count;
    if (s.matches == 0) return s;

    const double m = static_cast<double>(s.matches);
    s.precision = m / static_cast<double>(hyp.size());
    s.recall = m / static_cast<double>(ref.size());
    s.fmean = s.precision * s.recall /
              (params.alpha * s.precision + (1.0 - params.alpha) * s.recall);
    s.penalty = params.gamma * std::pow(static_cast<double>(s.chunks) / m, params.beta);
    s.score = s.fmean * (1.0 - s.penalty);
    return s;
}

double corpus_meteor(const std::vector<std::pair<std::string, std::string>>& pairs,
                     const MeteorParams& params) {
    if (pairs.empty()) throw DataError("corpus_meteor: empty pair list");
    double sum = 0.0;
    for (const auto& [pred, ref] : pairs) sum += meteor_single(pred, ref, params).score;
    return sum / static_cast<double>(pairs.size());
}

}  // namespace claimpipe
