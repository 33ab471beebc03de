// Post embeddings (file-ingested or deterministic fallback) and a
// from-scratch HDBSCAN used to pick cluster prototypes.
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "claimpipe/corpus.hpp"

namespace claimpipe {

struct EmbeddingMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> vectors;  // n x d, rows unit L2 norm
    std::string source;

    std::size_t rows() const { return vectors.size(); }
    std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }

    /// Normalizes rows; throws DataError on a zero vector or ragged rows.
    static EmbeddingMatrix from_rows(std::vector<std::string> ids,
                                     std::vector<std::vector<double>> vectors,
                                     std::string source);
};

/// File format: header `#dim=<d> source=<label>`, then `id<TAB>v1 v2 ... vd`.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// Hashed character 3..5-gram TF-IDF vectors; deterministic stand-in for
/// neural sentence embeddings. Uses cleaned_post when present.
EmbeddingMatrix fallback_embed(const std::vector<Record>& records, std::size_t dim = 256);

struct HdbscanParams {
    std::size_t min_cluster_size = 5;
    std::size_t min_samples = 0;  // 0: defaults to min_cluster_size
};

struct ClusterAssignment {
    std::vector<int> labels;           // -1 noise; clusters 0..C-1 by decreasing size
    std::vector<std::size_t> sizes;    // per cluster, non-increasing
};

struct MstEdge {
    std::size_t a;
    std::size_t b;
    double weight;
};

/// Core distance: distance to the min_samples-th nearest neighbor,
/// counting the point itself (reference-library convention).
std::vector<double> core_distances(const EmbeddingMatrix& m, std::size_t min_samples);

/// d_mr(a,b) = max(core(a), core(b), d(a,b)), as a dense matrix.
std::vector<std::vector<double>> mutual_reachability(const EmbeddingMatrix& m,
                                                     std::size_t min_samples);

/// Deterministic Prim MST over a dense distance matrix.
std::vector<MstEdge> minimum_spanning_tree(const std::vector<std::vector<double>>& dist);

/// Core distances -> mutual reachability -> MST -> single-linkage
/// hierarchy -> condensed tree -> Excess-of-Mass extraction.
ClusterAssignment hdbscan(const EmbeddingMatrix& m, const HdbscanParams& params = {});

struct Prototype {
    int cluster_id;
    std::string record_id;  // member closest to the cluster centroid
};

/// Prototypes of the min(k, C) largest clusters, in descending size order.
/// All-noise assignments yield an empty list.
std::vector<Prototype> prototypes(const EmbeddingMatrix& m, const ClusterAssignment& assignment,
                                  std::size_t k);

}  // namespace claimpipe
