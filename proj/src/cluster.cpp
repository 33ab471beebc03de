#include "claimpipe/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "claimpipe/errors.hpp"
#include "claimpipe/text.hpp"

namespace claimpipe {

namespace {

constexpr double kLambdaMax = 1e12;  // stands in for 1/0 on duplicate points

double lambda_of(double dist) { return dist > 1.0 / kLambdaMax ? 1.0 / dist : kLambdaMax; }

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Single-linkage dendrogram node; internal node i has id n_points + i.
struct DendroNode {
    std::size_t left;
    std::size_t right;
    double dist;
    std::size_t size;
};

struct UnionFind {
    explicit UnionFind(std::size_t total) : parent(total) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    std::vector<std::size_t> parent;
};

// Condensed-tree row: child is a point (size 1) or a cluster id.
struct CondensedRow {
    std::size_t parent;
    std::size_t child;
    double lambda;
    std::size_t child_size;
};

std::vector<std::size_t> subtree_nodes(const std::vector<DendroNode>& dendro,
                                       std::size_t n_points, std::size_t start) {
    std::vector<std::size_t> out, stack{start};
    while (!stack.empty()) {
        std::size_t node = stack.back();
        stack.pop_back();
        out.push_back(node);
        if (node >= n_points) {
            stack.push_back(dendro[node - n_points].left);
            stack.push_back(dendro[node - n_points].right);
        }
    }
    return out;
}

}  // namespace

EmbeddingMatrix EmbeddingMatrix::from_rows(std::vector<std::string> ids,
                                           std::vector<std::vector<double>> vectors,
                                           std::string source) {
    if (ids.size() != vectors.size()) {
        throw DataError("embeddings: row/id count mismatch (" + std::to_string(ids.size()) +
                        " ids, " + std::to_string(vectors.size()) + " rows)");
    }
    const std::size_t d = vectors.empty() ? 0 : vectors.front().size();
    if (!vectors.empty() && d < 2) throw DataError("embeddings: dimension must be >= 2");
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != d) {
            throw DataError("embeddings: dimension mismatch at row for id " + ids[i]);
        }
        double norm = std::sqrt(
            std::inner_product(vectors[i].begin(), vectors[i].end(), vectors[i].begin(), 0.0));
        if (norm <= 0.0 || !std::isfinite(norm)) {
            throw DataError("embeddings: zero or non-finite vector for id " + ids[i]);
        }
        for (double& v : vectors[i]) v /= norm;
    }
    EmbeddingMatrix m;
    m.ids = std::move(ids);
    m.vectors = std::move(vectors);
    m.source = std::move(source);
    return m;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("#dim=", 0) != 0) {
        throw DataError(path.string() + ": missing '#dim=<d> source=<label>' header");
    }
    std::size_t dim = 0;
    std::string source;
    {
        std::size_t sp = line.find(' ');
        std::string dim_part = line.substr(5, sp == std::string::npos ? std::string::npos : sp - 5);
        auto [p, ec] = std::from_chars(dim_part.data(), dim_part.data() + dim_part.size(), dim);
        if (ec != std::errc{} || dim < 2) throw DataError(path.string() + ": bad dim in header");
        if (sp != std::string::npos) {
            std::string rest = line.substr(sp + 1);
            if (rest.rfind("source=", 0) == 0) source = rest.substr(7);
        }
    }
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": row/id count mismatch (line has no vector)");
        }
        std::string id = line.substr(0, tab);
        std::vector<double> vec;
        vec.reserve(dim);
        const char* p = line.data() + tab + 1;
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p >= end) break;
            double v;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{}) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": bad number for id " + id);
            }
            vec.push_back(v);
            p = next;
        }
        if (vec.size() != dim) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": dimension mismatch for id " + id + " (got " +
                            std::to_string(vec.size()) + ", header says " + std::to_string(dim) +
                            ")");
        }
        ids.push_back(std::move(id));
        rows.push_back(std::move(vec));
    }
    if (ids.empty()) throw DataError(path.string() + ": no embedding rows");
    return EmbeddingMatrix::from_rows(std::move(ids), std::move(rows), std::move(source));
}

EmbeddingMatrix fallback_embed(const std::vector<Record>& records, std::size_t dim) {
    if (records.empty()) throw DataError("fallback_embed: no records");
    if (dim < 2) throw ConfigError("fallback_embed: dim must be >= 2");

    // Per-record gram counts plus document frequencies.
    std::vector<std::map<std::string, std::size_t>> grams(records.size());
    std::unordered_map<std::string, std::size_t> df;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string& textsrc =
            records[i].cleaned_post ? *records[i].cleaned_post : records[i].raw_post;
        std::u32string cps = text::decode_utf8(textsrc);
        if (cps.size() < 3) {
            if (!cps.empty()) ++grams[i][text::encode_utf8(cps)];
        } else {
            for (std::size_t len = 3; len <= 5; ++len) {
                if (cps.size() < len) break;
                for (std::size_t s = 0; s + len <= cps.size(); ++s) {
                    ++grams[i][text::encode_utf8(std::u32string_view(cps).substr(s, len))];
                }
            }
        }
        for (const auto& [g, _] : grams[i]) ++df[g];
    }

    const double n = static_cast<double>(records.size());
    std::vector<std::vector<double>> rows(records.size(), std::vector<double>(dim, 0.0));
    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        ids.push_back(records[i].id);
        for (const auto& [g, tf] : grams[i]) {
            double idf = std::log((1.0 + n) / (1.0 + static_cast<double>(df[g]))) + 1.0;
            rows[i][fnv1a64(g) % dim] += static_cast<double>(tf) * idf;
        }
        if (grams[i].empty()) rows[i][0] = 1.0;  // empty post: fixed unit direction
    }
    return EmbeddingMatrix::from_rows(std::move(ids), std::move(rows), "fallback-char-ngram-tfidf");
}

std::vector<double> core_distances(const EmbeddingMatrix& m, std::size_t min_samples) {
    const std::size_t n = m.rows();
    if (min_samples < 1 || min_samples > n) {
        throw ConfigError("core_distances: min_samples must be in [1, n]");
    }
    std::vector<double> core(n);
    std::vector<double> dists(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dists[j] = euclidean(m.vectors[i], m.vectors[j]);
        std::nth_element(dists.begin(), dists.begin() + (min_samples - 1), dists.end());
        core[i] = dists[min_samples - 1];
    }
    return core;
}

std::vector<std::vector<double>> mutual_reachability(const EmbeddingMatrix& m,
                                                     std::size_t min_samples) {
    const std::size_t n = m.rows();
    const auto core = core_distances(m, min_samples);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double mr = std::max({core[i], core[j], euclidean(m.vectors[i], m.vectors[j])});
            d[i][j] = mr;
            d[j][i] = mr;
        }
    }
    return d;
}

std::vector<MstEdge> minimum_spanning_tree(const std::vector<std::vector<double>>& dist) {
    const std::size_t n = dist.size();
    if (n < 2) return {};
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> best_from(n, 0);
    in_tree[0] = true;
    for (std::size_t j = 1; j < n; ++j) best[j] = dist[0][j];

    std::vector<MstEdge> edges;
    edges.reserve(n - 1);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!in_tree[j] && (pick == n || best[j] < best[pick])) pick = j;
        }
        in_tree[pick] = true;
        std::size_t a = best_from[pick], b = pick;
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, best[pick]});
        for (std::size_t j = 0; j < n; ++j) {
            if (!in_tree[j] && dist[pick][j] < best[j]) {
                best[j] = dist[pick][j];
                best_from[j] = pick;
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const MstEdge& x, const MstEdge& y) {
        return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
    });
    return edges;
}

ClusterAssignment hdbscan(const EmbeddingMatrix& m, const HdbscanParams& params) {
    const std::size_t n = m.rows();
    const std::size_t mcs = params.min_cluster_size;
    if (mcs < 2) throw ConfigError("hdbscan: min_cluster_size must be >= 2");
    if (n < mcs) {
        throw DataError("hdbscan: " + std::to_string(n) + " points < min_cluster_size " +
                        std::to_string(mcs));
    }
    const std::size_t min_samples = params.min_samples == 0 ? mcs : params.min_samples;

    const auto mreach = mutual_reachability(m, min_samples);
    const auto mst = minimum_spanning_tree(mreach);

    // Single-linkage hierarchy over the MST.
    std::vector<DendroNode> dendro;
    dendro.reserve(n - 1);
    UnionFind uf(2 * n - 1);
    std::vector<std::size_t> comp_size(2 * n - 1, 1);
    for (const MstEdge& e : mst) {
        std::size_t ra = uf.find(e.a), rb = uf.find(e.b);
        std::size_t id = n + dendro.size();
        dendro.push_back({ra, rb, e.weight, comp_size[ra] + comp_size[rb]});
        comp_size[id] = comp_size[ra] + comp_size[rb];
        uf.parent[ra] = id;
        uf.parent[rb] = id;
    }

    // Condense: walk top-down, spinning off true splits (both sides >=
    // min_cluster_size) as new clusters and shedding smaller sides as
    // per-point fall-outs at the split's lambda.
    const std::size_t root_cluster = n;
    std::vector<CondensedRow> rows;
    std::size_t next_cluster = n + 1;
    {
        const std::size_t dendro_root = 2 * n - 2;
        std::vector<std::pair<std::size_t, std::size_t>> stack;  // (dendro node, cluster)
        stack.emplace_back(dendro_root, root_cluster);
        while (!stack.empty()) {
            auto [node, cluster] = stack.back();
            stack.pop_back();
            if (node < n) continue;  // lone leaf chains are handled by parents
            const DendroNode& d = dendro[node - n];
            const double lam = lambda_of(d.dist);
            const std::size_t lsz = d.left < n ? 1 : dendro[d.left - n].size;
            const std::size_t rsz = d.right < n ? 1 : dendro[d.right - n].size;

            auto shed_points = [&](std::size_t side) {
                for (std::size_t sub : subtree_nodes(dendro, n, side)) {
                    if (sub < n) rows.push_back({cluster, sub, lam, 1});
                }
            };

            if (lsz >= mcs && rsz >= mcs) {
                std::size_t cl = next_cluster++;
                rows.push_back({cluster, cl, lam, lsz});
                std::size_t cr = next_cluster++;
                rows.push_back({cluster, cr, lam, rsz});
                stack.emplace_back(d.left, cl);
                stack.emplace_back(d.right, cr);
            } else if (lsz < mcs && rsz < mcs) {
                shed_points(d.left);
                shed_points(d.right);
            } else if (lsz < mcs) {
                shed_points(d.left);
                stack.emplace_back(d.right, cluster);
            } else {
                shed_points(d.right);
                stack.emplace_back(d.left, cluster);
            }
        }
    }

    ClusterAssignment out;
    out.labels.assign(n, -1);

    const std::size_t n_clusters_total = next_cluster - n;
    std::vector<double> birth(n_clusters_total, 0.0);
    std::vector<double> stability(n_clusters_total, 0.0);
    std::vector<std::vector<std::size_t>> children(n_clusters_total);
    for (const CondensedRow& r : rows) {
        if (r.child_size > 1 || r.child >= n) {
            birth[r.child - n] = r.lambda;
            children[r.parent - n].push_back(r.child - n);
        }
    }
    for (const CondensedRow& r : rows) {
        stability[r.parent - n] +=
            (r.lambda - birth[r.parent - n]) * static_cast<double>(r.child_size);
    }

    std::vector<bool> selected(n_clusters_total, false);
    if (n_clusters_total == 1) {
        // No true split anywhere: the dataset is one cluster. (Reference
        // libraries label everything noise here; the pipeline wants the
        // degenerate one-cluster answer instead.)
        selected[0] = true;
    } else {
        std::vector<double> value = stability;
        // Cluster ids increase downward, so reverse order visits children first.
        for (std::size_t c = n_clusters_total; c-- > 1;) {
            double child_sum = 0.0;
            for (std::size_t ch : children[c]) child_sum += value[ch];
            if (!children[c].empty() && child_sum > stability[c]) {
                selected[c] = false;
                value[c] = child_sum;
            } else {
                selected[c] = true;
                value[c] = stability[c];
                // Deselect all descendants.
                std::vector<std::size_t> st{c};
                while (!st.empty()) {
                    std::size_t cur = st.back();
                    st.pop_back();
                    for (std::size_t ch : children[cur]) {
                        selected[ch] = false;
                        st.push_back(ch);
                    }
                }
            }
        }
    }

    // Assign each point to its nearest selected ancestor cluster, if any.
    std::vector<std::ptrdiff_t> parent_of(n_clusters_total, -1);
    for (std::size_t c = 0; c < n_clusters_total; ++c) {
        for (std::size_t ch : children[c]) parent_of[ch] = static_cast<std::ptrdiff_t>(c);
    }
    std::map<std::size_t, std::vector<std::size_t>> members;  // cluster -> points
    for (const CondensedRow& r : rows) {
        if (r.child_size > 1 || r.child >= n) continue;
        std::ptrdiff_t c = static_cast<std::ptrdiff_t>(r.parent - n);
        while (c >= 0 && !selected[static_cast<std::size_t>(c)]) {
            c = parent_of[static_cast<std::size_t>(c)];
        }
        if (c >= 0) members[static_cast<std::size_t>(c)].push_back(r.child);
    }

    // Final labels ordered by decreasing size (ties: smallest member index).
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ordered;
    for (auto& [c, pts] : members) {
        std::sort(pts.begin(), pts.end());
        ordered.emplace_back(c, std::move(pts));
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
        return a.second.front() < b.second.front();
    });
    for (std::size_t label = 0; label < ordered.size(); ++label) {
        for (std::size_t p : ordered[label].second) out.labels[p] = static_cast<int>(label);
        out.sizes.push_back(ordered[label].second.size());
    }
    return out;
}

std::vector<Prototype> prototypes(const EmbeddingMatrix& m, const ClusterAssignment& assignment,
                                  std::size_t k) {
    if (assignment.labels.size() != m.rows()) {
        throw DataError("prototypes: assignment does not match matrix");
    }
    std::vector<Prototype> out;
    const std::size_t c_total = assignment.sizes.size();
    for (std::size_t c = 0; c < std::min(k, c_total); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
            if (assignment.labels[i] == static_cast<int>(c)) members.push_back(i);
        }
        std::vector<double> centroid(m.dim(), 0.0);
        for (std::size_t i : members) {
            for (std::size_t d = 0; d < m.dim(); ++d) centroid[d] += m.vectors[i][d];
        }
        for (double& v : centroid) v /= static_cast<double>(members.size());

        std::size_t best = members.front();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i : members) {
            double dist = euclidean(m.vectors[i], centroid);
            bool better = dist < best_dist ||
                          (dist == best_dist && m.ids[i] < m.ids[best]);
            if (better) {
                best = i;
                best_dist = dist;
            }
        }
        out.push_back({static_cast<int>(c), m.ids[best]});
    }
    return out;
}

}  // namespace claimpipe
