#include "recon/balanced.hpp"

#include <algorithm>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "recon/error.hpp"

namespace recon {

using boost::multiprecision::cpp_int;

// ---- DegreeBound ------------------------------------------------------------

DegreeBound DegreeBound::fixed(std::int64_t delta) {
    if (delta < 0) fail(ErrorCode::BadParams, "negative degree bound");
    DegreeBound b;
    b.canonical_ = false;
    b.value_ = delta;
    return b;
}

DegreeBound DegreeBound::canonical(std::int64_t reference_m) {
    if (reference_m < 0) fail(ErrorCode::BadParams, "negative edge count");
    DegreeBound b;
    b.canonical_ = true;
    b.value_ = reference_m;
    return b;
}

bool DegreeBound::degree_exceeds(std::int64_t deg) const {
    if (!canonical_) return deg > value_;
    // deg > 2*m^(3/5)  <=>  deg^5 > 32*m^3
    cpp_int d = deg;
    cpp_int m = value_;
    return d * d * d * d * d > 32 * m * m * m;
}

bool DegreeBound::side_degree_ok(std::int64_t degsum, std::int64_t m1) const {
    std::int64_t x = degsum - m1;
    if (x <= 0) return true;
    cpp_int xs = x;
    cpp_int m1s = m1;
    if (!canonical_) {
        // x <= 2*sqrt(m1*Δ)  <=>  x^2 <= 4*m1*Δ
        return xs * xs <= 4 * m1s * cpp_int(value_);
    }
    // with Δ = 2*m^(3/5):  x^2 <= 8*m1*m^(3/5)  <=>  x^10 <= 8^5 * m1^5 * m^3
    cpp_int m = value_;
    cpp_int x2 = xs * xs;
    cpp_int x10 = x2 * x2 * x2 * x2 * x2;
    cpp_int m1_5 = m1s * m1s * m1s * m1s * m1s;
    return x10 <= 32768 * m1_5 * m * m * m;
}

// ---- random_balanced_partition ------------------------------------------------

namespace {

bool cross_bound_ok(std::int64_t cross, std::int64_t m) {
    // cross <= m/2 + sqrt(m)  <=>  (2*cross - m) <= 0 or (2*cross - m)^2 <= 4*m
    std::int64_t x = 2 * cross - m;
    if (x <= 0) return true;
    return static_cast<__int128>(x) * x <= static_cast<__int128>(4) * m;
}

}  // namespace

BalancedPartition random_balanced_partition(const Graph& g, const DegreeBound& bound,
                                            std::uint64_t seed, int max_attempts) {
    const int n = g.vertex_count();
    const std::int64_t m = g.edge_count();
    for (int v = 0; v < n; ++v)
        if (bound.degree_exceeds(g.degree(v)))
            fail(ErrorCode::BadParams, "graph has a vertex above the degree bound");

    std::mt19937_64 rng(seed);
    BalancedPartition p;
    p.side.resize(n);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        for (int v = 0; v < n; ++v) p.side[v] = static_cast<char>(rng() & 1);
        p.cross = 0;
        p.degsum[0] = p.degsum[1] = 0;
        for (const auto& [u, v] : g.edges())
            if (p.side[u] != p.side[v]) ++p.cross;
        for (int v = 0; v < n; ++v) p.degsum[p.side[v]] += g.degree(v);
        if (cross_bound_ok(p.cross, m) && bound.side_degree_ok(p.degsum[0], m) &&
            bound.side_degree_ok(p.degsum[1], m)) {
            p.attempts = attempt;
            return p;
        }
    }
    fail(ErrorCode::RetriesExhausted, "no admissible partition after " +
                                          std::to_string(max_attempts) + " draws");
}

// ---- greedy sequence ----------------------------------------------------------

namespace {

DownwardSetSequence greedy_from_partition(const Graph& g, const BalancedPartition& part) {
    const int n = g.vertex_count();
    std::vector<int> order(n, -1);

    // edges from v into the current inside set
    std::vector<std::int64_t> cnt_in(n, 0);
    std::vector<char> inside(n, 0);

    // Phase 1: peel side 0, choosing each removal so that the set just before
    // it has the smallest cut. Built backwards: grow inside from side 1 to V,
    // always adding the vertex that increases the cut least.
    int n1 = 0;
    for (int v = 0; v < n; ++v) {
        if (part.side[v]) {
            inside[v] = 1;
        } else {
            ++n1;
        }
    }
    for (int v = 0; v < n; ++v) {
        cnt_in[v] = 0;
        for (int u : g.adjacent(v))
            if (inside[u]) ++cnt_in[v];
    }
    std::vector<char> placed(n, 0);
    for (int t = n1 - 1; t >= 0; --t) {
        int best = -1;
        std::int64_t best_delta = 0;
        for (int v = 0; v < n; ++v) {
            if (part.side[v] || placed[v]) continue;
            std::int64_t delta = g.degree(v) - 2 * cnt_in[v];
            if (best < 0 || delta < best_delta) { best = v; best_delta = delta; }
        }
        order[t] = best;
        placed[best] = 1;
        inside[best] = 1;
        for (int u : g.adjacent(best)) ++cnt_in[u];
    }

    // Phase 2: peel side 1, removing the vertex whose removal leaves the
    // smallest cut. inside == V here, so cnt_in is exact again.
    std::fill(inside.begin(), inside.end(), 1);
    for (int v = 0; v < n; ++v) {
        cnt_in[v] = 0;
        for (int u : g.adjacent(v))
            if (inside[u]) ++cnt_in[v];
    }
    // fast-forward: phase 1 removals leave side 1 inside
    for (int t = 0; t < n1; ++t) {
        int v = order[t];
        inside[v] = 0;
        for (int u : g.adjacent(v)) --cnt_in[u];
    }
    for (int t = n1; t < n; ++t) {
        int best = -1;
        std::int64_t best_delta = 0;
        for (int v = 0; v < n; ++v) {
            if (!inside[v]) continue;
            std::int64_t delta = 2 * cnt_in[v] - g.degree(v);
            if (best < 0 || delta < best_delta) { best = v; best_delta = delta; }
        }
        order[t] = best;
        inside[best] = 0;
        for (int u : g.adjacent(best)) --cnt_in[u];
    }

    return DownwardSetSequence::from_order(n, order);
}

DownwardSetSequence greedy_core(const Graph& g, const DegreeBound& bound, std::uint64_t seed) {
    BalancedPartition part = random_balanced_partition(g, bound, seed);
    return greedy_from_partition(g, part);
}

}  // namespace

DownwardSetSequence greedy_low_degree_sequence(const Graph& g, std::int64_t delta,
                                               std::uint64_t seed) {
    return greedy_core(g, DegreeBound::fixed(delta), seed);
}

// ---- full sequence -------------------------------------------------------------

DownwardSetSequence full_balanced_sequence(const Graph& g, std::uint64_t seed) {
    const int n = g.vertex_count();
    const std::int64_t m = g.edge_count();

    DownwardSetSequence seq;
    seq.n_vertices = n;

    if (m == 0) {
        for (int v = 0; v < n; ++v) seq.removals.push_back({v});
        return seq;
    }

    DegreeBound bound = DegreeBound::canonical(m);
    std::vector<char> high(n, 0);
    std::vector<int> low_vertices;
    for (int v = 0; v < n; ++v) {
        if (bound.degree_exceeds(g.degree(v))) high[v] = 1;
        else low_vertices.push_back(v);
    }

    if (low_vertices.empty()) {
        // every vertex is high-degree, which forces m below a small constant;
        // any order keeps the cut under the claimed peak
        for (int v = 0; v < n; ++v) seq.removals.push_back({v});
        return seq;
    }

    // subgraph induced on the low-degree vertices
    std::vector<int> sub_index(n, -1);
    for (std::size_t i = 0; i < low_vertices.size(); ++i) sub_index[low_vertices[i]] = static_cast<int>(i);
    std::vector<std::string> sub_names;
    sub_names.reserve(low_vertices.size());
    for (int v : low_vertices) sub_names.push_back(g.vertex_names()[v]);
    std::vector<std::pair<int, int>> sub_edges;
    for (const auto& [u, v] : g.edges())
        if (!high[u] && !high[v]) sub_edges.emplace_back(sub_index[u], sub_index[v]);
    Graph sub(std::move(sub_names), std::move(sub_edges));

    DownwardSetSequence low_seq = greedy_core(sub, bound, seed);

    // replay on the full graph, dropping a high-degree vertex as soon as at
    // most half of its low-degree edges still point inside
    std::vector<char> removed(n, 0);
    std::vector<std::int64_t> low_inside(n, 0);  // edges to low vertices still inside
    for (int v = 0; v < n; ++v)
        if (high[v])
            for (int u : g.adjacent(v))
                if (!high[u]) ++low_inside[v];
    std::vector<std::int64_t> low_degree = low_inside;  // |E[v, V_low]|, fixed

    auto run_corrections = [&]() {
        bool again = true;
        while (again) {
            again = false;
            for (int v = 0; v < n; ++v) {
                if (!high[v] || removed[v]) continue;
                if (2 * low_inside[v] <= low_degree[v]) {
                    removed[v] = 1;
                    seq.removals.push_back({v});
                    again = true;
                    break;
                }
            }
        }
    };

    for (int sub_v : low_seq.order()) {
        int v = low_vertices[sub_v];
        removed[v] = 1;
        seq.removals.push_back({v});
        for (int u : g.adjacent(v))
            if (high[u]) --low_inside[u];
        run_corrections();
    }

    // the last correction sees no low vertices inside and clears the rest
    for (int v = 0; v < n; ++v)
        if (!removed[v]) fail(ErrorCode::BadParams, "replay left a vertex behind");
    return seq;
}

bool cut_within_full_bound(std::int64_t cut, std::int64_t m) {
    // 2*cut - m <= 14*m^(4/5)  <=>  (2*cut - m)^5 <= 14^5 * m^4
    const std::int64_t x = 2 * cut - m;
    if (x <= 0) return true;
    const cpp_int m4 = cpp_int(m) * m * m * m;
    cpp_int x5 = cpp_int(x);
    x5 = x5 * x5 * x5 * x5 * x5;
    return x5 <= 537824 * m4;  // 14^5
}

bool cut_within_greedy_bound(std::int64_t cut, std::int64_t m, std::int64_t delta) {
    // 2*cut - m - 2*delta <= 2*sqrt(m*delta)  <=>  square both sides
    const std::int64_t x = 2 * cut - m - 2 * delta;
    if (x <= 0) return true;
    return cpp_int(x) * x <= 4 * cpp_int(m) * delta;
}

}  // namespace recon
