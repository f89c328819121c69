#include "recon/graph.hpp"

#include <algorithm>

#include "recon/error.hpp"

namespace recon {

Graph::Graph(std::vector<std::string> names, std::vector<std::pair<int, int>> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
    const int n = vertex_count();
    adj_.assign(n, {});
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
        if (u == v) fail(ErrorCode::BadParams, "self-loops are not allowed");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
}

Graph Graph::with_default_names(int n, std::vector<std::pair<int, int>> edges) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return Graph(std::move(names), std::move(edges));
}

std::int64_t Graph::max_degree() const {
    std::int64_t d = 0;
    for (int v = 0; v < vertex_count(); ++v) d = std::max(d, degree(v));
    return d;
}

DownwardSetSequence DownwardSetSequence::from_order(int n_vertices,
                                                    const std::vector<int>& order) {
    DownwardSetSequence s;
    s.n_vertices = n_vertices;
    s.removals.reserve(order.size());
    for (int v : order) s.removals.push_back({v});
    return s;
}

std::vector<int> DownwardSetSequence::order() const {
    std::vector<int> out;
    out.reserve(removals.size());
    for (const auto& batch : removals)
        for (int v : batch) out.push_back(v);
    return out;
}

void DownwardSetSequence::validate() const {
    std::vector<char> seen(n_vertices, 0);
    int total = 0;
    for (const auto& batch : removals) {
        if (batch.empty())
            fail(ErrorCode::InvalidSequence, "downward sequence step removes nothing");
        for (int v : batch) {
            if (v < 0 || v >= n_vertices)
                fail(ErrorCode::IndexOutOfRange, "removed vertex out of range");
            if (seen[v]) fail(ErrorCode::InvalidSequence, "vertex removed twice");
            seen[v] = 1;
            ++total;
        }
    }
    if (total != n_vertices)
        fail(ErrorCode::InvalidSequence, "downward sequence does not empty the vertex set");
}

std::vector<std::int64_t> cuts_of_sequence(const Graph& g, const DownwardSetSequence& seq) {
    if (seq.n_vertices != g.vertex_count())
        fail(ErrorCode::BadParams, "sequence built for a different vertex count");
    seq.validate();
    std::vector<char> inside(g.vertex_count(), 1);
    std::vector<std::int64_t> cuts;
    cuts.reserve(seq.removals.size());
    std::int64_t cut = 0;  // S_0 = V has empty cut
    for (const auto& batch : seq.removals) {
        for (int v : batch) {
            inside[v] = 0;
            for (int u : g.adjacent(v)) cut += inside[u] ? 1 : -1;
        }
        cuts.push_back(cut);  // only the sets of the sequence count
    }
    return cuts;
}

std::int64_t max_cut_of_sequence(const Graph& g, const DownwardSetSequence& seq) {
    std::int64_t peak = 0;
    for (std::int64_t c : cuts_of_sequence(g, seq)) peak = std::max(peak, c);
    return peak;
}

bool is_delta_balanced(const Graph& g, const Rational& delta, std::uint64_t cap) {
    const int n = g.vertex_count();
    if (n > 62 || (std::uint64_t{1} << n) > cap)
        fail(ErrorCode::TooLarge, "partition space exceeds cap");
    const std::int64_t m = g.edge_count();
    const int half_up = (n + 1) / 2;
    // within-side total w must satisfy 2*w <= (1+delta)*m, exactly in rationals
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int size1 = std::popcount(mask);
        if (size1 > half_up || n - size1 > half_up) continue;
        std::int64_t within = 0;
        for (const auto& [u, v] : g.edges())
            if (((mask >> u) & 1) == ((mask >> v) & 1)) ++within;
        if (Rational(2 * within) > (Rational(1) + delta) * Rational(m)) return false;
    }
    return true;
}

}  // namespace recon
