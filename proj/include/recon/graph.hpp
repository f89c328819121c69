#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "recon/rational.hpp"

namespace recon {

/// Undirected multigraph. Parallel edges are kept with multiplicity and
/// count separately in every cut and degree; self-loops are rejected.
class Graph {
public:
    Graph(std::vector<std::string> names, std::vector<std::pair<int, int>> edges);

    /// Convenience constructor with vertices named "v0".."v{n-1}".
    static Graph with_default_names(int n, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::string>& vertex_names() const { return names_; }

    std::int64_t degree(int v) const { return static_cast<std::int64_t>(adj_[v].size()); }
    std::int64_t max_degree() const;
    /// Neighbors of v, one entry per parallel edge.
    const std::vector<int>& adjacent(int v) const { return adj_[v]; }

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Strictly decreasing sequence of vertex sets S_0 = V ⊋ S_1 ⊋ ... ⊋ S_T = ∅,
/// stored as the batch of vertices removed at each step.
struct DownwardSetSequence {
    int n_vertices = 0;
    std::vector<std::vector<int>> removals;

    static DownwardSetSequence from_order(int n_vertices, const std::vector<int>& order);

    /// Flattened removal order; only meaningful when every batch is a singleton.
    std::vector<int> order() const;

    /// Throws InvalidSequence unless batches are non-empty, disjoint and
    /// exhaust all vertices.
    void validate() const;
};

/// |E[S_i, V \ S_i]| for each set of the sequence after S_0.
std::vector<std::int64_t> cuts_of_sequence(const Graph& g, const DownwardSetSequence& seq);

/// max_i |E[S_i, V \ S_i]| over the sets of the sequence (the peak cut).
std::int64_t max_cut_of_sequence(const Graph& g, const DownwardSetSequence& seq);

/// Every near-balanced bipartition (both sides at most ⌈n/2⌉) keeps the
/// combined within-side edge count at or below (1+δ)/2 of all edges.
/// Exhaustive; 2^n must stay within cap.
bool is_delta_balanced(const Graph& g, const Rational& delta, std::uint64_t cap = 1u << 20);

}  // namespace recon
