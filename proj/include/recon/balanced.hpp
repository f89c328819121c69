#pragma once

#include <cstdint>
#include <vector>

#include "recon/graph.hpp"

namespace recon {

/// Degree threshold used by the partition step. Either a concrete integer or
/// the canonical 2*m^(3/5) of a reference edge count; the latter is kept
/// symbolic so every comparison against it is exact integer arithmetic
/// rather than floating point.
class DegreeBound {
public:
    static DegreeBound fixed(std::int64_t delta);
    static DegreeBound canonical(std::int64_t reference_m);

    /// deg > Δ
    bool degree_exceeds(std::int64_t deg) const;
    /// degsum <= m1 + 2*sqrt(m1*Δ), the per-side degree-mass bound
    bool side_degree_ok(std::int64_t degsum, std::int64_t m1) const;

    bool is_canonical() const { return canonical_; }
    std::int64_t fixed_value() const { return value_; }

private:
    bool canonical_ = false;
    std::int64_t value_ = 0;  // Δ itself, or the reference m

    DegreeBound() = default;
};

struct BalancedPartition {
    std::vector<char> side;        // 0 or 1 per vertex
    std::int64_t cross = 0;        // |E[V1, V2]|
    std::int64_t degsum[2] = {0, 0};
    int attempts = 0;              // draws consumed, accepted one included
};

/// Samples uniform vertex sides until the draw satisfies the cross-edge bound
/// |E[V1,V2]| <= m/2 + sqrt(m) and both per-side degree-mass bounds. Needs
/// max degree <= Δ. Each draw succeeds with probability at least 1/4.
BalancedPartition random_balanced_partition(const Graph& g, const DegreeBound& bound,
                                            std::uint64_t seed, int max_attempts = 64);

/// Single-removal downward sequence through the partition's side-1 set:
/// first peels side 0 by greedily keeping the cut small, then peels side 1
/// the same way. Peak cut <= m/2 + sqrt(m*Δ) + Δ when max degree <= Δ.
DownwardSetSequence greedy_low_degree_sequence(const Graph& g, std::int64_t delta,
                                               std::uint64_t seed);

/// Downward sequence for arbitrary graphs: runs the greedy sequence on the
/// subgraph of vertices with degree <= 2*m^(3/5) and, after every removal,
/// also drops any high-degree vertex once at most half of its remaining
/// low-degree edges stay inside. Peak cut <= m/2 + 7*m^(4/5).
DownwardSetSequence full_balanced_sequence(const Graph& g, std::uint64_t seed);

/// cut <= m/2 + 7*m^(4/5), compared in exact integer arithmetic.
bool cut_within_full_bound(std::int64_t cut, std::int64_t m);

/// cut <= m/2 + sqrt(m*delta) + delta, the low-degree greedy guarantee.
bool cut_within_greedy_bound(std::int64_t cut, std::int64_t m, std::int64_t delta);

}  // namespace recon
