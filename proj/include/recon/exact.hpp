#pragma once

#include <cstdint>

#include "recon/csp.hpp"
#include "recon/graph.hpp"

namespace recon {

struct MaxMinResult {
    Rational optimum;
    ReconfigSequence witness;
    std::uint64_t explored_states = 0;
};

struct MinLabResult {
    std::int64_t optimum = 0;
    MultiAssignSequence witness;
    std::uint64_t explored_states = 0;
};

struct DownwardResult {
    std::int64_t optimum = 0;
    DownwardSetSequence witness;
    std::uint64_t explored_states = 0;
};

/// Best achievable minimum step value over all reconfiguration sequences from
/// psi_s to psi_t, by descending threshold sweep with BFS connectivity checks.
/// The witness attains the optimum; ties are broken by BFS order with
/// neighbors enumerated in ascending (variable, symbol) order.
MaxMinResult exact_maxmin(const CspInstance& inst, const Assignment& psi_s,
                          const Assignment& psi_t, std::uint64_t cap = 1u << 20);

/// Smallest achievable peak size over all satisfying multi-assignment
/// sequences between two satisfying assignments of a 2-CSP, by budget sweep.
MinLabResult exact_minlab(const CspInstance& inst, const Assignment& psi_s,
                          const Assignment& psi_t, std::uint64_t cap = 1u << 20);

/// Minimal possible peak cut over all single-removal downward set sequences,
/// by subset DP.
DownwardResult optimal_downward_sequence(const Graph& g, std::uint64_t cap = 1u << 20);

}  // namespace recon
