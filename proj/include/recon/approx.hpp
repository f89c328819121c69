#pragma once

#include <cstdint>

#include "recon/csp.hpp"
#include "recon/setcover.hpp"

namespace recon {

struct ApproxConfig {
    Rational epsilon{1, 100};               // target slack, 0 < ε <= 1/2
    std::uint64_t exact_fallback_cap = 1u << 20;
    std::uint64_t seed = 0;
};

/// Reconfiguration sequence between two assignments of a 2-CSP. Small state
/// spaces are solved exactly; otherwise the variables are peeled along a
/// balanced downward set sequence of the constraint graph and flipped from
/// psi_s to psi_t in that order, which keeps every step's value at least
/// 1/2 - 7*m^(-1/5) when both endpoints satisfy the instance.
ReconfigSequence approx_maxmin(const CspInstance& inst, const Assignment& psi_s,
                               const Assignment& psi_t, const ApproxConfig& cfg = {});

/// Satisfying multi-assignment sequence with peak |V| + hamming(psi_s, psi_t):
/// add every differing target symbol, then drop the replaced source symbols.
/// At most twice the optimal peak.
MultiAssignSequence approx_minlabel(const CspInstance& inst, const Assignment& psi_s,
                                    const Assignment& psi_t);

/// Cover sequence with peak |T_s ∪ T_t|: insert the missing target sets,
/// then delete the source-only ones. At most twice the optimal peak.
SetCoverSequence approx_setcover(const SetCoverInstance& inst, const std::vector<int>& t_s,
                                 const std::vector<int>& t_t);

/// val >= 1/2 - 7*m^(-1/5), compared in exact integer arithmetic.
bool value_within_approx_bound(const Rational& val, std::int64_t m);

}  // namespace recon
