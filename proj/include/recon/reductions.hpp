#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "recon/csp.hpp"
#include "recon/setcover.hpp"

namespace recon {

struct GadgetOutput {
    CspInstance inst;
    Assignment psi_s;
    Assignment psi_t;
};

/// Tags every source symbol with a bit and adds a fresh starred symbol. On
/// original constraints two starred-or-mixed symbols must agree on the bit,
/// untagged pairs defer to the source constraint. Endpoints are the all-star
/// assignments with bits 0 and 1: when the source is satisfiable the two
/// connect at value 1, and any high-value sequence between them crosses a
/// near-balanced partition of the variables.
GadgetOutput gap_to_maxmin(const CspInstance& source);

/// Same gadget after completing the constraint graph with all-allowing
/// constraints on non-adjacent pairs, which transfers the hardness to the
/// minimizing direction.
GadgetOutput gap_to_minmax(const CspInstance& source);

/// How a 2-CSP maps onto a set cover instance: one block of ground points
/// per constraint (a hypercube indexed by its allowed pairs) and one set per
/// (variable, symbol) pair.
struct SetCoverCorrespondence {
    struct EdgeBlock {
        int u, v;
        std::vector<std::pair<Sym, Sym>> pairs;  // allowed pairs, sorted
        std::int64_t offset;                     // first ground point of the block
    };

    std::size_t var_count = 0;
    std::size_t alphabet_size = 0;
    std::vector<EdgeBlock> edges;
    std::int64_t universe = 0;

    int set_index(int v, Sym s) const { return static_cast<int>(v * alphabet_size + s); }
};

/// Builds the set cover instance whose covers are exactly the satisfying
/// multi-assignments: a point of edge block e, read as a bit per allowed pair
/// (a,b), lies in S_{u,a} where its bit is 1 and in S_{v,b} where it is 0.
std::pair<SetCoverInstance, SetCoverCorrespondence> csp_to_setcover(
    const CspInstance& source, std::uint64_t per_edge_cap = 1u << 16);

SetCoverSequence multiassign_seq_to_cover_seq(const SetCoverCorrespondence& corr,
                                              const MultiAssignSequence& seq);

MultiAssignSequence cover_seq_to_multiassign_seq(const SetCoverCorrespondence& corr,
                                                 const SetCoverSequence& seq);

}  // namespace recon
