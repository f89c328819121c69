#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "recon/csp.hpp"
#include "recon/tester.hpp"

namespace recon {

enum class RihCodeKind { hadamard, identity };

struct RihOptions {
    RihCodeKind code_kind = RihCodeKind::hadamard;
    std::uint64_t cap = 1u << 20;
};

/// Product of the main reduction: a 3-CSP over one selector variable, four
/// encoded copies of the source variables and four auxiliary variables, one
/// per group. Group i's constraints bind the selector, one bit of the three
/// copies other than i and auxiliary i; they accept every selector other
/// than s_i outright and otherwise require the bound bits to spell an
/// accepted word of the shared circuit.
struct RihInstance {
    CspInstance csp;
    Assignment psi_s, psi_t;
    Rational epsilon;  // value gap certified between the two endpoint classes

    int vstar = 0;
    std::array<std::vector<int>, 4> copy_vars;
    std::array<int, 4> aux_var{};
    std::array<std::vector<int>, 4> edge_groups;

    CspInstance source;
    Assignment source_s, source_t;
    RihCodeKind code_kind = RihCodeKind::hadamard;
    PhiSpec phi;  // content shared by all four groups

    std::array<Sym, 4> selector_symbol{};
    std::array<Sym, 2> bit_symbol{};
    Sym aux_symbol_base = 0;

    RihInstance(CspInstance c, CspInstance src, PhiSpec p)
        : csp(std::move(c)), source(std::move(src)), phi(std::move(p)) {}

    const BinaryCode& code() const { return phi.code; }
    int block_bits() const { return phi.block_bits; }

    /// Ascending list of the three copy groups other than `group`.
    static std::array<int, 3> copies_of_group(int group);
};

RihInstance rih_reduce(const CspInstance& source, const Assignment& psi_s,
                       const Assignment& psi_t, const RihOptions& opts = {});

/// Canonical embedding of a satisfying source assignment: selector s4, all
/// four copies encode the assignment, each auxiliary names the all-equal
/// accepted word.
Assignment rih_encode(const RihInstance& rih, const Assignment& source_psi);

/// Expands a value-1 source reconfiguration sequence into a value-1 sequence
/// of the reduced instance, one variable per step: for each source move the
/// selector walks s4, s1, s2, s3, s4 and after the walk reaches s_r the
/// bits of copy r flip to the new encoding followed by the three auxiliaries
/// of the other groups, all in ascending variable order.
ReconfigSequence completeness_sequence(const RihInstance& rih,
                                       const ReconfigSequence& source_seq);

struct SoundnessStepDiag {
    int selector = 0;            // 1..4; 0 when v* holds no selector symbol
    bool selector_valid = false;
    bool within_quarter = false;  // every read copy sits within d/4 of its decode
    bool all_satisfying = false;  // every decode satisfies the source
    bool pairwise_close = false;  // decodes pairwise differ on at most one variable
};

struct SoundnessResult {
    ReconfigSequence decoded;  // contiguous duplicates removed
    bool all_valid = false;    // valid value-1 source sequence between the endpoints
    std::vector<SoundnessStepDiag> diags;
};

/// Per step, reads the three copies the selector does not excuse, decodes
/// each to the nearest source assignment (ties to the smallest in enumeration
/// order) and keeps the majority, then strips contiguous repeats.
SoundnessResult soundness_decode(const RihInstance& rih, const ReconfigSequence& seq,
                                 std::uint64_t cap = 1u << 20);

}  // namespace recon
