#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "recon/code.hpp"
#include "recon/csp.hpp"

namespace recon {

/// Circuit over three equal blocks of binary variables: it accepts exactly
/// the words whose blocks are codewords decoding (through the label map) to
/// satisfying assignments of the source instance that pairwise differ on at
/// most one variable. The four groups of the main reduction share this
/// content; `guarded_group` only records which group a copy was built for.
struct PhiSpec {
    int guarded_group;                // 1..4
    int block_bits;                   // n, per block; the word has 3n bits
    BinaryCode code;
    LabelBitMap label_map;
    CspInstance source;

    std::vector<BitVec> satisfying;               // accepted words, enumeration order
    std::vector<std::array<int, 3>> triples;      // satisfying-assignment indices, lex sorted
    std::vector<Assignment> source_satisfying;    // lex-ordered satisfying assignments

    PhiSpec(int group, BinaryCode c, LabelBitMap lm, CspInstance src)
        : guarded_group(group),
          block_bits(c.block_bits()),
          code(std::move(c)),
          label_map(std::move(lm)),
          source(std::move(src)) {}

    bool accepts(const BitVec& word) const;

    /// Index of (i, j, k) in the accepted-word enumeration.
    int triple_index(int i, int j, int k) const;
};

PhiSpec build_phi(const CspInstance& source, const BinaryCode& code, const LabelBitMap& pi,
                  int guarded_group, std::uint64_t cap = 1u << 20);

/// Assignment-tester output: a 2-CSP binding every word bit to one shared
/// auxiliary variable whose alphabet enumerates the accepted words. Rejection
/// quality gamma is exactly 1: for any word bits, the best auxiliary choice
/// violates precisely the bits' Hamming distance to the nearest accepted word.
struct TesterOutput {
    CspInstance csp;
    int aux_var = 0;                  // variable index of the auxiliary
    Rational gamma{1, 1};
    std::size_t accepted_count = 0;   // aux alphabet size

    /// Auxiliary symbol encoding a given accepted word (the completeness
    /// witness for that word).
    Sym aux_symbol_for(int accepted_index) const;
};

TesterOutput brute_force_tester(const PhiSpec& phi);

}  // namespace recon
