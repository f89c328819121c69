#pragma once

#include <cstdint>
#include <optional>

#include "recon/bitvec.hpp"
#include "recon/csp.hpp"
#include "recon/rational.hpp"

namespace recon {

/// Binary linear code with construction-time distance verification. Two
/// kinds: the Hadamard code (all inner products, distance exactly half the
/// block length) and the trivial identity code (distance 1), which keeps
/// end-to-end tests at toy sizes.
class BinaryCode {
public:
    enum class Kind { hadamard, identity };

    static BinaryCode hadamard(int k);  // n = 2^k, d = 2^(k-1)
    static BinaryCode identity(int k);  // n = k, d = 1

    Kind kind() const { return kind_; }
    int message_bits() const { return k_; }
    int block_bits() const { return n_; }
    std::int64_t distance() const { return d_; }
    Rational relative_distance() const { return Rational(d_, n_); }

    BitVec encode(const BitVec& msg) const;

    /// Message of an exact codeword, or nothing.
    std::optional<BitVec> exact_decode(const BitVec& word) const;

    /// Message whose codeword is closest to word; ties go to the smallest
    /// message (read as a little-endian integer). Exhaustive.
    BitVec nearest_decode(const BitVec& word) const;

private:
    Kind kind_;
    int k_, n_;
    std::int64_t d_;

    BinaryCode(Kind kind, int k, int n, std::int64_t d);
    void verify_distance() const;
};

/// The default code for a given message length.
BinaryCode default_code(int message_bits);

/// Fixed-width binary chunks for alphabet symbols: symbol s occupies
/// bits [chunk*width, (chunk+1)*width) little-endian. Chunks decoding to a
/// value outside the alphabet have no preimage.
class LabelBitMap {
public:
    explicit LabelBitMap(std::size_t alphabet_size);

    int width() const { return width_; }
    std::size_t alphabet_size() const { return q_; }

    void write(BitVec& dst, std::size_t chunk, Sym s) const;
    std::optional<Sym> read(const BitVec& src, std::size_t chunk) const;

private:
    std::size_t q_;
    int width_;
};

}  // namespace recon
