#include "recon/code.hpp"

#include <bit>

#include "recon/error.hpp"

namespace recon {

BinaryCode::BinaryCode(Kind kind, int k, int n, std::int64_t d)
    : kind_(kind), k_(k), n_(n), d_(d) {
    verify_distance();
}

BinaryCode BinaryCode::hadamard(int k) {
    if (k < 1) fail(ErrorCode::BadParams, "message length must be positive");
    if (k > 14) fail(ErrorCode::TooLarge, "hadamard code block length 2^k exceeds 2^14");
    return BinaryCode(Kind::hadamard, k, 1 << k, std::int64_t{1} << (k - 1));
}

BinaryCode BinaryCode::identity(int k) {
    if (k < 1) fail(ErrorCode::BadParams, "message length must be positive");
    if (k > 30) fail(ErrorCode::TooLarge, "identity code length exceeds 2^30");
    return BinaryCode(Kind::identity, k, k, 1);
}

BinaryCode default_code(int message_bits) { return BinaryCode::hadamard(message_bits); }

BitVec BinaryCode::encode(const BitVec& msg) const {
    if (static_cast<int>(msg.size()) != k_)
        fail(ErrorCode::BadParams, "message length mismatch");
    if (kind_ == Kind::identity) return msg;
    std::uint64_t y = msg.words().empty() ? 0 : msg.words()[0];
    BitVec out(n_);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k_); ++x)
        out.set(x, std::popcount(y & x) & 1);
    return out;
}

std::optional<BitVec> BinaryCode::exact_decode(const BitVec& word) const {
    if (static_cast<int>(word.size()) != n_)
        fail(ErrorCode::BadParams, "block length mismatch");
    if (kind_ == Kind::identity) return word;
    BitVec msg(k_);
    for (int i = 0; i < k_; ++i) msg.set(i, word.get(std::size_t{1} << i));
    if (encode(msg) != word) return std::nullopt;
    return msg;
}

BitVec BinaryCode::nearest_decode(const BitVec& word) const {
    if (static_cast<int>(word.size()) != n_)
        fail(ErrorCode::BadParams, "block length mismatch");
    if (kind_ == Kind::identity) return word;
    BitVec best;
    std::size_t best_dist = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << k_); ++y) {
        BitVec msg(k_);
        for (int i = 0; i < k_; ++i) msg.set(i, (y >> i) & 1);
        std::size_t dist = encode(msg).distance(word);
        if (y == 0 || dist < best_dist) {
            best = msg;
            best_dist = dist;
        }
    }
    return best;
}

void BinaryCode::verify_distance() const {
    // linear in both kinds, so the distance is the least nonzero weight
    std::int64_t least = n_ + 1;
    if (kind_ == Kind::identity) {
        least = 1;  // unit messages have weight 1 and nonzero words weight >= 1
    } else {
        for (std::uint64_t y = 1; y < (std::uint64_t{1} << k_); ++y) {
            BitVec msg(k_);
            for (int i = 0; i < k_; ++i) msg.set(i, (y >> i) & 1);
            least = std::min<std::int64_t>(least, encode(msg).popcount());
        }
    }
    if (least != d_) fail(ErrorCode::BadParams, "code distance check failed");
}

// ---- LabelBitMap ------------------------------------------------------------

LabelBitMap::LabelBitMap(std::size_t alphabet_size) : q_(alphabet_size) {
    if (q_ == 0) fail(ErrorCode::BadParams, "empty alphabet");
    width_ = 1;
    while ((std::size_t{1} << width_) < q_) ++width_;
}

void LabelBitMap::write(BitVec& dst, std::size_t chunk, Sym s) const {
    if (s < 0 || static_cast<std::size_t>(s) >= q_)
        fail(ErrorCode::AlphabetMismatch, "symbol outside the alphabet");
    for (int j = 0; j < width_; ++j) dst.set(chunk * width_ + j, (s >> j) & 1);
}

std::optional<Sym> LabelBitMap::read(const BitVec& src, std::size_t chunk) const {
    std::size_t v = 0;
    for (int j = 0; j < width_; ++j)
        if (src.get(chunk * width_ + j)) v |= std::size_t{1} << j;
    if (v >= q_) return std::nullopt;
    return static_cast<Sym>(v);
}

}  // namespace recon
