#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace recon {

/// Fixed-length bit vector used for code words and messages.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(const std::string& bits);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (b) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    std::size_t distance(const BitVec& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] ^ o.w_[i]);
        return c;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
    friend bool operator<(const BitVec& a, const BitVec& b);  // lexicographic by bit index

    std::string str() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace recon
