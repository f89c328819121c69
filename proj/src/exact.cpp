#include "recon/exact.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace recon {

namespace {

// Mixed-radix encoding of total assignments over the per-variable domains.
// Variable 0 is the fastest-varying digit.
struct StateCodec {
    const CspInstance& inst;
    std::vector<std::uint64_t> stride;
    std::vector<std::unordered_map<Sym, int>> digit;

    explicit StateCodec(const CspInstance& i) : inst(i) {
        const std::size_t n = inst.var_count();
        stride.resize(n + 1);
        stride[0] = 1;
        digit.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& dom = inst.domain(static_cast<int>(v));
            stride[v + 1] = stride[v] * dom.size();
            for (std::size_t d = 0; d < dom.size(); ++d)
                digit[v][dom[d]] = static_cast<int>(d);
        }
    }

    std::uint64_t states() const { return stride.back(); }

    std::uint64_t encode(const Assignment& psi) const {
        std::uint64_t idx = 0;
        for (std::size_t v = 0; v < digit.size(); ++v)
            idx += stride[v] * static_cast<std::uint64_t>(digit[v].at(psi.vals[v]));
        return idx;
    }

    Assignment decode(std::uint64_t idx) const {
        Assignment psi;
        psi.vals.resize(digit.size());
        for (std::size_t v = 0; v < digit.size(); ++v) {
            const auto& dom = inst.domain(static_cast<int>(v));
            psi.vals[v] = dom[idx % dom.size()];
            idx /= dom.size();
        }
        return psi;
    }
};

}  // namespace

MaxMinResult exact_maxmin(const CspInstance& inst, const Assignment& psi_s,
                          const Assignment& psi_t, std::uint64_t cap) {
    const std::int64_t sat_s = satisfied_count(inst, psi_s);
    const std::int64_t sat_t = satisfied_count(inst, psi_t);
    const std::int64_t m = static_cast<std::int64_t>(inst.constraints().size());

    MaxMinResult res;
    if (psi_s == psi_t) {
        res.optimum = value(inst, psi_s);
        res.witness.steps = {psi_s};
        return res;
    }
    if (m == 0) {
        std::vector<int> order;
        for (std::size_t v = 0; v < psi_s.vals.size(); ++v)
            if (psi_s.vals[v] != psi_t.vals[v]) order.push_back(static_cast<int>(v));
        res.optimum = Rational(1);
        res.witness = direct_sequence(psi_s, psi_t, order);
        return res;
    }

    if (inst.state_count() > cap) fail(ErrorCode::TooLarge, "assignment space exceeds cap");
    StateCodec codec(inst);
    const std::uint64_t total = codec.states();

    std::vector<std::int32_t> sat(total);
    for (std::uint64_t s = 0; s < total; ++s)
        sat[s] = static_cast<std::int32_t>(satisfied_count(inst, codec.decode(s)));

    const std::uint64_t start = codec.encode(psi_s);
    const std::uint64_t goal = codec.encode(psi_t);
    constexpr std::uint64_t kNoParent = ~std::uint64_t{0};

    std::vector<std::uint64_t> parent(total);
    std::uint64_t explored = 0;

    for (std::int64_t j = std::min(sat_s, sat_t); j >= 0; --j) {
        std::fill(parent.begin(), parent.end(), kNoParent);
        std::deque<std::uint64_t> queue;
        parent[start] = start;
        queue.push_back(start);
        ++explored;
        bool found = (start == goal);
        while (!queue.empty() && !found) {
            std::uint64_t cur = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < inst.var_count() && !found; ++v) {
                const std::size_t dsz = inst.domain(static_cast<int>(v)).size();
                const std::uint64_t digit = (cur / codec.stride[v]) % dsz;
                const std::uint64_t base = cur - digit * codec.stride[v];
                for (std::size_t d = 0; d < dsz; ++d) {
                    if (d == digit) continue;
                    std::uint64_t nxt = base + d * codec.stride[v];
                    if (parent[nxt] != kNoParent || sat[nxt] < j) continue;
                    parent[nxt] = cur;
                    ++explored;
                    if (nxt == goal) { found = true; break; }
                    queue.push_back(nxt);
                }
            }
        }
        if (found) {
            std::vector<std::uint64_t> path;
            for (std::uint64_t s = goal;; s = parent[s]) {
                path.push_back(s);
                if (s == start) break;
            }
            std::reverse(path.begin(), path.end());
            res.optimum = Rational(j, m);
            for (std::uint64_t s : path) res.witness.steps.push_back(codec.decode(s));
            res.explored_states = explored;
            return res;
        }
    }
    // threshold 0 admits every state and flipping one variable at a time
    // always connects, so the sweep cannot fall through
    fail(ErrorCode::BadParams, "threshold sweep exhausted unexpectedly");
}

// ---- exact_minlab -----------------------------------------------------------

namespace {

// Multi-assignments as bitmasks: one bit per (variable, domain symbol) pair.
struct MaskLayout {
    std::vector<int> offset;  // per variable
    int bits = 0;

    explicit MaskLayout(const CspInstance& inst) {
        offset.resize(inst.var_count());
        for (std::size_t v = 0; v < inst.var_count(); ++v) {
            offset[v] = bits;
            bits += static_cast<int>(inst.domain(static_cast<int>(v)).size());
        }
    }
};

// Per-constraint digit relation for fast satisfaction tests on masks.
struct MaskRelation {
    int u, v;
    int off_u, off_v;
    std::uint64_t dom_u_mask, dom_v_mask;
    std::vector<std::uint64_t> rel;  // per digit of u: allowed digits of v

    bool satisfied(std::uint64_t mask) const {
        std::uint64_t mu = (mask >> off_u) & dom_u_mask;
        std::uint64_t mv = (mask >> off_v) & dom_v_mask;
        while (mu) {
            int a = std::countr_zero(mu);
            mu &= mu - 1;
            if (rel[a] & mv) return true;
        }
        return false;
    }
};

}  // namespace

MinLabResult exact_minlab(const CspInstance& inst, const Assignment& psi_s,
                          const Assignment& psi_t, std::uint64_t cap) {
    if (inst.arity() != 2) fail(ErrorCode::ArityError, "minimum-label search needs a 2-CSP");
    if (value(inst, psi_s) != Rational(1) || value(inst, psi_t) != Rational(1))
        fail(ErrorCode::NotSatisfying, "both endpoints must satisfy the instance");

    const int n = static_cast<int>(inst.var_count());
    MaskLayout layout(inst);
    if (layout.bits > 62 || (std::uint64_t{1} << layout.bits) > cap)
        fail(ErrorCode::TooLarge, "multi-assignment space exceeds cap");

    std::vector<std::vector<int>> digit_of(n);
    for (int v = 0; v < n; ++v) {
        const auto& dom = inst.domain(v);
        digit_of[v].assign(inst.alphabet_size(), -1);
        for (std::size_t d = 0; d < dom.size(); ++d) digit_of[v][dom[d]] = static_cast<int>(d);
    }

    std::vector<MaskRelation> rels;
    rels.reserve(inst.constraints().size());
    for (const auto& c : inst.constraints()) {
        MaskRelation r;
        r.u = c.scope[0];
        r.v = c.scope[1];
        r.off_u = layout.offset[r.u];
        r.off_v = layout.offset[r.v];
        const auto& du = inst.domain(r.u);
        const auto& dv = inst.domain(r.v);
        r.dom_u_mask = (du.size() == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << du.size()) - 1;
        r.dom_v_mask = (dv.size() == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << dv.size()) - 1;
        r.rel.assign(du.size(), 0);
        for (std::size_t a = 0; a < du.size(); ++a)
            if (std::binary_search(c.wildcard_first.begin(), c.wildcard_first.end(), du[a]))
                r.rel[a] = r.dom_v_mask;
        for (std::size_t row = 0; row < c.tuple_rows(); ++row) {
            int a = digit_of[r.u][c.allowed[2 * row]];
            int b = digit_of[r.v][c.allowed[2 * row + 1]];
            if (a >= 0 && b >= 0) r.rel[a] |= std::uint64_t{1} << b;
        }
        rels.push_back(std::move(r));
    }

    auto mask_satisfies = [&](std::uint64_t mask) {
        for (const auto& r : rels)
            if (!r.satisfied(mask)) return false;
        return true;
    };

    auto singleton_mask = [&](const Assignment& psi) {
        std::uint64_t mask = 0;
        for (int v = 0; v < n; ++v)
            mask |= std::uint64_t{1} << (layout.offset[v] + digit_of[v][psi.vals[v]]);
        return mask;
    };

    auto decode_mask = [&](std::uint64_t mask) {
        MultiAssignment m;
        m.sets.resize(n);
        for (int v = 0; v < n; ++v) {
            const auto& dom = inst.domain(v);
            for (std::size_t d = 0; d < dom.size(); ++d)
                if ((mask >> (layout.offset[v] + d)) & 1) m.sets[v].push_back(dom[d]);
        }
        return m;
    };

    const std::uint64_t start = singleton_mask(psi_s);
    const std::uint64_t goal = singleton_mask(psi_t);

    MinLabResult res;
    if (start == goal) {
        res.optimum = n;
        res.witness.steps = {decode_mask(start)};
        return res;
    }

    for (std::int64_t budget = n; budget <= 2 * static_cast<std::int64_t>(n); ++budget) {
        std::unordered_map<std::uint64_t, std::uint64_t> parent;
        std::deque<std::uint64_t> queue;
        parent.emplace(start, start);
        queue.push_back(start);
        bool found = false;
        while (!queue.empty() && !found) {
            std::uint64_t cur = queue.front();
            queue.pop_front();
            int cur_size = std::popcount(cur);
            for (int b = 0; b < layout.bits && !found; ++b) {
                std::uint64_t bit = std::uint64_t{1} << b;
                std::uint64_t nxt = cur ^ bit;
                if (!(cur & bit) && cur_size + 1 > budget) continue;
                if (parent.contains(nxt) || !mask_satisfies(nxt)) continue;
                parent.emplace(nxt, cur);
                if (nxt == goal) found = true;
                else queue.push_back(nxt);
            }
        }
        res.explored_states += parent.size();
        if (found) {
            std::vector<std::uint64_t> path;
            for (std::uint64_t s = goal;; s = parent.at(s)) {
                path.push_back(s);
                if (s == start) break;
            }
            std::reverse(path.begin(), path.end());
            res.optimum = budget;
            for (std::uint64_t s : path) res.witness.steps.push_back(decode_mask(s));
            return res;
        }
    }
    // adding all of psi_t then removing psi_s stays satisfying throughout and
    // peaks at most 2n, so the budget sweep cannot fall through
    fail(ErrorCode::BadParams, "budget sweep exhausted unexpectedly");
}

// ---- optimal_downward_sequence ----------------------------------------------

DownwardResult optimal_downward_sequence(const Graph& g, std::uint64_t cap) {
    const int n = g.vertex_count();
    if (n > 62 || (std::uint64_t{1} << n) > cap)
        fail(ErrorCode::TooLarge, "subset space exceeds cap");
    const std::uint64_t total = std::uint64_t{1} << n;

    // cut[S] = edges between S and its complement; peel the lowest vertex
    std::vector<std::int32_t> cut(total, 0), best(total, 0);
    for (std::uint64_t s = 1; s < total; ++s) {
        int v = std::countr_zero(s);
        std::uint64_t rest = s & (s - 1);
        std::int32_t c = cut[rest];
        for (int u : g.adjacent(v)) c += ((rest >> u) & 1) ? -1 : 1;
        cut[s] = c;
        // best[S]: minimal peak cut over orders emptying S, not counting cut[S]
        std::int32_t b = INT32_MAX;
        for (std::uint64_t rem = s; rem;) {
            int w = std::countr_zero(rem);
            rem &= rem - 1;
            std::uint64_t sub = s & ~(std::uint64_t{1} << w);
            b = std::min(b, std::max(cut[sub], best[sub]));
        }
        best[s] = b;
    }

    DownwardResult res;
    res.explored_states = total;
    res.optimum = (n == 0) ? 0 : best[total - 1];
    res.witness.n_vertices = n;
    std::uint64_t s = total - 1;
    while (s) {
        for (std::uint64_t rem = s;;) {
            int w = std::countr_zero(rem);
            rem &= rem - 1;
            std::uint64_t sub = s & ~(std::uint64_t{1} << w);
            if (std::max(cut[sub], best[sub]) == best[s]) {
                res.witness.removals.push_back({w});
                s = sub;
                break;
            }
        }
    }
    return res;
}

}  // namespace recon
