#include "recon/gen.hpp"

#include <algorithm>
#include <string>

namespace recon {

namespace {

std::vector<std::string> numbered(const char* prefix, int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

std::vector<std::string> digit_alphabet(int q) {
    std::vector<std::string> syms;
    syms.reserve(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) syms.push_back(std::to_string(i));
    return syms;
}

bool coin_with_odds(std::mt19937_64& rng, const Rational& p) {
    // r/2^64 < num/den, compared exactly in 128 bits
    const std::uint64_t r = rng();
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(r) * static_cast<unsigned __int128>(p.den);
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(p.num) << 64;
    return lhs < rhs;
}

}  // namespace

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) fail(ErrorCode::BadParams, "rand_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r > limit);
    return r % bound;
}

Graph gen_gnp(int n, const Rational& p, std::uint64_t seed) {
    if (n < 1) fail(ErrorCode::BadParams, "gnp needs n >= 1");
    if (p < Rational(0) || p > Rational(1)) fail(ErrorCode::BadParams, "gnp needs 0 <= p <= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin_with_odds(rng, p)) edges.emplace_back(u, v);
    return Graph(numbered("v", n), std::move(edges));
}

Graph gen_star(int n) {
    if (n < 1) fail(ErrorCode::BadParams, "star needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Graph(numbered("v", n), std::move(edges));
}

Graph gen_clique(int n) {
    if (n < 1) fail(ErrorCode::BadParams, "clique needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(numbered("v", n), std::move(edges));
}

Graph gen_complete_bipartite(int left, int right) {
    if (left < 1 || right < 1)
        fail(ErrorCode::BadParams, "complete-bipartite needs both sides non-empty");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < left; ++u)
        for (int v = 0; v < right; ++v) edges.emplace_back(u, left + v);
    return Graph(numbered("v", left + right), std::move(edges));
}

PlantedCsp gen_planted_csp(int vars, int alphabet, int constraints, std::uint64_t seed) {
    if (vars < 2 || alphabet < 1 || constraints < 0)
        fail(ErrorCode::BadParams, "planted-csp needs >= 2 variables and a non-empty alphabet");
    std::mt19937_64 rng(seed);
    const int q = alphabet;

    Assignment psi_s, psi_t;
    for (int v = 0; v < vars; ++v) {
        psi_s.vals.push_back(static_cast<Sym>(rand_below(rng, static_cast<std::uint64_t>(q))));
        psi_t.vals.push_back(static_cast<Sym>(rand_below(rng, static_cast<std::uint64_t>(q))));
    }

    std::vector<Constraint> cons;
    cons.reserve(static_cast<std::size_t>(constraints));
    for (int c = 0; c < constraints; ++c) {
        const int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(vars)));
        int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(vars - 1)));
        if (v >= u) ++v;
        Constraint con;
        con.scope = {u, v};
        for (Sym a = 0; a < q; ++a)
            for (Sym b = 0; b < q; ++b) {
                const bool planted = (a == psi_s.vals[u] && b == psi_s.vals[v]) ||
                                     (a == psi_t.vals[u] && b == psi_t.vals[v]);
                if (planted || (rng() & 1)) {
                    con.allowed.push_back(a);
                    con.allowed.push_back(b);
                }
            }
        cons.push_back(std::move(con));
    }
    CspInstance inst(numbered("x", vars), digit_alphabet(q), 2, std::move(cons));
    return PlantedCsp{std::move(inst), std::move(psi_s), std::move(psi_t)};
}

PlantedCsp gen_cycle_coloring(int n) {
    if (n < 4 || n % 2 != 0)
        fail(ErrorCode::BadParams, "cycle-coloring needs an even cycle length >= 4");
    std::vector<Constraint> cons;
    cons.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Constraint con;
        con.scope = {i, (i + 1) % n};
        con.allowed = {0, 1, 1, 0};  // the two bichromatic pairs
        cons.push_back(std::move(con));
    }
    Assignment psi_s, psi_t;
    for (int i = 0; i < n; ++i) {
        psi_s.vals.push_back(static_cast<Sym>(i % 2));
        psi_t.vals.push_back(static_cast<Sym>(1 - i % 2));
    }
    CspInstance inst(numbered("x", n), digit_alphabet(2), 2, std::move(cons));
    return PlantedCsp{std::move(inst), std::move(psi_s), std::move(psi_t)};
}

CspInstance gen_random_csp(int vars, int alphabet, int constraints, std::uint64_t seed) {
    if (vars < 2 || alphabet < 1 || constraints < 0)
        fail(ErrorCode::BadParams, "random-csp needs >= 2 variables and a non-empty alphabet");
    std::mt19937_64 rng(seed);
    const int q = alphabet;
    std::vector<Constraint> cons;
    cons.reserve(static_cast<std::size_t>(constraints));
    for (int c = 0; c < constraints; ++c) {
        const int u = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(vars)));
        int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(vars - 1)));
        if (v >= u) ++v;
        Constraint con;
        con.scope = {u, v};
        for (Sym a = 0; a < q; ++a)
            for (Sym b = 0; b < q; ++b)
                if (rng() & 1) {
                    con.allowed.push_back(a);
                    con.allowed.push_back(b);
                }
        cons.push_back(std::move(con));
    }
    return CspInstance(numbered("x", vars), digit_alphabet(q), 2, std::move(cons));
}

}  // namespace recon
