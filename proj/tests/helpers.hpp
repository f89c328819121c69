#pragma once

#include <utility>
#include <vector>

#include "recon/csp.hpp"

namespace recon {

// Shared builders for the suites.

inline Constraint edge_constraint(int u, int v, std::vector<std::pair<Sym, Sym>> pairs) {
    Constraint c;
    c.scope = {u, v};
    for (auto [a, b] : pairs) {
        c.allowed.push_back(a);
        c.allowed.push_back(b);
    }
    return c;
}

inline std::vector<std::string> var_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

inline std::vector<std::string> bit_alphabet() { return {"0", "1"}; }

/// Three binary variables with "different" constraints on all three pairs.
inline CspInstance triangle_neq() {
    std::vector<Constraint> cons;
    cons.push_back(edge_constraint(0, 1, {{0, 1}, {1, 0}}));
    cons.push_back(edge_constraint(1, 2, {{0, 1}, {1, 0}}));
    cons.push_back(edge_constraint(0, 2, {{0, 1}, {1, 0}}));
    return CspInstance(var_names(3), bit_alphabet(), 2, std::move(cons));
}

inline Assignment asg(std::vector<Sym> vals) { return Assignment{std::move(vals)}; }

}  // namespace recon
