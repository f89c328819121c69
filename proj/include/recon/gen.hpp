#pragma once

#include <cstdint>
#include <random>

#include "recon/csp.hpp"
#include "recon/graph.hpp"
#include "recon/rational.hpp"

namespace recon {

// Instance generators. Every family is a pure function of its parameters
// and, where present, the seed; vertex and variable names are always
// "v0".."v{n-1}" / "x0".."x{n-1}".

/// Each unordered pair becomes an edge independently with probability p.
Graph gen_gnp(int n, const Rational& p, std::uint64_t seed);

/// Star: v0 joined to every other vertex.
Graph gen_star(int n);

/// Complete graph on n vertices.
Graph gen_clique(int n);

/// Complete bipartite graph; the first `left` vertices form one side.
Graph gen_complete_bipartite(int left, int right);

/// Binary 2-CSP with planted value-1 endpoints.
struct PlantedCsp {
    CspInstance csp;
    Assignment psi_s, psi_t;
};

/// Random 2-CSP whose every constraint allows the pairs both planted
/// endpoints induce, plus further pairs with probability 1/2 each.
PlantedCsp gen_planted_csp(int vars, int alphabet, int constraints, std::uint64_t seed);

/// Proper 2-coloring instance on an even cycle; the endpoints are the two
/// alternating colorings.
PlantedCsp gen_cycle_coloring(int n);

/// Random 2-CSP without planting: random distinct scopes, each pair allowed
/// with probability 1/2 (constraints may end up unsatisfiable).
CspInstance gen_random_csp(int vars, int alphabet, int constraints, std::uint64_t seed);

/// Uniform draw from {0,..,bound-1} by rejection; bit-reproducible across
/// platforms, unlike the standard distributions.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace recon
