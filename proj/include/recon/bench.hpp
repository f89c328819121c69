#pragma once

#include <cstdint>
#include <string>

#include "recon/io.hpp"

namespace recon {

// Corpus document: {"kind": "bench_corpus", "entries": [...]}. Each entry
// names a generator family, an algorithm and an instance count, plus
// family-specific params:
//   gnp                 {"n": int, "p": "num/den"}
//   star                {"n": int}           i-th instance uses n + i
//   clique              {"n": int}           i-th instance uses n + i
//   complete-bipartite  {"left": int, "right": int}   i-th uses right + i
//   planted-csp         {"vars": int, "q": int, "m": int}
//   cycle-coloring      {"n": int}           i-th instance uses n + 2i
// Graph families pair with algorithm "balanced-seq"; CSP families with
// "approx-maxmin", "exact-maxmin" or "approx-minlabel".
//
// CSV columns, in order:
//   family,n,m,seed,algorithm,metric,bound,optimum,status,runtime_ms
// One row per (entry, instance, seed), in that order. metric is exact (an
// integer or "num/den"); bound is the algorithm's guarantee for the row
// (blank when there is none); optimum is the closed-form peak n^2/4 on
// clique balanced-seq rows and blank otherwise; status is "ok", "violated"
// or "error:<Code>". runtime_ms comes last so byte-comparisons can strip
// it; with stable_runtime it is written as 0.

struct BenchOptions {
    int seeds = 1;
    std::uint64_t master_seed = 0;
    int threads = 0;  // 0: hardware concurrency
    bool stable_runtime = false;
    std::uint64_t cap = 1u << 20;  // state cap for exact rows
};

std::string run_bench(const json& corpus, const BenchOptions& opts);

/// The per-row seed schedule: splitmix64-style hash of (master seed, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace recon
