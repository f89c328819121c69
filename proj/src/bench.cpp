#include "recon/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>


#include "recon/approx.hpp"
#include "recon/balanced.hpp"
#include "recon/exact.hpp"
#include "recon/gen.hpp"

namespace recon {

namespace {

std::string format_bound(double b) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", b);
    return buf;
}

struct RowSpec {
    std::size_t entry = 0;
    int instance = 0;
    int seed_index = 0;
    std::size_t index = 0;  // global row index, drives the row seed
};

struct Entry {
    std::string family;
    std::string algorithm;
    int count = 0;
    // family params; unused ones stay 0
    int n = 0, left = 0, right = 0, vars = 0, q = 0, m = 0;
    Rational p;
};

std::int64_t entry_int(const json& params, const char* key) {
    auto it = params.find(key);
    if (it == params.end() || !it->is_number_integer())
        fail(ErrorCode::ParseError, std::string("bench entry params need integer '") + key + "'");
    return it->get<std::int64_t>();
}

Entry parse_entry(const json& je) {
    if (!je.is_object()) fail(ErrorCode::ParseError, "bench entry must be an object");
    Entry e;
    auto get_string = [&](const char* key) {
        auto it = je.find(key);
        if (it == je.end() || !it->is_string())
            fail(ErrorCode::ParseError, std::string("bench entry needs string '") + key + "'");
        return it->get<std::string>();
    };
    e.family = get_string("family");
    e.algorithm = get_string("algorithm");
    auto cit = je.find("count");
    if (cit == je.end() || !cit->is_number_integer() || cit->get<std::int64_t>() < 0)
        fail(ErrorCode::ParseError, "bench entry needs a non-negative integer 'count'");
    e.count = static_cast<int>(cit->get<std::int64_t>());
    json params = je.value("params", json::object());
    if (!params.is_object()) fail(ErrorCode::ParseError, "'params' must be an object");

    const bool graph_family = e.family == "gnp" || e.family == "star" || e.family == "clique" ||
                              e.family == "complete-bipartite";
    const bool csp_family = e.family == "planted-csp" || e.family == "cycle-coloring";
    if (!graph_family && !csp_family)
        fail(ErrorCode::BadParams, "unknown bench family '" + e.family + "'");
    if (graph_family && e.algorithm != "balanced-seq")
        fail(ErrorCode::BadParams, "graph families support only 'balanced-seq'");
    if (csp_family && e.algorithm != "approx-maxmin" && e.algorithm != "exact-maxmin" &&
        e.algorithm != "approx-minlabel")
        fail(ErrorCode::BadParams,
             "csp families support 'approx-maxmin', 'exact-maxmin' or 'approx-minlabel'");

    if (e.family == "gnp") {
        e.n = static_cast<int>(entry_int(params, "n"));
        auto it = params.find("p");
        if (it == params.end() || !it->is_string())
            fail(ErrorCode::ParseError, "gnp params need string 'p'");
        e.p = Rational::parse(it->get<std::string>());
    } else if (e.family == "star" || e.family == "clique" || e.family == "cycle-coloring") {
        e.n = static_cast<int>(entry_int(params, "n"));
    } else if (e.family == "complete-bipartite") {
        e.left = static_cast<int>(entry_int(params, "left"));
        e.right = static_cast<int>(entry_int(params, "right"));
    } else {  // planted-csp
        e.vars = static_cast<int>(entry_int(params, "vars"));
        e.q = static_cast<int>(entry_int(params, "q"));
        e.m = static_cast<int>(entry_int(params, "m"));
    }
    return e;
}

struct RowOut {
    std::string family, algorithm;
    std::int64_t n = 0, m = 0;
    std::uint64_t seed = 0;
    std::string metric, bound, optimum, status;
    std::int64_t runtime_ms = 0;
};

RowOut compute_row(const Entry& e, const RowSpec& spec, const BenchOptions& opts,
                   std::uint64_t gen_seed) {
    RowOut out;
    out.family = e.family;
    out.algorithm = e.algorithm;
    out.seed = derive_seed(opts.master_seed, spec.index);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (e.algorithm == "balanced-seq") {
            Graph g = e.family == "gnp"    ? gen_gnp(e.n, e.p, gen_seed)
                      : e.family == "star" ? gen_star(e.n + spec.instance)
                      : e.family == "clique"
                          ? gen_clique(e.n + spec.instance)
                          : gen_complete_bipartite(e.left, e.right + spec.instance);
            out.n = g.vertex_count();
            out.m = g.edge_count();
            DownwardSetSequence seq = full_balanced_sequence(g, out.seed);
            const std::int64_t cut = max_cut_of_sequence(g, seq);
            out.metric = std::to_string(cut);
            out.bound = format_bound(out.m / 2.0 + 7.0 * std::pow(double(out.m), 0.8));
            if (e.family == "clique")
                out.optimum = std::to_string(out.n * out.n / 4);
            out.status = cut_within_full_bound(cut, out.m) ? "ok" : "violated";
        } else {
            PlantedCsp planted = e.family == "cycle-coloring"
                                     ? gen_cycle_coloring(e.n + 2 * spec.instance)
                                     : gen_planted_csp(e.vars, e.q, e.m, gen_seed);
            const CspInstance& inst = planted.csp;
            out.n = static_cast<std::int64_t>(inst.var_count());
            out.m = static_cast<std::int64_t>(inst.constraints().size());
            if (e.algorithm == "approx-maxmin") {
                ApproxConfig cfg;
                cfg.seed = out.seed;
                cfg.exact_fallback_cap = opts.cap;
                ReconfigSequence seq = approx_maxmin(inst, planted.psi_s, planted.psi_t, cfg);
                const Rational val = sequence_value(inst, seq);
                out.metric = val.str();
                out.bound =
                    format_bound(0.5 - 7.0 * std::pow(double(std::max<std::int64_t>(out.m, 1)), -0.2));
                out.status = value_within_approx_bound(val, std::max<std::int64_t>(out.m, 1))
                                 ? "ok"
                                 : "violated";
            } else if (e.algorithm == "exact-maxmin") {
                MaxMinResult res = exact_maxmin(inst, planted.psi_s, planted.psi_t, opts.cap);
                out.metric = res.optimum.str();
                out.status =
                    sequence_value(inst, res.witness) == res.optimum ? "ok" : "violated";
            } else {  // approx-minlabel
                MultiAssignSequence seq = approx_minlabel(inst, planted.psi_s, planted.psi_t);
                const std::int64_t peak = sequence_minlab_size(seq);
                out.metric = std::to_string(peak);
                out.bound = std::to_string(2 * out.n);
                out.status =
                    satisfies_sequence(inst, seq) && peak <= 2 * out.n ? "ok" : "violated";
            }
        }
    } catch (const Error& err) {
        out.metric.clear();
        out.bound.clear();
        out.optimum.clear();
        out.status = std::string("error:") + err.code_name();
    }
    const auto t1 = std::chrono::steady_clock::now();
    out.runtime_ms =
        opts.stable_runtime
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t x = master + 0x9E3779B97F4A7C15ull * (index + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string run_bench(const json& corpus, const BenchOptions& opts) {
    if (!corpus.is_object() || corpus.value("kind", "") != "bench_corpus")
        fail(ErrorCode::ParseError, "expected kind 'bench_corpus'");
    const json& jentries = corpus.contains("entries") ? corpus.at("entries") : json::array();
    if (!jentries.is_array()) fail(ErrorCode::ParseError, "'entries' must be an array");
    if (opts.seeds < 1) fail(ErrorCode::BadParams, "bench needs at least one seed");

    std::vector<Entry> entries;
    entries.reserve(jentries.size());
    for (const auto& je : jentries) entries.push_back(parse_entry(je));

    std::vector<RowSpec> specs;
    for (std::size_t ei = 0; ei < entries.size(); ++ei)
        for (int i = 0; i < entries[ei].count; ++i)
            for (int j = 0; j < opts.seeds; ++j)
                specs.push_back(RowSpec{ei, i, j, specs.size()});

    std::vector<RowOut> rows(specs.size());
    std::atomic<std::size_t> next{0};
    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, 32));
    auto worker = [&] {
        for (;;) {
            const std::size_t at = next.fetch_add(1);
            if (at >= specs.size()) return;
            const RowSpec& spec = specs[at];
            const Entry& e = entries[spec.entry];
            // instance identity depends on the entry and instance index only,
            // so every seed of a row block benches the same instance
            const std::uint64_t gen_seed =
                derive_seed(derive_seed(opts.master_seed, spec.entry), spec.instance);
            rows[at] = compute_row(e, spec, opts, gen_seed);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "family,n,m,seed,algorithm,metric,bound,optimum,status,runtime_ms\n";
    for (const RowOut& r : rows)
        csv << r.family << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << r.algorithm << ','
            << r.metric << ',' << r.bound << ',' << r.optimum << ',' << r.status << ','
            << r.runtime_ms << '\n';
    return csv.str();
}

}  // namespace recon
