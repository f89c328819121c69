#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "recon/approx.hpp"
#include "recon/balanced.hpp"
#include "recon/bench.hpp"
#include "recon/exact.hpp"
#include "recon/gen.hpp"
#include "recon/io.hpp"
#include "recon/reductions.hpp"
#include "recon/rih.hpp"

using namespace recon;

namespace {

std::uint64_t env_default_cap() {
    const char* raw = std::getenv("RECON_CAP");
    if (!raw) return 1u << 20;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        fail(ErrorCode::BadParams, "RECON_CAP must be a positive integer");
    return static_cast<std::uint64_t>(v);
}

std::string stem_of(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return path.substr(0, path.size() - 5);
    return path;
}

struct Ctx {
    // global flags
    std::string format = "text";
    std::uint64_t seed = 0;
    std::uint64_t cap = 1u << 20;
    std::string epsilon = "1/100";
    std::string out;

    // command inputs
    std::string instance, assignment, sequence, from, to;
    std::string rih_path, corpus, delta = "0";
    std::string p = "1/2";
    std::string code = "hadamard";
    std::string out_json;
    std::string family;
    int n = 0, left = 1, right = 1, vars = 2, q = 2, m = 0;
    int seeds = 1, threads = 0;
    bool stable = false;

    // outcome
    json result = json::object();
    std::string summary;
};

CLI::App* sub(CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
}

RihCodeKind code_kind_of(const std::string& name) {
    if (name == "hadamard") return RihCodeKind::hadamard;
    if (name == "identity") return RihCodeKind::identity;
    fail(ErrorCode::BadParams, "--code must be hadamard or identity");
}

// ---- command bodies --------------------------------------------------------

void cmd_gen(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "gen needs --out");
    std::vector<std::string> written;
    if (c.family == "gnp" || c.family == "star" || c.family == "clique" ||
        c.family == "complete-bipartite") {
        Graph g = c.family == "gnp"    ? gen_gnp(c.n, Rational::parse(c.p), c.seed)
                  : c.family == "star" ? gen_star(c.n)
                  : c.family == "clique"
                      ? gen_clique(c.n)
                      : gen_complete_bipartite(c.left, c.right);
        store_json(c.out, to_json(g));
        written.push_back(c.out);
        c.result["n"] = g.vertex_count();
        c.result["m"] = g.edge_count();
        c.summary = "wrote " + c.family + ": n=" + std::to_string(g.vertex_count()) +
                    " m=" + std::to_string(g.edge_count()) + " -> " + c.out;
    } else if (c.family == "planted-csp" || c.family == "cycle-coloring") {
        PlantedCsp planted = c.family == "cycle-coloring"
                                 ? gen_cycle_coloring(c.n)
                                 : gen_planted_csp(c.vars, c.q, c.m, c.seed);
        store_json(c.out, to_json(planted.csp));
        const std::string s_path = stem_of(c.out) + ".psi_s.json";
        const std::string t_path = stem_of(c.out) + ".psi_t.json";
        store_json(s_path, assignment_to_json(planted.csp, planted.psi_s));
        store_json(t_path, assignment_to_json(planted.csp, planted.psi_t));
        written = {c.out, s_path, t_path};
        c.result["n"] = planted.csp.var_count();
        c.result["m"] = planted.csp.constraints().size();
        c.summary = "wrote " + c.family + ": vars=" + std::to_string(planted.csp.var_count()) +
                    " constraints=" + std::to_string(planted.csp.constraints().size()) +
                    " -> " + c.out + " (+ endpoints)";
    } else if (c.family == "random-csp") {
        CspInstance inst = gen_random_csp(c.vars, c.q, c.m, c.seed);
        store_json(c.out, to_json(inst));
        written.push_back(c.out);
        c.result["n"] = inst.var_count();
        c.result["m"] = inst.constraints().size();
        c.summary = "wrote random-csp: vars=" + std::to_string(inst.var_count()) +
                    " constraints=" + std::to_string(inst.constraints().size()) + " -> " + c.out;
    } else {
        fail(ErrorCode::BadParams, "unknown family '" + c.family + "'");
    }
    c.result["written"] = written;
}

void cmd_verify_value(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    Assignment psi = parse_assignment(load_json(c.assignment), inst);
    const Rational val = value(inst, psi);
    c.result["value"] = val.str();
    c.result["satisfied"] = satisfied_count(inst, psi);
    c.result["constraints"] = inst.constraints().size();
    c.summary = "value " + val.str() + " (" + std::to_string(satisfied_count(inst, psi)) + "/" +
                std::to_string(inst.constraints().size()) + " constraints)";
}

void cmd_verify_sequence(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    ReconfigSequence seq = parse_sequence(load_json(c.sequence), inst);
    const Rational val = sequence_value(inst, seq);  // also checks adjacency
    if (!c.from.empty() || !c.to.empty()) {
        if (c.from.empty() || c.to.empty())
            fail(ErrorCode::BadParams, "--from and --to go together");
        Assignment s = parse_assignment(load_json(c.from), inst);
        Assignment t = parse_assignment(load_json(c.to), inst);
        if (!is_valid_sequence(s, t, seq))
            fail(ErrorCode::InvalidSequence, "sequence does not connect the endpoints");
    }
    c.result["steps"] = seq.steps.size();
    c.result["value"] = val.str();
    c.summary = "sequence ok: steps=" + std::to_string(seq.steps.size()) + " value=" + val.str();
}

void cmd_verify_multi_sequence(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    MultiAssignSequence seq = parse_multi_sequence(load_json(c.sequence), inst);
    if (!satisfies_sequence(inst, seq))
        fail(ErrorCode::InvalidSequence, "multi-assignment sequence is not satisfying");
    const std::int64_t peak = sequence_minlab_size(seq);
    c.result["steps"] = seq.steps.size();
    c.result["peak"] = peak;
    c.summary = "multi sequence ok: steps=" + std::to_string(seq.steps.size()) +
                " peak=" + std::to_string(peak);
}

void cmd_verify_cover_sequence(Ctx& c) {
    SetCoverInstance sc = parse_setcover(load_json(c.instance));
    SetCoverSequence seq = parse_cover_sequence(load_json(c.sequence), sc);
    std::vector<int> s = parse_cover(load_json(c.from), sc);
    std::vector<int> t = parse_cover(load_json(c.to), sc);
    if (!is_valid_cover_sequence(sc, s, t, seq))
        fail(ErrorCode::InvalidSequence, "cover sequence is not valid between the endpoints");
    std::size_t peak = 0;
    for (const auto& st : seq.steps) peak = std::max(peak, st.size());
    c.result["steps"] = seq.steps.size();
    c.result["peak"] = peak;
    c.summary = "cover sequence ok: steps=" + std::to_string(seq.steps.size()) +
                " peak=" + std::to_string(peak);
}

void cmd_verify_partial(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    PartialAssignment pa = parse_partial_assignment(load_json(c.assignment), inst);
    if (!partial_satisfies(inst, pa))
        fail(ErrorCode::NotSatisfying, "partial assignment violates a fully assigned constraint");
    c.result["size"] = pa.size();
    c.summary = "partial ok: size=" + std::to_string(pa.size());
}

void cmd_verify_balanced(Ctx& c) {
    Graph g = parse_graph(load_json(c.instance));
    const bool bal = is_delta_balanced(g, Rational::parse(c.delta), c.cap);
    c.result["balanced"] = bal;
    c.summary = std::string("balanced: ") + (bal ? "true" : "false");
}

void cmd_verify_downward(Ctx& c) {
    Graph g = parse_graph(load_json(c.instance));
    DownwardSetSequence seq = parse_downward_sequence(load_json(c.sequence), g);
    const std::int64_t peak = max_cut_of_sequence(g, seq);
    c.result["steps"] = seq.removals.size();
    c.result["peak_cut"] = peak;
    c.summary = "downward ok: steps=" + std::to_string(seq.removals.size()) +
                " peak_cut=" + std::to_string(peak);
}

void cmd_exact_maxmin(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    Assignment s = parse_assignment(load_json(c.from), inst);
    Assignment t = parse_assignment(load_json(c.to), inst);
    MaxMinResult res = exact_maxmin(inst, s, t, c.cap);
    if (sequence_value(inst, res.witness) != res.optimum || !is_valid_sequence(s, t, res.witness))
        fail(ErrorCode::BadParams, "witness failed re-verification");
    if (!c.out.empty()) store_json(c.out, sequence_to_json(inst, res.witness));
    c.result["optimum"] = res.optimum.str();
    c.result["steps"] = res.witness.steps.size();
    c.result["explored_states"] = res.explored_states;
    c.summary = "maxmin optimum=" + res.optimum.str() +
                " steps=" + std::to_string(res.witness.steps.size()) +
                " explored=" + std::to_string(res.explored_states);
}

void cmd_exact_minlab(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    Assignment s = parse_assignment(load_json(c.from), inst);
    Assignment t = parse_assignment(load_json(c.to), inst);
    MinLabResult res = exact_minlab(inst, s, t, c.cap);
    if (!satisfies_sequence(inst, res.witness) ||
        sequence_minlab_size(res.witness) != res.optimum)
        fail(ErrorCode::BadParams, "witness failed re-verification");
    if (!c.out.empty()) store_json(c.out, multi_sequence_to_json(inst, res.witness));
    c.result["optimum"] = res.optimum;
    c.result["steps"] = res.witness.steps.size();
    c.result["explored_states"] = res.explored_states;
    c.summary = "minlab optimum=" + std::to_string(res.optimum) +
                " steps=" + std::to_string(res.witness.steps.size()) +
                " explored=" + std::to_string(res.explored_states);
}

void cmd_exact_downward(Ctx& c) {
    Graph g = parse_graph(load_json(c.instance));
    DownwardResult res = optimal_downward_sequence(g, c.cap);
    if (max_cut_of_sequence(g, res.witness) != res.optimum)
        fail(ErrorCode::BadParams, "witness failed re-verification");
    if (!c.out.empty()) store_json(c.out, downward_sequence_to_json(g, res.witness));
    c.result["optimum"] = res.optimum;
    c.result["explored_states"] = res.explored_states;
    c.summary = "downward optimum=" + std::to_string(res.optimum) +
                " explored=" + std::to_string(res.explored_states);
}

void cmd_exact_maxpar(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    const std::int64_t best = max_par_bruteforce(inst, c.cap);
    c.result["max_partial"] = best;
    c.summary = "maxpar size=" + std::to_string(best);
}

void cmd_approx_maxmin(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    Assignment s = parse_assignment(load_json(c.from), inst);
    Assignment t = parse_assignment(load_json(c.to), inst);
    ApproxConfig cfg;
    cfg.epsilon = Rational::parse(c.epsilon);
    cfg.exact_fallback_cap = c.cap;
    cfg.seed = c.seed;
    ReconfigSequence seq = approx_maxmin(inst, s, t, cfg);
    const Rational achieved = sequence_value(inst, seq);
    if (!is_valid_sequence(s, t, seq))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    if (!c.out.empty()) store_json(c.out, sequence_to_json(inst, seq));
    const std::int64_t m = std::max<std::int64_t>(1, inst.constraints().size());
    char bound[64];
    std::snprintf(bound, sizeof(bound), "%.6f", 0.5 - 7.0 * std::pow(double(m), -0.2));
    c.result["achieved"] = achieved.str();
    c.result["steps"] = seq.steps.size();
    c.result["bound"] = bound;
    c.summary = "approx maxmin: achieved=" + achieved.str() + " bound=" + bound +
                " steps=" + std::to_string(seq.steps.size());
}

void cmd_approx_minlabel(Ctx& c) {
    CspInstance inst = parse_csp(load_json(c.instance));
    Assignment s = parse_assignment(load_json(c.from), inst);
    Assignment t = parse_assignment(load_json(c.to), inst);
    MultiAssignSequence seq = approx_minlabel(inst, s, t);
    if (!satisfies_sequence(inst, seq))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    const std::int64_t peak = sequence_minlab_size(seq);
    if (!c.out.empty()) store_json(c.out, multi_sequence_to_json(inst, seq));
    c.result["peak"] = peak;
    c.result["steps"] = seq.steps.size();
    c.result["bound"] = 2 * static_cast<std::int64_t>(inst.var_count());
    c.summary = "approx minlabel: peak=" + std::to_string(peak) +
                " bound=" + std::to_string(2 * inst.var_count());
}

void cmd_approx_setcover(Ctx& c) {
    SetCoverInstance sc = parse_setcover(load_json(c.instance));
    std::vector<int> s = parse_cover(load_json(c.from), sc);
    std::vector<int> t = parse_cover(load_json(c.to), sc);
    SetCoverSequence seq = approx_setcover(sc, s, t);
    if (!is_valid_cover_sequence(sc, s, t, seq))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    std::size_t peak = 0;
    for (const auto& st : seq.steps) peak = std::max(peak, st.size());
    if (!c.out.empty()) store_json(c.out, cover_sequence_to_json(seq));
    c.result["peak"] = peak;
    c.result["steps"] = seq.steps.size();
    c.summary = "approx setcover: peak=" + std::to_string(peak) +
                " steps=" + std::to_string(seq.steps.size());
}

void write_gadget(Ctx& c, const GadgetOutput& out, const char* what) {
    if (c.out.empty()) fail(ErrorCode::BadParams, std::string(what) + " needs --out");
    store_json(c.out, to_json(out.inst));
    const std::string s_path = stem_of(c.out) + ".psi_s.json";
    const std::string t_path = stem_of(c.out) + ".psi_t.json";
    store_json(s_path, assignment_to_json(out.inst, out.psi_s));
    store_json(t_path, assignment_to_json(out.inst, out.psi_t));
    c.result["written"] = {c.out, s_path, t_path};
    c.result["variables"] = out.inst.var_count();
    c.result["alphabet"] = out.inst.alphabet_size();
    c.result["constraints"] = out.inst.constraints().size();
    c.summary = std::string("wrote ") + what + ": vars=" + std::to_string(out.inst.var_count()) +
                " alphabet=" + std::to_string(out.inst.alphabet_size()) +
                " constraints=" + std::to_string(out.inst.constraints().size()) + " -> " + c.out;
}

void cmd_reduce_maxmin(Ctx& c) {
    CspInstance src = parse_csp(load_json(c.instance));
    write_gadget(c, gap_to_maxmin(src), "maxmin gadget");
}

void cmd_reduce_minmax(Ctx& c) {
    CspInstance src = parse_csp(load_json(c.instance));
    write_gadget(c, gap_to_minmax(src), "minmax gadget");
}

void cmd_reduce_setcover(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "reduce setcover needs --out");
    CspInstance src = parse_csp(load_json(c.instance));
    auto [sc, corr] = csp_to_setcover(src, c.cap);
    store_json(c.out, to_json(sc));
    const std::string corr_path = stem_of(c.out) + ".correspondence.json";
    store_json(corr_path, correspondence_to_json(src, corr));
    c.result["written"] = {c.out, corr_path};
    c.result["universe"] = sc.universe;
    c.result["sets"] = sc.sets.size();
    c.summary = "wrote setcover: universe=" + std::to_string(sc.universe) +
                " sets=" + std::to_string(sc.sets.size()) + " -> " + c.out;
}

void cmd_reduce_rih(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "reduce rih needs --out");
    CspInstance src = parse_csp(load_json(c.instance));
    Assignment s = parse_assignment(load_json(c.from), src);
    Assignment t = parse_assignment(load_json(c.to), src);
    RihOptions opts;
    opts.code_kind = code_kind_of(c.code);
    opts.cap = c.cap;
    RihInstance rih = rih_reduce(src, s, t, opts);
    store_json(c.out, rih_to_json(rih, c.cap));
    const std::string s_path = stem_of(c.out) + ".psi_s.json";
    const std::string t_path = stem_of(c.out) + ".psi_t.json";
    store_json(s_path, assignment_to_json(rih.csp, rih.psi_s));
    store_json(t_path, assignment_to_json(rih.csp, rih.psi_t));
    c.result["written"] = {c.out, s_path, t_path};
    c.result["variables"] = rih.csp.var_count();
    c.result["alphabet"] = rih.csp.alphabet_size();
    c.result["constraints"] = rih.csp.constraints().size();
    c.result["epsilon"] = rih.epsilon.str();
    c.summary = "wrote rih: vars=" + std::to_string(rih.csp.var_count()) +
                " alphabet=" + std::to_string(rih.csp.alphabet_size()) +
                " constraints=" + std::to_string(rih.csp.constraints().size()) +
                " epsilon=" + rih.epsilon.str() + " -> " + c.out;
}

void cmd_reduce_cover_seq(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "reduce cover-seq needs --out");
    CspInstance src = parse_csp(load_json(c.instance));
    MultiAssignSequence seq = parse_multi_sequence(load_json(c.sequence), src);
    auto [sc, corr] = csp_to_setcover(src, c.cap);
    SetCoverSequence cover = multiassign_seq_to_cover_seq(corr, seq);
    if (cover.steps.empty() ||
        !is_valid_cover_sequence(sc, cover.steps.front(), cover.steps.back(), cover))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    store_json(c.out, cover_sequence_to_json(cover));
    c.result["steps"] = cover.steps.size();
    c.summary = "wrote cover sequence: steps=" + std::to_string(cover.steps.size()) + " -> " +
                c.out;
}

void cmd_reduce_multi_seq(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "reduce multi-seq needs --out");
    CspInstance src = parse_csp(load_json(c.instance));
    auto [sc, corr] = csp_to_setcover(src, c.cap);
    SetCoverSequence cover = parse_cover_sequence(load_json(c.sequence), sc);
    MultiAssignSequence seq = cover_seq_to_multiassign_seq(corr, cover);
    if (!satisfies_sequence(src, seq))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    store_json(c.out, multi_sequence_to_json(src, seq));
    c.result["steps"] = seq.steps.size();
    c.summary = "wrote multi sequence: steps=" + std::to_string(seq.steps.size()) + " -> " + c.out;
}

void cmd_rih_complete(Ctx& c) {
    RihDocument doc = parse_rih(load_json(c.rih_path));
    ReconfigSequence src_seq = parse_sequence(load_json(c.sequence), doc.instance.source);
    ReconfigSequence seq = completeness_sequence(doc.instance, src_seq);
    const Rational val = sequence_value(doc.instance.csp, seq);
    if (val != Rational(1) || !is_valid_sequence(doc.instance.psi_s, doc.instance.psi_t, seq))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    if (!c.out.empty()) store_json(c.out, sequence_to_json(doc.instance.csp, seq));
    c.result["steps"] = seq.steps.size();
    c.result["value"] = val.str();
    c.summary = "completeness sequence: steps=" + std::to_string(seq.steps.size()) + " value=1";
}

void cmd_rih_decode(Ctx& c) {
    RihDocument doc = parse_rih(load_json(c.rih_path));
    ReconfigSequence seq = parse_sequence(load_json(c.sequence), doc.instance.csp);
    SoundnessResult res = soundness_decode(doc.instance, seq, doc.options.cap);
    if (!c.out.empty()) store_json(c.out, sequence_to_json(doc.instance.source, res.decoded));
    bool quarter = true, satisfying = true, close = true;
    for (const auto& d : res.diags) {
        quarter = quarter && d.within_quarter;
        satisfying = satisfying && d.all_satisfying;
        close = close && d.pairwise_close;
    }
    c.result["steps"] = res.decoded.steps.size();
    c.result["all_valid"] = res.all_valid;
    c.result["within_quarter"] = quarter;
    c.result["all_satisfying"] = satisfying;
    c.result["pairwise_close"] = close;
    c.summary = std::string("decoded: steps=") + std::to_string(res.decoded.steps.size()) +
                " all_valid=" + (res.all_valid ? "true" : "false");
}

void cmd_balanced_seq(Ctx& c) {
    Graph g = parse_graph(load_json(c.instance));
    DownwardSetSequence seq = full_balanced_sequence(g, c.seed);
    const std::vector<std::int64_t> cuts = cuts_of_sequence(g, seq);
    std::int64_t peak = 0;
    for (std::int64_t x : cuts) peak = std::max(peak, x);
    if (!cut_within_full_bound(peak, g.edge_count()))
        fail(ErrorCode::BadParams, "sequence failed re-verification");
    if (!c.out.empty()) {
        std::string csv = "step,removed,cut\n";
        for (std::size_t i = 0; i < seq.removals.size(); ++i) {
            std::string names;
            for (std::size_t j = 0; j < seq.removals[i].size(); ++j)
                names += (j ? "|" : "") + g.vertex_names()[seq.removals[i][j]];
            csv += std::to_string(i + 1) + "," + names + "," + std::to_string(cuts[i]) + "\n";
        }
        write_file(c.out, csv);
    }
    if (!c.out_json.empty()) store_json(c.out_json, downward_sequence_to_json(g, seq));
    c.result["n"] = g.vertex_count();
    c.result["m"] = g.edge_count();
    c.result["peak_cut"] = peak;
    c.result["steps"] = seq.removals.size();
    c.summary = "balanced-seq: n=" + std::to_string(g.vertex_count()) +
                " m=" + std::to_string(g.edge_count()) + " peak_cut=" + std::to_string(peak);
}

void cmd_bench(Ctx& c) {
    if (c.out.empty()) fail(ErrorCode::BadParams, "bench needs --out");
    BenchOptions opts;
    opts.seeds = c.seeds;
    opts.master_seed = c.seed;
    opts.threads = c.threads;
    opts.stable_runtime = c.stable;
    opts.cap = c.cap;
    const std::string csv = run_bench(load_json(c.corpus), opts);
    write_file(c.out, csv);
    std::size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    c.result["rows"] = rows - 1;  // header line
    c.summary = "bench: rows=" + std::to_string(rows - 1) + " -> " + c.out;
}

}  // namespace

int main(int argc, char** argv) {
    Ctx c;
    CLI::App app{"reconfiguration toolkit: solvers, gadget reductions, generators, benchmarks"};
    app.require_subcommand(1);
    app.fallthrough();

    try {
        c.cap = env_default_cap();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    app.add_option("--format", c.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--cap", c.cap, "state/space cap for exhaustive steps");
    app.add_option("--epsilon", c.epsilon, "target slack as num/den");
    app.add_option("--out", c.out, "output file");

    std::vector<std::pair<CLI::App*, void (*)(Ctx&)>> actions;
    auto bind = [&](CLI::App* s, void (*fn)(Ctx&)) { actions.emplace_back(s, fn); };

    CLI::App* gen = sub(&app, "gen", "generate an instance");
    gen->add_option("family", c.family,
                    "gnp|star|clique|complete-bipartite|planted-csp|cycle-coloring|random-csp")
        ->required();
    gen->add_option("--n", c.n, "vertex / cycle size");
    gen->add_option("--p", c.p, "edge probability for gnp (num/den)");
    gen->add_option("--left", c.left, "left side size");
    gen->add_option("--right", c.right, "right side size");
    gen->add_option("--vars", c.vars, "variable count");
    gen->add_option("--q", c.q, "alphabet size");
    gen->add_option("--m", c.m, "constraint count");
    bind(gen, cmd_gen);

    CLI::App* verify = sub(&app, "verify", "check files against the core definitions");
    verify->require_subcommand(1);
    auto add_io = [&](CLI::App* s, bool instance, bool assignment, bool sequence, bool endpoints) {
        if (instance) s->add_option("--instance", c.instance, "instance file")->required();
        if (assignment) s->add_option("--assignment", c.assignment, "assignment file")->required();
        if (sequence) s->add_option("--sequence", c.sequence, "sequence file")->required();
        if (endpoints) {
            s->add_option("--from", c.from, "start endpoint file");
            s->add_option("--to", c.to, "end endpoint file");
        }
    };
    CLI::App* vv = sub(verify, "value", "value of an assignment");
    add_io(vv, true, true, false, false);
    bind(vv, cmd_verify_value);
    CLI::App* vs = sub(verify, "sequence", "reconfiguration sequence validity and value");
    add_io(vs, true, false, true, true);
    bind(vs, cmd_verify_sequence);
    CLI::App* vm = sub(verify, "multi-sequence", "multi-assignment sequence validity and peak");
    add_io(vm, true, false, true, false);
    bind(vm, cmd_verify_multi_sequence);
    CLI::App* vc = sub(verify, "cover-sequence", "cover sequence validity and peak");
    add_io(vc, true, false, true, false);
    vc->add_option("--from", c.from, "start cover file")->required();
    vc->add_option("--to", c.to, "end cover file")->required();
    bind(vc, cmd_verify_cover_sequence);
    CLI::App* vp = sub(verify, "partial", "partial assignment consistency and size");
    add_io(vp, true, true, false, false);
    bind(vp, cmd_verify_partial);
    CLI::App* vb = sub(verify, "balanced", "exhaustive near-bisection balance check");
    add_io(vb, true, false, false, false);
    vb->add_option("--delta", c.delta, "slack as num/den")->required();
    bind(vb, cmd_verify_balanced);
    CLI::App* vd = sub(verify, "downward", "downward set sequence validity and peak cut");
    add_io(vd, true, false, true, false);
    bind(vd, cmd_verify_downward);

    CLI::App* exact = sub(&app, "exact", "exact solvers (state space within --cap)");
    exact->require_subcommand(1);
    auto add_pair = [&](CLI::App* s) {
        s->add_option("--instance", c.instance, "instance file")->required();
        s->add_option("--from", c.from, "start assignment")->required();
        s->add_option("--to", c.to, "end assignment")->required();
    };
    CLI::App* em = sub(exact, "maxmin", "optimal minimum step value");
    add_pair(em);
    bind(em, cmd_exact_maxmin);
    CLI::App* el = sub(exact, "minlab", "optimal multi-assignment peak");
    add_pair(el);
    bind(el, cmd_exact_minlab);
    CLI::App* ed = sub(exact, "downward", "optimal downward sequence peak cut");
    ed->add_option("--instance", c.instance, "graph file")->required();
    bind(ed, cmd_exact_downward);
    CLI::App* ep = sub(exact, "maxpar", "largest satisfying partial assignment");
    ep->add_option("--instance", c.instance, "instance file")->required();
    bind(ep, cmd_exact_maxpar);

    CLI::App* approx = sub(&app, "approx", "approximation algorithms");
    approx->require_subcommand(1);
    CLI::App* am = sub(approx, "maxmin", "sequence with value at least 1/2 - 7*m^(-1/5)");
    add_pair(am);
    bind(am, cmd_approx_maxmin);
    CLI::App* al = sub(approx, "minlabel", "2-approximate multi-assignment sequence");
    add_pair(al);
    bind(al, cmd_approx_minlabel);
    CLI::App* as = sub(approx, "setcover", "2-approximate cover sequence");
    as->add_option("--instance", c.instance, "set cover file")->required();
    as->add_option("--from", c.from, "start cover file")->required();
    as->add_option("--to", c.to, "end cover file")->required();
    bind(as, cmd_approx_setcover);

    CLI::App* reduce = sub(&app, "reduce", "gadget reductions between problems");
    reduce->require_subcommand(1);
    CLI::App* rm = sub(reduce, "maxmin", "alphabet-squaring gadget, maximizing direction");
    rm->add_option("--instance", c.instance, "source 2-CSP file")->required();
    bind(rm, cmd_reduce_maxmin);
    CLI::App* rx = sub(reduce, "minmax", "completed gadget, minimizing direction");
    rx->add_option("--instance", c.instance, "source 2-CSP file")->required();
    bind(rx, cmd_reduce_minmax);
    CLI::App* rs = sub(reduce, "setcover", "per-constraint hypercube set cover instance");
    rs->add_option("--instance", c.instance, "source 2-CSP file")->required();
    bind(rs, cmd_reduce_setcover);
    CLI::App* rr = sub(reduce, "rih", "selector/copies/auxiliary 3-CSP reduction");
    add_pair(rr);
    rr->add_option("--code", c.code, "hadamard|identity");
    bind(rr, cmd_reduce_rih);
    CLI::App* rc = sub(reduce, "cover-seq", "multi-assignment sequence -> cover sequence");
    rc->add_option("--instance", c.instance, "source 2-CSP file")->required();
    rc->add_option("--sequence", c.sequence, "multi sequence file")->required();
    bind(rc, cmd_reduce_cover_seq);
    CLI::App* rv = sub(reduce, "multi-seq", "cover sequence -> multi-assignment sequence");
    rv->add_option("--instance", c.instance, "source 2-CSP file")->required();
    rv->add_option("--sequence", c.sequence, "cover sequence file")->required();
    bind(rv, cmd_reduce_multi_seq);

    CLI::App* rih = sub(&app, "rih", "operations on a reduced instance file");
    rih->require_subcommand(1);
    CLI::App* hc = sub(rih, "complete", "expand a source sequence to the reduced instance");
    hc->add_option("--rih", c.rih_path, "reduced instance file")->required();
    hc->add_option("--sequence", c.sequence, "source sequence file")->required();
    bind(hc, cmd_rih_complete);
    CLI::App* hd = sub(rih, "decode", "decode a reduced-instance sequence back to the source");
    hd->add_option("--rih", c.rih_path, "reduced instance file")->required();
    hd->add_option("--sequence", c.sequence, "sequence file over the reduced instance")->required();
    bind(hd, cmd_rih_decode);

    CLI::App* bseq = sub(&app, "balanced-seq", "downward sequence with peak <= m/2 + 7*m^(4/5)");
    bseq->add_option("--instance", c.instance, "graph file")->required();
    bseq->add_option("--out-json", c.out_json, "also write the sequence document");
    bind(bseq, cmd_balanced_seq);

    CLI::App* bench = sub(&app, "bench", "run a corpus and write CSV rows");
    bench->add_option("--corpus", c.corpus, "corpus file")->required();
    bench->add_option("--seeds", c.seeds, "seeds per instance");
    bench->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    bench->add_flag("--stable", c.stable, "write runtime_ms as 0 for byte-stable output");
    bind(bench, cmd_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& [s, fn] : actions)
            if (s->parsed()) fn(c);
        if (c.format == "json")
            std::cout << canonical_dump(c.result);
        else if (!c.summary.empty())
            std::cout << c.summary << "\n";
    } catch (const Error& e) {
        if (c.format == "json") {
            json err;
            err["error"] = e.code_name();
            err["message"] = e.what();
            std::cerr << canonical_dump(err);
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
