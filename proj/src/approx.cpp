#include "recon/approx.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "recon/balanced.hpp"
#include "recon/exact.hpp"
#include "recon/graph.hpp"

namespace recon {

using boost::multiprecision::cpp_int;

ReconfigSequence approx_maxmin(const CspInstance& inst, const Assignment& psi_s,
                               const Assignment& psi_t, const ApproxConfig& cfg) {
    if (inst.arity() != 2) fail(ErrorCode::ArityError, "approximation needs a 2-CSP");
    if (cfg.epsilon <= Rational(0) || cfg.epsilon > Rational(1, 2))
        fail(ErrorCode::BadParams, "epsilon must lie in (0, 1/2]");
    value(inst, psi_s);  // validates totality and domains
    value(inst, psi_t);

    if (inst.state_count() <= cfg.exact_fallback_cap)
        return exact_maxmin(inst, psi_s, psi_t, cfg.exact_fallback_cap).witness;

    // constraint graph: one edge per constraint
    std::vector<std::pair<int, int>> edges;
    edges.reserve(inst.constraints().size());
    for (const auto& c : inst.constraints()) edges.emplace_back(c.scope[0], c.scope[1]);
    Graph g = Graph::with_default_names(static_cast<int>(inst.var_count()), std::move(edges));

    DownwardSetSequence down = full_balanced_sequence(g, cfg.seed);

    ReconfigSequence seq;
    Assignment cur = psi_s;
    seq.steps.push_back(cur);
    for (int v : down.order()) {
        if (cur.vals[v] == psi_t.vals[v]) continue;
        cur.vals[v] = psi_t.vals[v];
        seq.steps.push_back(cur);
    }
    return seq;
}

MultiAssignSequence approx_minlabel(const CspInstance& inst, const Assignment& psi_s,
                                    const Assignment& psi_t) {
    if (inst.arity() != 2) fail(ErrorCode::ArityError, "multi-assignments need a 2-CSP");
    if (value(inst, psi_s) != Rational(1) || value(inst, psi_t) != Rational(1))
        fail(ErrorCode::NotSatisfying, "both endpoints must satisfy the instance");

    const std::size_t n = inst.var_count();
    MultiAssignment cur;
    cur.sets.resize(n);
    for (std::size_t v = 0; v < n; ++v) cur.sets[v] = {psi_s.vals[v]};

    MultiAssignSequence seq;
    seq.steps.push_back(cur);
    for (std::size_t v = 0; v < n; ++v) {
        if (psi_s.vals[v] == psi_t.vals[v]) continue;
        cur.sets[v].push_back(psi_t.vals[v]);
        std::sort(cur.sets[v].begin(), cur.sets[v].end());
        seq.steps.push_back(cur);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (psi_s.vals[v] == psi_t.vals[v]) continue;
        cur.sets[v] = {psi_t.vals[v]};
        seq.steps.push_back(cur);
    }
    return seq;
}

SetCoverSequence approx_setcover(const SetCoverInstance& inst, const std::vector<int>& t_s,
                                 const std::vector<int>& t_t) {
    std::vector<int> s = t_s, t = t_t;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (!is_cover(inst, s) || !is_cover(inst, t))
        fail(ErrorCode::NotACover, "both endpoints must cover the universe");

    SetCoverSequence seq;
    std::vector<int> cur = s;
    seq.steps.push_back(cur);
    for (int i : t) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        cur.insert(std::upper_bound(cur.begin(), cur.end(), i), i);
        seq.steps.push_back(cur);
    }
    for (int i : s) {
        if (std::binary_search(t.begin(), t.end(), i)) continue;
        cur.erase(std::lower_bound(cur.begin(), cur.end(), i));
        seq.steps.push_back(cur);
    }
    return seq;
}

bool value_within_approx_bound(const Rational& val, std::int64_t m) {
    const Rational half(1, 2);
    if (!(val < half)) return true;
    // 1/2 - val <= 7*m^(-1/5)  <=>  (1/2 - val)^5 * m <= 7^5
    const Rational d = half - val;
    cpp_int n5 = cpp_int(d.num);
    n5 = n5 * n5 * n5 * n5 * n5;
    cpp_int d5 = cpp_int(d.den);
    d5 = d5 * d5 * d5 * d5 * d5;
    return n5 * m <= 16807 * d5;  // 7^5
}

}  // namespace recon
