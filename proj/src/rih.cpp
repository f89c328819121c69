#include "recon/rih.hpp"

#include <algorithm>
#include <bit>

namespace recon {

std::array<int, 3> RihInstance::copies_of_group(int group) {
    std::array<int, 3> out{};
    int w = 0;
    for (int c = 1; c <= 4; ++c)
        if (c != group) out[w++] = c;
    return out;
}

namespace {

int sat_index(const PhiSpec& phi, const Assignment& psi) {
    auto it = std::lower_bound(phi.source_satisfying.begin(), phi.source_satisfying.end(), psi);
    if (it == phi.source_satisfying.end() || *it != psi)
        fail(ErrorCode::NotSatisfying, "assignment does not satisfy the source instance");
    return static_cast<int>(it - phi.source_satisfying.begin());
}

BitVec encode_source(const PhiSpec& phi, const Assignment& psi) {
    BitVec msg(phi.code.message_bits());
    for (std::size_t v = 0; v < phi.source.var_count(); ++v)
        phi.label_map.write(msg, v, psi.vals[v]);
    return phi.code.encode(msg);
}

}  // namespace

RihInstance rih_reduce(const CspInstance& source, const Assignment& psi_s,
                       const Assignment& psi_t, const RihOptions& opts) {
    if (source.arity() != 2) fail(ErrorCode::ArityError, "reduction needs a 2-CSP");
    if (source.var_count() == 0) fail(ErrorCode::BadParams, "source has no variables");
    if (value(source, psi_s) != Rational(1) || value(source, psi_t) != Rational(1))
        fail(ErrorCode::EndpointNotSatisfying, "endpoints must satisfy the source");

    LabelBitMap pi(source.alphabet_size());
    const int k = static_cast<int>(source.var_count()) * pi.width();
    BinaryCode code = (opts.code_kind == RihCodeKind::hadamard) ? BinaryCode::hadamard(k)
                                                                : BinaryCode::identity(k);
    PhiSpec phi = build_phi(source, code, pi, 1, opts.cap);
    const int n = phi.block_bits;
    const std::size_t accepted = phi.satisfying.size();

    // variables: selector, then the four copies, then the four auxiliaries
    std::vector<std::string> vars;
    vars.reserve(1 + 4 * n + 4);
    vars.push_back("v*");
    std::array<std::vector<int>, 4> copy_vars;
    for (int c = 1; c <= 4; ++c) {
        copy_vars[c - 1].reserve(n);
        for (int j = 0; j < n; ++j) {
            copy_vars[c - 1].push_back(static_cast<int>(vars.size()));
            vars.push_back("c" + std::to_string(c) + "_b" + std::to_string(j));
        }
    }
    std::array<int, 4> aux_var{};
    for (int i = 1; i <= 4; ++i) {
        aux_var[i - 1] = static_cast<int>(vars.size());
        vars.push_back("a" + std::to_string(i));
    }

    std::vector<std::string> alphabet = {"0", "1", "s1", "s2", "s3", "s4"};
    for (std::size_t r = 0; r < accepted; ++r) alphabet.push_back("t" + std::to_string(r));
    const std::array<Sym, 2> bit_symbol{0, 1};
    const std::array<Sym, 4> selector_symbol{2, 3, 4, 5};
    const Sym aux_base = 6;

    std::vector<std::vector<Sym>> domains(vars.size());
    for (Sym s = 0; s < static_cast<Sym>(alphabet.size()); ++s) domains[0].push_back(s);
    for (int c = 0; c < 4; ++c)
        for (int j = 0; j < n; ++j) domains[copy_vars[c][j]] = {bit_symbol[0], bit_symbol[1]};
    for (int i = 0; i < 4; ++i) {
        domains[aux_var[i]].reserve(accepted);
        for (std::size_t r = 0; r < accepted; ++r)
            domains[aux_var[i]].push_back(aux_base + static_cast<Sym>(r));
    }

    std::vector<Constraint> constraints;
    constraints.reserve(4 * 3 * n);
    std::array<std::vector<int>, 4> edge_groups;
    for (int i = 1; i <= 4; ++i) {
        auto copies = RihInstance::copies_of_group(i);
        edge_groups[i - 1].reserve(3 * n);
        for (int j = 0; j < 3 * n; ++j) {
            Constraint c;
            c.scope = {0, copy_vars[copies[j / n] - 1][j % n], aux_var[i - 1]};
            c.allowed.reserve(3 * accepted);
            for (std::size_t r = 0; r < accepted; ++r) {
                c.allowed.push_back(selector_symbol[i - 1]);
                c.allowed.push_back(bit_symbol[phi.satisfying[r].get(j) ? 1 : 0]);
                c.allowed.push_back(aux_base + static_cast<Sym>(r));
            }
            for (int other = 1; other <= 4; ++other)
                if (other != i) c.wildcard_first.push_back(selector_symbol[other - 1]);
            edge_groups[i - 1].push_back(static_cast<int>(constraints.size()));
            constraints.push_back(std::move(c));
        }
    }

    RihInstance rih(
        CspInstance(std::move(vars), std::move(alphabet), 3, std::move(constraints),
                    std::move(domains)),
        source, std::move(phi));
    rih.vstar = 0;
    rih.copy_vars = std::move(copy_vars);
    rih.aux_var = aux_var;
    rih.edge_groups = std::move(edge_groups);
    rih.source_s = psi_s;
    rih.source_t = psi_t;
    rih.code_kind = opts.code_kind;
    rih.selector_symbol = selector_symbol;
    rih.bit_symbol = bit_symbol;
    rih.aux_symbol_base = aux_base;
    rih.epsilon = Rational(rih.code().distance(), 50 * static_cast<std::int64_t>(n));
    rih.psi_s = rih_encode(rih, psi_s);
    rih.psi_t = rih_encode(rih, psi_t);
    return rih;
}

Assignment rih_encode(const RihInstance& rih, const Assignment& source_psi) {
    const int idx = sat_index(rih.phi, source_psi);
    const BitVec enc = encode_source(rih.phi, source_psi);
    const int n = rih.block_bits();

    Assignment psi;
    psi.vals.assign(rih.csp.var_count(), 0);
    psi.vals[rih.vstar] = rih.selector_symbol[3];
    for (int c = 0; c < 4; ++c)
        for (int j = 0; j < n; ++j)
            psi.vals[rih.copy_vars[c][j]] = rih.bit_symbol[enc.get(j) ? 1 : 0];
    const Sym aux = rih.aux_symbol_base + rih.phi.triple_index(idx, idx, idx);
    for (int i = 0; i < 4; ++i) psi.vals[rih.aux_var[i]] = aux;
    return psi;
}

// ---- completeness -------------------------------------------------------------

ReconfigSequence completeness_sequence(const RihInstance& rih,
                                       const ReconfigSequence& source_seq) {
    if (!is_valid_sequence(rih.source_s, rih.source_t, source_seq))
        fail(ErrorCode::InvalidSourceSequence,
             "source sequence is not a reconfiguration sequence between the endpoints");
    for (const auto& st : source_seq.steps)
        if (value(rih.source, st) != Rational(1))
            fail(ErrorCode::InvalidSourceSequence, "source sequence leaves value 1");

    const int n = rih.block_bits();

    // selector at the nine anchors of one source move
    static constexpr int kSelector[9] = {4, 1, 1, 2, 2, 3, 3, 4, 4};

    auto anchor = [&](int prev_idx, int next_idx, const BitVec& enc_prev, const BitVec& enc_next,
                      int a) {
        Assignment psi;
        psi.vals.assign(rih.csp.var_count(), 0);
        psi.vals[rih.vstar] = rih.selector_symbol[kSelector[a] - 1];
        std::array<int, 4> copy_idx;
        for (int c = 1; c <= 4; ++c) {
            bool updated = a >= 2 * c;
            copy_idx[c - 1] = updated ? next_idx : prev_idx;
            const BitVec& enc = updated ? enc_next : enc_prev;
            for (int j = 0; j < n; ++j)
                psi.vals[rih.copy_vars[c - 1][j]] = rih.bit_symbol[enc.get(j) ? 1 : 0];
        }
        for (int i = 1; i <= 4; ++i) {
            auto copies = RihInstance::copies_of_group(i);
            int t = rih.phi.triple_index(copy_idx[copies[0] - 1], copy_idx[copies[1] - 1],
                                         copy_idx[copies[2] - 1]);
            psi.vals[rih.aux_var[i - 1]] = rih.aux_symbol_base + static_cast<Sym>(t);
        }
        return psi;
    };

    ReconfigSequence out;
    Assignment cur = rih.psi_s;
    out.steps.push_back(cur);
    for (std::size_t p = 0; p + 1 < source_seq.steps.size(); ++p) {
        const int prev_idx = sat_index(rih.phi, source_seq.steps[p]);
        const int next_idx = sat_index(rih.phi, source_seq.steps[p + 1]);
        const BitVec enc_prev = encode_source(rih.phi, source_seq.steps[p]);
        const BitVec enc_next = encode_source(rih.phi, source_seq.steps[p + 1]);
        for (int a = 1; a <= 8; ++a) {
            Assignment target = anchor(prev_idx, next_idx, enc_prev, enc_next, a);
            for (std::size_t v = 0; v < cur.vals.size(); ++v) {
                if (cur.vals[v] == target.vals[v]) continue;
                cur.vals[v] = target.vals[v];
                out.steps.push_back(cur);
            }
        }
    }
    if (cur != rih.psi_t) fail(ErrorCode::BadParams, "sequence did not land on the endpoint");
    return out;
}

// ---- soundness ----------------------------------------------------------------

SoundnessResult soundness_decode(const RihInstance& rih, const ReconfigSequence& seq,
                                 std::uint64_t cap) {
    if (seq.steps.empty()) fail(ErrorCode::InvalidSequence, "empty sequence");
    for (const auto& st : seq.steps) value(rih.csp, st);  // validates shape and domains

    const CspInstance& source = rih.source;
    if (source.state_count() > cap) fail(ErrorCode::TooLarge, "assignment space exceeds cap");
    const int n = rih.block_bits();
    const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;

    // all source assignments with their encodings, enumeration order
    std::vector<Assignment> cands;
    {
        Assignment psi;
        psi.vals.reserve(source.var_count());
        for (std::size_t v = 0; v < source.var_count(); ++v)
            psi.vals.push_back(source.domain(static_cast<int>(v)).front());
        for (;;) {
            cands.push_back(psi);
            int v = static_cast<int>(source.var_count()) - 1;
            for (; v >= 0; --v) {
                const auto& dom = source.domain(v);
                auto it = std::find(dom.begin(), dom.end(), psi.vals[v]);
                if (it + 1 != dom.end()) {
                    psi.vals[v] = *(it + 1);
                    break;
                }
                psi.vals[v] = dom.front();
            }
            if (v < 0) break;
        }
    }
    std::vector<std::vector<std::uint64_t>> enc(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        enc[i] = encode_source(rih.phi, cands[i]).words();
        enc[i].resize(words, 0);
    }
    std::vector<char> sat(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i)
        sat[i] = value(source, cands[i]) == Rational(1) ? 1 : 0;

    const std::int64_t d = rih.code().distance();
    std::uint64_t tail_mask = (n % 64 == 0) ? ~std::uint64_t{0}
                                            : ((std::uint64_t{1} << (n % 64)) - 1);

    SoundnessResult res;
    std::vector<std::uint64_t> m0(words), m1(words);
    for (const auto& step : seq.steps) {
        SoundnessStepDiag diag;
        Sym sel_sym = step.vals[rih.vstar];
        for (int i = 0; i < 4; ++i)
            if (sel_sym == rih.selector_symbol[i]) diag.selector = i + 1;
        diag.selector_valid = diag.selector != 0;

        std::array<int, 3> groups = diag.selector_valid
                                        ? RihInstance::copies_of_group(diag.selector)
                                        : std::array<int, 3>{1, 2, 3};

        std::array<int, 3> pick{};
        diag.within_quarter = true;
        diag.all_satisfying = true;
        for (int gi = 0; gi < 3; ++gi) {
            const auto& cvars = rih.copy_vars[groups[gi] - 1];
            std::fill(m0.begin(), m0.end(), 0);
            std::fill(m1.begin(), m1.end(), 0);
            for (int j = 0; j < n; ++j) {
                Sym s = step.vals[cvars[j]];
                if (s == rih.bit_symbol[0]) m0[j >> 6] |= std::uint64_t{1} << (j & 63);
                else if (s == rih.bit_symbol[1]) m1[j >> 6] |= std::uint64_t{1} << (j & 63);
            }
            std::size_t best = 0, best_dist = ~std::size_t{0};
            for (std::size_t i = 0; i < cands.size(); ++i) {
                std::size_t dist = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t used = (w + 1 == words) ? tail_mask : ~std::uint64_t{0};
                    std::uint64_t e = enc[i][w];
                    dist += std::popcount(e & ~m1[w] & used);
                    dist += std::popcount(~e & ~m0[w] & used);
                }
                if (dist < best_dist) {
                    best = i;
                    best_dist = dist;
                }
            }
            pick[gi] = static_cast<int>(best);
            if (4 * static_cast<std::int64_t>(best_dist) >= d) diag.within_quarter = false;
            if (!sat[best]) diag.all_satisfying = false;
        }
        diag.pairwise_close = hamming(cands[pick[0]], cands[pick[1]]) <= 1 &&
                              hamming(cands[pick[0]], cands[pick[2]]) <= 1 &&
                              hamming(cands[pick[1]], cands[pick[2]]) <= 1;

        int chosen;
        if (pick[0] == pick[1] || pick[0] == pick[2]) chosen = pick[0];
        else if (pick[1] == pick[2]) chosen = pick[1];
        else chosen = pick[0];

        if (res.decoded.steps.empty() || res.decoded.steps.back().vals != cands[chosen].vals)
            res.decoded.steps.push_back(cands[chosen]);
        res.diags.push_back(diag);
    }

    res.all_valid = is_valid_sequence(rih.source_s, rih.source_t, res.decoded);
    if (res.all_valid)
        for (const auto& st : res.decoded.steps)
            if (value(source, st) != Rational(1)) res.all_valid = false;
    return res;
}

}  // namespace recon
