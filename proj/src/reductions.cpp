#include "recon/reductions.hpp"

#include <algorithm>
#include <set>

namespace recon {

namespace {

void require_plain_2csp(const CspInstance& source) {
    if (source.arity() != 2) fail(ErrorCode::ArityError, "gadget needs a 2-CSP");
    if (source.alphabet_size() == 0) fail(ErrorCode::BadParams, "empty source alphabet");
    if (source.restricted())
        fail(ErrorCode::BadParams, "gadget needs unrestricted variable domains");
}

std::string fresh_star_name(const NameTable& syms) {
    std::string name = "*";
    while (syms.find(name)) name += "*";
    return name;
}

}  // namespace

GadgetOutput gap_to_maxmin(const CspInstance& source) {
    require_plain_2csp(source);
    const Sym q = static_cast<Sym>(source.alphabet_size());  // star gets index q

    std::vector<std::string> alphabet;
    alphabet.reserve(2 * (q + 1));
    for (Sym s = 0; s <= q; ++s) {
        std::string base = (s < q) ? source.symbols().name(s) : fresh_star_name(source.symbols());
        alphabet.push_back(base + ":0");
        alphabet.push_back(base + ":1");
    }
    auto tagged = [](Sym s, int bit) { return 2 * s + bit; };

    std::vector<Constraint> constraints;
    constraints.reserve(source.constraints().size());
    std::vector<Sym> probe(2);
    for (const auto& src : source.constraints()) {
        Constraint c;
        c.scope = src.scope;
        for (Sym su = 0; su <= q; ++su) {
            for (Sym sv = 0; sv <= q; ++sv) {
                bool plain = su < q && sv < q;
                if (plain) {
                    probe[0] = su;
                    probe[1] = sv;
                    if (!src.allows(probe.data())) continue;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            c.allowed.push_back(tagged(su, a));
                            c.allowed.push_back(tagged(sv, b));
                        }
                } else {
                    for (int bit = 0; bit < 2; ++bit) {
                        c.allowed.push_back(tagged(su, bit));
                        c.allowed.push_back(tagged(sv, bit));
                    }
                }
            }
        }
        constraints.push_back(std::move(c));
    }

    GadgetOutput out{
        CspInstance(source.variables().names(), std::move(alphabet), 2, std::move(constraints)),
        {}, {}};
    out.psi_s.vals.assign(source.var_count(), tagged(q, 0));
    out.psi_t.vals.assign(source.var_count(), tagged(q, 1));
    return out;
}

GadgetOutput gap_to_minmax(const CspInstance& source) {
    require_plain_2csp(source);
    const int n = static_cast<int>(source.var_count());

    std::set<std::pair<int, int>> present;
    for (const auto& c : source.constraints()) {
        int u = c.scope[0], v = c.scope[1];
        present.emplace(std::min(u, v), std::max(u, v));
    }

    std::vector<Sym> all_symbols(source.alphabet_size());
    for (Sym s = 0; s < static_cast<Sym>(all_symbols.size()); ++s) all_symbols[s] = s;

    std::vector<Constraint> completed = source.constraints();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!present.count({u, v})) {
                Constraint c;
                c.scope = {u, v};
                c.wildcard_first = all_symbols;  // everything allowed
                completed.push_back(std::move(c));
            }

    CspInstance complete(source.variables().names(), source.symbols().names(), 2,
                         std::move(completed));
    return gap_to_maxmin(complete);
}

// ---- set cover --------------------------------------------------------------

std::pair<SetCoverInstance, SetCoverCorrespondence> csp_to_setcover(const CspInstance& source,
                                                                    std::uint64_t per_edge_cap) {
    if (source.arity() != 2) fail(ErrorCode::ArityError, "set cover gadget needs a 2-CSP");
    if (source.restricted())
        fail(ErrorCode::BadParams, "set cover gadget needs unrestricted variable domains");

    const Sym q = static_cast<Sym>(source.alphabet_size());
    SetCoverCorrespondence corr;
    corr.var_count = source.var_count();
    corr.alphabet_size = source.alphabet_size();

    SetCoverInstance inst;
    inst.sets.assign(corr.var_count * corr.alphabet_size, {});

    std::int64_t offset = 0;
    std::vector<Sym> probe(2);
    for (const auto& c : source.constraints()) {
        SetCoverCorrespondence::EdgeBlock block;
        block.u = c.scope[0];
        block.v = c.scope[1];
        block.offset = offset;
        for (Sym a = 0; a < q; ++a)
            for (Sym b = 0; b < q; ++b) {
                probe[0] = a;
                probe[1] = b;
                if (c.allows(probe.data())) block.pairs.emplace_back(a, b);
            }
        const std::size_t r = block.pairs.size();
        if (r > 62 || (std::uint64_t{1} << r) > per_edge_cap)
            fail(ErrorCode::GadgetTooLarge, "edge hypercube exceeds the per-edge cap");
        const std::int64_t points = std::int64_t{1} << r;
        for (std::int64_t x = 0; x < points; ++x) {
            for (std::size_t p = 0; p < r; ++p) {
                auto [a, b] = block.pairs[p];
                if ((x >> p) & 1) inst.sets[corr.set_index(block.u, a)].push_back(offset + x);
                else inst.sets[corr.set_index(block.v, b)].push_back(offset + x);
            }
        }
        offset += points;
        corr.edges.push_back(std::move(block));
    }
    inst.universe = offset;
    corr.universe = offset;
    for (auto& s : inst.sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return {std::move(inst), std::move(corr)};
}

SetCoverSequence multiassign_seq_to_cover_seq(const SetCoverCorrespondence& corr,
                                              const MultiAssignSequence& seq) {
    if (seq.steps.empty()) fail(ErrorCode::InvalidSequence, "empty multi-assignment sequence");
    sequence_minlab_size(seq);  // adjacency check
    SetCoverSequence out;
    out.steps.reserve(seq.steps.size());
    for (const auto& step : seq.steps) {
        if (step.sets.size() != corr.var_count)
            fail(ErrorCode::AlphabetMismatch, "multi-assignment over a different variable set");
        std::vector<int> chosen;
        for (std::size_t v = 0; v < step.sets.size(); ++v)
            for (Sym s : step.sets[v]) {
                if (s < 0 || static_cast<std::size_t>(s) >= corr.alphabet_size)
                    fail(ErrorCode::AlphabetMismatch, "symbol outside the source alphabet");
                chosen.push_back(corr.set_index(static_cast<int>(v), s));
            }
        std::sort(chosen.begin(), chosen.end());
        out.steps.push_back(std::move(chosen));
    }
    return out;
}

MultiAssignSequence cover_seq_to_multiassign_seq(const SetCoverCorrespondence& corr,
                                                 const SetCoverSequence& seq) {
    if (seq.steps.empty()) fail(ErrorCode::InvalidSequence, "empty cover sequence");
    MultiAssignSequence out;
    out.steps.reserve(seq.steps.size());
    for (const auto& step : seq.steps) {
        MultiAssignment m;
        m.sets.resize(corr.var_count);
        for (int idx : step) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= corr.var_count * corr.alphabet_size)
                fail(ErrorCode::IndexOutOfRange, "set index out of range");
            int v = idx / static_cast<int>(corr.alphabet_size);
            Sym s = static_cast<Sym>(idx % corr.alphabet_size);
            m.sets[v].push_back(s);
        }
        m.normalize();
        out.steps.push_back(std::move(m));
    }
    for (std::size_t i = 1; i < out.steps.size(); ++i)
        if (!multi_neighbors(out.steps[i - 1], out.steps[i]))
            fail(ErrorCode::InvalidSequence, "cover steps do not differ by one set");
    return out;
}

}  // namespace recon
