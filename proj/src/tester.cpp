#include "recon/tester.hpp"

#include <algorithm>

namespace recon {

namespace {

// lexicographic enumeration of total assignments, variable 0 most significant
bool next_assignment(const CspInstance& inst, Assignment& psi) {
    for (int v = static_cast<int>(inst.var_count()) - 1; v >= 0; --v) {
        const auto& dom = inst.domain(v);
        auto it = std::find(dom.begin(), dom.end(), psi.vals[v]);
        if (it + 1 != dom.end()) {
            psi.vals[v] = *(it + 1);
            return true;
        }
        psi.vals[v] = dom.front();
    }
    return false;
}

Assignment first_assignment(const CspInstance& inst) {
    Assignment psi;
    psi.vals.reserve(inst.var_count());
    for (std::size_t v = 0; v < inst.var_count(); ++v)
        psi.vals.push_back(inst.domain(static_cast<int>(v)).front());
    return psi;
}

}  // namespace

PhiSpec build_phi(const CspInstance& source, const BinaryCode& code, const LabelBitMap& pi,
                  int guarded_group, std::uint64_t cap) {
    if (guarded_group < 1 || guarded_group > 4)
        fail(ErrorCode::BadParams, "group index must be in 1..4");
    if (code.message_bits() != static_cast<int>(source.var_count()) * pi.width())
        fail(ErrorCode::BadParams, "code message length does not fit the label map");
    if (source.state_count() > cap)
        fail(ErrorCode::TooLarge, "assignment space exceeds cap");

    PhiSpec phi(guarded_group, code, pi, source);

    Assignment psi = first_assignment(source);
    do {
        if (value(source, psi) == Rational(1)) phi.source_satisfying.push_back(psi);
    } while (next_assignment(source, psi));

    const auto& sats = phi.source_satisfying;
    std::vector<BitVec> enc(sats.size());
    for (std::size_t i = 0; i < sats.size(); ++i) {
        BitVec msg(code.message_bits());
        for (std::size_t v = 0; v < source.var_count(); ++v) pi.write(msg, v, sats[i].vals[v]);
        enc[i] = code.encode(msg);
    }

    auto close = [&](int a, int b) { return hamming(sats[a], sats[b]) <= 1; };
    const int cnt = static_cast<int>(sats.size());
    for (int i = 0; i < cnt; ++i)
        for (int j = 0; j < cnt; ++j) {
            if (!close(i, j)) continue;
            for (int k = 0; k < cnt; ++k) {
                if (!close(i, k) || !close(j, k)) continue;
                phi.triples.push_back({i, j, k});
                BitVec word(3 * phi.block_bits);
                const BitVec* blocks[3] = {&enc[i], &enc[j], &enc[k]};
                for (int b = 0; b < 3; ++b)
                    for (int p = 0; p < phi.block_bits; ++p)
                        word.set(b * phi.block_bits + p, blocks[b]->get(p));
                phi.satisfying.push_back(std::move(word));
            }
        }
    return phi;
}

bool PhiSpec::accepts(const BitVec& word) const {
    if (word.size() != static_cast<std::size_t>(3 * block_bits)) return false;
    Assignment decoded[3];
    for (int b = 0; b < 3; ++b) {
        BitVec block(block_bits);
        for (int p = 0; p < block_bits; ++p) block.set(p, word.get(b * block_bits + p));
        auto msg = code.exact_decode(block);
        if (!msg) return false;
        Assignment psi;
        psi.vals.reserve(source.var_count());
        for (std::size_t v = 0; v < source.var_count(); ++v) {
            auto s = label_map.read(*msg, v);
            if (!s || !source.in_domain(static_cast<int>(v), *s)) return false;
            psi.vals.push_back(*s);
        }
        if (value(source, psi) != Rational(1)) return false;
        decoded[b] = std::move(psi);
    }
    return hamming(decoded[0], decoded[1]) <= 1 && hamming(decoded[0], decoded[2]) <= 1 &&
           hamming(decoded[1], decoded[2]) <= 1;
}

int PhiSpec::triple_index(int i, int j, int k) const {
    std::array<int, 3> key{i, j, k};
    auto it = std::lower_bound(triples.begin(), triples.end(), key);
    if (it == triples.end() || *it != key)
        fail(ErrorCode::BadParams, "triple is not an accepted word");
    return static_cast<int>(it - triples.begin());
}

// ---- brute-force tester -------------------------------------------------------

TesterOutput brute_force_tester(const PhiSpec& phi) {
    const std::size_t count = phi.satisfying.size();
    if (count == 0) fail(ErrorCode::Unsatisfiable, "the circuit accepts no word");

    const int x_bits = 3 * phi.block_bits;
    std::vector<std::string> vars;
    vars.reserve(x_bits + 1);
    for (int j = 0; j < x_bits; ++j) vars.push_back("x" + std::to_string(j));
    vars.push_back("a");

    std::vector<std::string> alphabet = {"0", "1"};
    for (std::size_t r = 0; r < count; ++r) alphabet.push_back("t" + std::to_string(r));

    std::vector<std::vector<Sym>> domains(x_bits + 1);
    for (int j = 0; j < x_bits; ++j) domains[j] = {0, 1};
    for (std::size_t r = 0; r < count; ++r) domains[x_bits].push_back(static_cast<Sym>(2 + r));

    std::vector<Constraint> constraints;
    constraints.reserve(x_bits);
    for (int j = 0; j < x_bits; ++j) {
        Constraint c;
        c.scope = {j, x_bits};
        for (std::size_t r = 0; r < count; ++r) {
            c.allowed.push_back(phi.satisfying[r].get(j) ? 1 : 0);
            c.allowed.push_back(static_cast<Sym>(2 + r));
        }
        constraints.push_back(std::move(c));
    }

    TesterOutput out{
        CspInstance(std::move(vars), std::move(alphabet), 2, std::move(constraints),
                    std::move(domains)),
        x_bits, Rational(1, 1), count};
    return out;
}

Sym TesterOutput::aux_symbol_for(int accepted_index) const {
    if (accepted_index < 0 || static_cast<std::size_t>(accepted_index) >= accepted_count)
        fail(ErrorCode::IndexOutOfRange, "accepted word index out of range");
    return static_cast<Sym>(2 + accepted_index);
}

}  // namespace recon
