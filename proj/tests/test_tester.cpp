#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "recon/gen.hpp"
#include "recon/tester.hpp"
#include "helpers.hpp"

using namespace recon;

namespace {

// x0 != x1, exactly two satisfying assignments at Hamming distance 2
CspInstance neq_edge() {
    return CspInstance(var_names(2), bit_alphabet(), 2,
                       {edge_constraint(0, 1, {{0, 1}, {1, 0}})});
}

PhiSpec neq_phi(const BinaryCode& code) {
    return build_phi(neq_edge(), code, LabelBitMap(2), 1);
}

BitVec word_of_blocks(const PhiSpec& phi, const BitVec& a, const BitVec& b, const BitVec& c) {
    BitVec w(static_cast<std::size_t>(3 * phi.block_bits));
    const BitVec* blocks[3] = {&a, &b, &c};
    for (int t = 0; t < 3; ++t)
        for (int p = 0; p < phi.block_bits; ++p)
            w.set(static_cast<std::size_t>(t * phi.block_bits + p),
                  blocks[t]->get(static_cast<std::size_t>(p)));
    return w;
}

BitVec encode_assignment(const PhiSpec& phi, const Assignment& psi) {
    BitVec msg(static_cast<std::size_t>(phi.code.message_bits()));
    for (std::size_t v = 0; v < psi.vals.size(); ++v) phi.label_map.write(msg, v, psi.vals[v]);
    return phi.code.encode(msg);
}

// best value over the auxiliary alphabet for fixed word bits
Rational best_aux_value(const TesterOutput& tester, const BitVec& bits) {
    Assignment psi;
    for (std::size_t i = 0; i < bits.size(); ++i) psi.vals.push_back(bits.get(i) ? 1 : 0);
    psi.vals.push_back(0);  // placeholder
    Rational best(0);
    for (Sym a : tester.csp.domain(tester.aux_var)) {
        psi.vals.back() = a;
        best = std::max(best, value(tester.csp, psi));
    }
    return best;
}

std::size_t nearest_accepted_distance(const PhiSpec& phi, const BitVec& bits) {
    std::size_t best = bits.size() + 1;
    for (const BitVec& w : phi.satisfying) best = std::min(best, bits.distance(w));
    return best;
}

}  // namespace

TEST_CASE("a lone unequal edge yields exactly the two constant triples") {
    PhiSpec phi = neq_phi(BinaryCode::identity(2));
    REQUIRE(phi.source_satisfying.size() == 2);
    CHECK(phi.source_satisfying[0].vals == std::vector<Sym>{0, 1});
    CHECK(phi.source_satisfying[1].vals == std::vector<Sym>{1, 0});

    // the two satisfying assignments differ everywhere, so no mixed triple
    REQUIRE(phi.triples.size() == 2);
    CHECK(phi.triples[0] == std::array<int, 3>{0, 0, 0});
    CHECK(phi.triples[1] == std::array<int, 3>{1, 1, 1});
    CHECK(phi.satisfying[0] == BitVec::from_string("010101"));
    CHECK(phi.satisfying[1] == BitVec::from_string("101010"));
    CHECK(phi.triple_index(0, 0, 0) == 0);
    CHECK(phi.triple_index(1, 1, 1) == 1);
    CHECK_THROWS_AS(phi.triple_index(0, 1, 0), Error);
}

TEST_CASE("acceptance agrees with the enumerated words on every input") {
    PhiSpec phi = neq_phi(BinaryCode::identity(2));
    std::set<std::string> listed;
    for (const BitVec& w : phi.satisfying) listed.insert(w.str());
    for (std::uint32_t x = 0; x < 64; ++x) {
        BitVec w(6);
        for (int i = 0; i < 6; ++i) w.set(i, (x >> i) & 1);
        CHECK(phi.accepts(w) == (listed.count(w.str()) > 0));
    }
    CHECK(!phi.accepts(BitVec(4)));  // wrong length

    PlantedCsp p = gen_planted_csp(3, 2, 3, 2);
    PhiSpec phi3 = build_phi(p.csp, BinaryCode::identity(3), LabelBitMap(2), 2);
    CHECK(phi3.guarded_group == 2);
    CHECK(std::is_sorted(phi3.triples.begin(), phi3.triples.end()));
    for (std::size_t t = 0; t < phi3.triples.size(); ++t)
        CHECK(phi3.triple_index(phi3.triples[t][0], phi3.triples[t][1], phi3.triples[t][2]) ==
              static_cast<int>(t));
    std::set<std::string> listed3;
    for (const BitVec& w : phi3.satisfying) listed3.insert(w.str());
    for (std::uint32_t x = 0; x < 512; ++x) {
        BitVec w(9);
        for (int i = 0; i < 9; ++i) w.set(i, (x >> i) & 1);
        CHECK(phi3.accepts(w) == (listed3.count(w.str()) > 0));
    }
}

TEST_CASE("rejection reasons: non-codeword, unsatisfying decode, far pair") {
    PhiSpec phi = neq_phi(BinaryCode::hadamard(2));
    CHECK(phi.block_bits == 4);
    const BitVec good = encode_assignment(phi, asg({0, 1}));
    const BitVec other = encode_assignment(phi, asg({1, 0}));
    const BitVec unsat = encode_assignment(phi, asg({0, 0}));

    CHECK(phi.accepts(word_of_blocks(phi, good, good, good)));
    CHECK(phi.accepts(word_of_blocks(phi, other, other, other)));

    BitVec broken = good;
    broken.set(0, !broken.get(0));  // one flipped bit destroys the codeword
    CHECK(!phi.accepts(word_of_blocks(phi, broken, good, good)));

    CHECK(!phi.accepts(word_of_blocks(phi, unsat, unsat, unsat)));

    // both blocks decode fine but sit at Hamming distance 2
    CHECK(!phi.accepts(word_of_blocks(phi, good, other, good)));
}

TEST_CASE("construction validates group, code size and cap") {
    CspInstance src = neq_edge();
    CHECK_THROWS_AS(build_phi(src, BinaryCode::identity(2), LabelBitMap(2), 0), Error);
    CHECK_THROWS_AS(build_phi(src, BinaryCode::identity(2), LabelBitMap(2), 5), Error);
    CHECK_THROWS_AS(build_phi(src, BinaryCode::identity(3), LabelBitMap(2), 1), Error);
    CHECK_THROWS_AS(build_phi(src, BinaryCode::identity(2), LabelBitMap(2), 1, 2), Error);
}

TEST_CASE("tester wiring: one shared auxiliary, one constraint per bit") {
    PhiSpec phi = neq_phi(BinaryCode::identity(2));
    TesterOutput tester = brute_force_tester(phi);
    CHECK(tester.gamma == Rational(1));
    CHECK(tester.accepted_count == 2);
    CHECK(tester.aux_var == 6);
    CHECK(tester.csp.var_count() == 7);
    CHECK(tester.csp.constraints().size() == 6);
    CHECK(tester.csp.variables().name(6) == "a");
    CHECK(tester.csp.domain(0) == std::vector<Sym>{0, 1});
    CHECK(tester.csp.domain(6) == std::vector<Sym>{2, 3});
    CHECK(tester.aux_symbol_for(0) == 2);
    CHECK(tester.aux_symbol_for(1) == 3);
    CHECK_THROWS_AS(tester.aux_symbol_for(2), Error);

    // completeness: each accepted word extended by its own auxiliary symbol
    for (std::size_t r = 0; r < phi.satisfying.size(); ++r) {
        Assignment psi;
        for (std::size_t i = 0; i < phi.satisfying[r].size(); ++i)
            psi.vals.push_back(phi.satisfying[r].get(i) ? 1 : 0);
        psi.vals.push_back(tester.aux_symbol_for(static_cast<int>(r)));
        CHECK(value(tester.csp, psi) == Rational(1));
    }
}

TEST_CASE("best auxiliary value equals one minus the relative distance") {
    PhiSpec phi = neq_phi(BinaryCode::identity(2));
    TesterOutput tester = brute_force_tester(phi);
    for (std::uint32_t x = 0; x < 64; ++x) {
        BitVec bits(6);
        for (int i = 0; i < 6; ++i) bits.set(i, (x >> i) & 1);
        const auto d = static_cast<std::int64_t>(nearest_accepted_distance(phi, bits));
        CHECK(best_aux_value(tester, bits) == Rational(1) - Rational(d, 6));
    }
}

TEST_CASE("a single far word pins the best value exactly") {
    // only (0,1) satisfies, so the circuit accepts one word
    CspInstance src(var_names(2), bit_alphabet(), 2, {edge_constraint(0, 1, {{0, 1}})});
    PhiSpec phi = build_phi(src, BinaryCode::identity(2), LabelBitMap(2), 1);
    REQUIRE(phi.satisfying.size() == 1);
    TesterOutput tester = brute_force_tester(phi);

    BitVec two_off = phi.satisfying[0];
    two_off.set(0, !two_off.get(0));
    two_off.set(3, !two_off.get(3));
    CHECK(best_aux_value(tester, two_off) == Rational(2, 3));  // 1 - 2/6
}

TEST_CASE("an unsatisfiable source leaves the tester nothing to accept") {
    Constraint none;
    none.scope = {0, 1};
    CspInstance src(var_names(2), bit_alphabet(), 2, {none});
    PhiSpec phi = build_phi(src, BinaryCode::identity(2), LabelBitMap(2), 1);
    CHECK(phi.satisfying.empty());
    CHECK_THROWS_AS(brute_force_tester(phi), Error);
    try {
        brute_force_tester(phi);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsatisfiable);
    }
}
