#include <doctest.h>

#include <algorithm>

#include "recon/exact.hpp"
#include "recon/gen.hpp"
#include "recon/rih.hpp"
#include "helpers.hpp"

using namespace recon;

namespace {

// planted source whose endpoints connect at value 1 (verified below)
PlantedCsp connected_source() { return gen_planted_csp(3, 2, 4, 1); }

RihInstance reduce_with(RihCodeKind kind, const PlantedCsp& p) {
    RihOptions opts;
    opts.code_kind = kind;
    return rih_reduce(p.csp, p.psi_s, p.psi_t, opts);
}

}  // namespace

TEST_CASE("reduction layout: selector, four copies, four auxiliaries") {
    PlantedCsp p = connected_source();
    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);

    const int n = rih.block_bits();
    CHECK(n == 8);  // 3 message bits
    CHECK(rih.code().distance() == 4);
    CHECK(rih.epsilon == Rational(1, 100));
    CHECK(rih.csp.arity() == 3);
    CHECK(rih.csp.var_count() == static_cast<std::size_t>(1 + 4 * n + 4));
    CHECK(rih.csp.variables().name(0) == "v*");
    CHECK(rih.csp.variables().name(1) == "c1_b0");
    CHECK(rih.csp.variables().name(1 + 4 * n) == "a1");
    CHECK(rih.vstar == 0);

    CHECK(rih.csp.constraints().size() == static_cast<std::size_t>(12 * n));
    for (int i = 0; i < 4; ++i) {
        CHECK(rih.edge_groups[i].size() == static_cast<std::size_t>(3 * n));
        for (int e : rih.edge_groups[i]) {
            const Constraint& c = rih.csp.constraints()[e];
            REQUIRE(c.scope.size() == 3);
            CHECK(c.scope[0] == rih.vstar);
            CHECK(c.scope[2] == rih.aux_var[i]);
            CHECK(c.wildcard_first.size() == 3);  // the three excused selectors
        }
    }

    CHECK(value(rih.csp, rih.psi_s) == Rational(1));
    CHECK(value(rih.csp, rih.psi_t) == Rational(1));
    CHECK(rih.psi_s.vals[rih.vstar] == rih.selector_symbol[3]);  // starts at s4

    RihInstance again = reduce_with(RihCodeKind::hadamard, p);
    CHECK(again.psi_s == rih.psi_s);
    CHECK(again.psi_t == rih.psi_t);
}

TEST_CASE("a non-selector symbol on the pivot violates everything") {
    PlantedCsp p = connected_source();
    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);
    Assignment broken = rih.psi_s;
    broken.vals[rih.vstar] = rih.bit_symbol[0];
    CHECK(value(rih.csp, broken) == Rational(0));
}

TEST_CASE("a selector excuses three groups and activates its own") {
    PlantedCsp p = connected_source();
    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);
    const int n = rih.block_bits();

    Assignment sel1 = rih.psi_s;
    sel1.vals[rih.vstar] = rih.selector_symbol[0];
    CHECK(value(rih.csp, sel1) == Rational(1));

    // flipping one bit of copy 2 breaks exactly one group-1 constraint
    Assignment flipped = sel1;
    const int bit = rih.copy_vars[1][0];
    flipped.vals[bit] =
        flipped.vals[bit] == rih.bit_symbol[0] ? rih.bit_symbol[1] : rih.bit_symbol[0];
    CHECK(satisfied_count(rih.csp, flipped) == 12 * n - 1);
}

TEST_CASE("reduction rejects bad sources and endpoints") {
    CspInstance tri = triangle_neq();
    CHECK_THROWS_AS(rih_reduce(tri, asg({0, 1, 0}), asg({1, 0, 1})), Error);
    try {
        rih_reduce(tri, asg({0, 1, 0}), asg({1, 0, 1}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EndpointNotSatisfying);
    }

    Constraint triple;
    triple.scope = {0, 1, 2};
    triple.allowed = {0, 0, 0};
    CspInstance three(var_names(3), bit_alphabet(), 3, {triple});
    CHECK_THROWS_AS(rih_reduce(three, asg({0, 0, 0}), asg({0, 0, 0})), Error);

    PlantedCsp p = connected_source();
    RihOptions tiny;
    tiny.cap = 4;
    CHECK_THROWS_AS(rih_reduce(p.csp, p.psi_s, p.psi_t, tiny), Error);

    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);
    for (Sym a = 0; a < 2; ++a)  // encode rejects whatever fails the source
        for (Sym b = 0; b < 2; ++b)
            for (Sym c = 0; c < 2; ++c) {
                Assignment psi = asg({a, b, c});
                if (value(p.csp, psi) != Rational(1))
                    CHECK_THROWS_AS(rih_encode(rih, psi), Error);
                else
                    CHECK(value(rih.csp, rih_encode(rih, psi)) == Rational(1));
            }
}

TEST_CASE("expansion walks the selector cycle with fixed step counts") {
    PlantedCsp p = connected_source();
    auto witness = exact_maxmin(p.csp, p.psi_s, p.psi_t);
    REQUIRE(witness.optimum == Rational(1));
    const std::size_t moves = witness.witness.steps.size() - 1;

    RihInstance had = reduce_with(RihCodeKind::hadamard, p);
    ReconfigSequence seq = completeness_sequence(had, witness.witness);
    CHECK(is_valid_sequence(had.psi_s, had.psi_t, seq));
    CHECK(sequence_value(had.csp, seq) == Rational(1));
    // per source move: 4 selector steps, 4 encoded-copy rewrites of d = n/2
    // bits each, and 3 auxiliary updates after each rewrite
    CHECK(seq.steps.size() == 1 + moves * (16 + 2 * static_cast<std::size_t>(had.block_bits())));

    RihInstance idn = reduce_with(RihCodeKind::identity, p);
    CHECK(idn.epsilon == Rational(1, 150));  // d=1, n=3
    ReconfigSequence iseq = completeness_sequence(idn, witness.witness);
    CHECK(is_valid_sequence(idn.psi_s, idn.psi_t, iseq));
    CHECK(sequence_value(idn.csp, iseq) == Rational(1));
    CHECK(iseq.steps.size() == 1 + moves * 20);  // one changed bit per rewrite
}

TEST_CASE("expansion rejects invalid source walks") {
    PlantedCsp p = connected_source();
    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);

    ReconfigSequence reversed;
    reversed.steps = {p.psi_t, p.psi_s};
    if (hamming(p.psi_s, p.psi_t) == 1)
        CHECK_THROWS_AS(completeness_sequence(rih, reversed), Error);

    ReconfigSequence jump;
    jump.steps = {p.psi_s, p.psi_t};
    if (hamming(p.psi_s, p.psi_t) > 1)
        CHECK_THROWS_AS(completeness_sequence(rih, jump), Error);

    // endpoints of a 4-cycle coloring connect only through value-1/2 valleys
    PlantedCsp cyc = gen_cycle_coloring(4);
    RihInstance rc = reduce_with(RihCodeKind::hadamard, cyc);
    ReconfigSequence direct = direct_sequence(cyc.psi_s, cyc.psi_t, {0, 1, 2, 3});
    CHECK_THROWS_AS(completeness_sequence(rc, direct), Error);
    try {
        completeness_sequence(rc, direct);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidSourceSequence);
    }
}

TEST_CASE("decoding the expanded walk recovers the source walk exactly") {
    for (std::uint64_t seed : {1ull, 3ull, 5ull}) {
        PlantedCsp p = gen_planted_csp(3, 2, 4, seed);
        auto witness = exact_maxmin(p.csp, p.psi_s, p.psi_t);
        if (witness.optimum != Rational(1)) continue;

        for (RihCodeKind kind : {RihCodeKind::hadamard, RihCodeKind::identity}) {
            RihInstance rih = reduce_with(kind, p);
            ReconfigSequence expanded = completeness_sequence(rih, witness.witness);
            SoundnessResult res = soundness_decode(rih, expanded);
            CHECK(res.all_valid);
            REQUIRE(res.decoded.steps.size() == witness.witness.steps.size());
            for (std::size_t i = 0; i < res.decoded.steps.size(); ++i)
                CHECK(res.decoded.steps[i] == witness.witness.steps[i]);
            CHECK(res.diags.size() == expanded.steps.size());
            for (const auto& d : res.diags) {
                CHECK(d.selector_valid);
                CHECK(d.within_quarter);
                CHECK(d.all_satisfying);
                CHECK(d.pairwise_close);
            }
        }
    }
}

TEST_CASE("decoding edge cases: single step, truncation, missing selector") {
    PlantedCsp p = connected_source();
    RihInstance rih = reduce_with(RihCodeKind::hadamard, p);

    ReconfigSequence lone;
    lone.steps = {rih.psi_s};
    SoundnessResult single = soundness_decode(rih, lone);
    REQUIRE(single.decoded.steps.size() == 1);
    CHECK(single.decoded.steps[0] == p.psi_s);
    CHECK(single.all_valid == (p.psi_s == p.psi_t));

    auto witness = exact_maxmin(p.csp, p.psi_s, p.psi_t);
    ReconfigSequence expanded = completeness_sequence(rih, witness.witness);
    ReconfigSequence cut;
    cut.steps.assign(expanded.steps.begin(),
                     expanded.steps.begin() + expanded.steps.size() / 2);
    SoundnessResult half = soundness_decode(rih, cut);
    CHECK(!half.all_valid);  // never lands on the target
    CHECK(!half.decoded.steps.empty());

    ReconfigSequence odd;
    Assignment no_sel = rih.psi_s;
    no_sel.vals[rih.vstar] = rih.bit_symbol[1];
    odd.steps = {no_sel};
    SoundnessResult weird = soundness_decode(rih, odd);
    CHECK(!weird.diags[0].selector_valid);
    CHECK(weird.diags[0].selector == 0);

    CHECK_THROWS_AS(soundness_decode(rih, lone, 2), Error);

    ReconfigSequence empty;
    CHECK_THROWS_AS(soundness_decode(rih, empty), Error);
}
