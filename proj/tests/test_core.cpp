#include <doctest.h>

#include <algorithm>
#include <random>

#include "recon/csp.hpp"
#include "recon/gen.hpp"
#include "helpers.hpp"

using namespace recon;

namespace {

// slow independent recount: scan the allowed list linearly per constraint
std::int64_t recount_satisfied(const CspInstance& inst, const Assignment& psi) {
    std::int64_t sat = 0;
    const std::size_t k = static_cast<std::size_t>(inst.arity());
    for (const auto& c : inst.constraints()) {
        bool ok = false;
        for (Sym w : c.wildcard_first)
            if (w == psi.vals[c.scope[0]]) ok = true;
        for (std::size_t r = 0; !ok && r < c.tuple_rows(); ++r) {
            bool match = true;
            for (std::size_t j = 0; j < k; ++j)
                if (c.allowed[r * k + j] != psi.vals[c.scope[j]]) match = false;
            ok = match;
        }
        if (ok) ++sat;
    }
    return sat;
}

Assignment random_assignment(const CspInstance& inst, std::mt19937_64& rng) {
    Assignment psi;
    for (std::size_t v = 0; v < inst.var_count(); ++v) {
        const auto& dom = inst.domain(static_cast<int>(v));
        psi.vals.push_back(dom[rand_below(rng, dom.size())]);
    }
    return psi;
}

}  // namespace

TEST_CASE("name table rejects duplicates and unknown lookups") {
    CHECK_THROWS_AS(NameTable({"a", "b", "a"}), Error);
    NameTable t({"a", "b"});
    CHECK(t.require("b") == 1);
    CHECK(!t.find("c").has_value());
    CHECK_THROWS_AS(t.require("c"), Error);
}

TEST_CASE("instance construction validates shapes") {
    auto neq = [] { return edge_constraint(0, 1, {{0, 1}, {1, 0}}); };

    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 0, {}), Error);

    // scope length must equal the arity
    Constraint unary;
    unary.scope = {0};
    unary.allowed = {0};
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {unary}), Error);

    // out-of-range variable
    Constraint oob = edge_constraint(0, 5, {{0, 1}});
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {oob}), Error);

    // repeated variable in a scope
    Constraint rep = edge_constraint(1, 1, {{0, 1}});
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {rep}), Error);

    // symbol outside the alphabet
    Constraint sym = edge_constraint(0, 1, {{0, 7}});
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {sym}), Error);

    // ragged allowed list
    Constraint ragged = neq();
    ragged.allowed.push_back(0);
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {ragged}), Error);

    // domains must be non-empty and in range when given
    CHECK_THROWS_AS(CspInstance(var_names(2), bit_alphabet(), 2, {neq()}, {{0}, {}}), Error);
    CHECK_NOTHROW(CspInstance(var_names(2), bit_alphabet(), 2, {neq()}, {{0}, {0, 1}}));
}

TEST_CASE("constraints normalize to sorted deduped rows") {
    Constraint c = edge_constraint(0, 1, {{1, 0}, {0, 1}, {1, 0}});
    CspInstance inst(var_names(2), bit_alphabet(), 2, {c});
    const auto& rows = inst.constraints()[0].allowed;
    CHECK(rows == std::vector<Sym>{0, 1, 1, 0});
}

TEST_CASE("value of the triangle with differing constraints") {
    CspInstance tri = triangle_neq();
    CHECK(value(tri, asg({0, 1, 0})) == Rational(2, 3));
    CHECK(satisfied_count(tri, asg({0, 1, 0})) == 2);
    CHECK(value(tri, asg({0, 1, 1})) == Rational(2, 3));
    CHECK(value(tri, asg({0, 0, 0})) == Rational(0));
    CHECK_THROWS_AS(value(tri, asg({0, 1})), Error);
    CHECK_THROWS_AS(value(tri, asg({0, 1, 2})), Error);
}

TEST_CASE("an instance with no constraints has value 1") {
    CspInstance empty(var_names(2), bit_alphabet(), 2, {});
    CHECK(value(empty, asg({0, 1})) == Rational(1));
}

TEST_CASE("value equals the slow recount on random instances") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 25; ++it) {
        CspInstance inst = gen_random_csp(2 + it % 5, 2 + it % 3, 1 + it, 100 + it);
        for (int a = 0; a < 4; ++a) {
            Assignment psi = random_assignment(inst, rng);
            const std::int64_t slow = recount_satisfied(inst, psi);
            CHECK(satisfied_count(inst, psi) == slow);
            CHECK(value(inst, psi) ==
                  Rational(slow, static_cast<std::int64_t>(inst.constraints().size())));
        }
    }
}

TEST_CASE("sequence value on the triangle walk") {
    CspInstance tri = triangle_neq();
    ReconfigSequence seq;
    seq.steps = {asg({0, 1, 0}), asg({1, 1, 0}), asg({1, 0, 0}), asg({1, 0, 1})};
    CHECK(sequence_value(tri, seq) == Rational(2, 3));

    ReconfigSequence bad;
    bad.steps = {asg({0, 1, 0}), asg({1, 1, 0}), asg({1, 1, 1}), asg({1, 0, 1})};
    CHECK(sequence_value(tri, bad) == Rational(0));  // the all-ones step violates every edge

    ReconfigSequence jump;
    jump.steps = {asg({0, 1, 0}), asg({1, 0, 0})};
    CHECK_THROWS_AS(sequence_value(tri, jump), Error);
    ReconfigSequence empty_seq;
    CHECK_THROWS_AS(sequence_value(tri, empty_seq), Error);
}

TEST_CASE("sequence validity checks endpoints and unit moves") {
    ReconfigSequence self;
    self.steps = {asg({0, 1})};
    CHECK(is_valid_sequence(asg({0, 1}), asg({0, 1}), self));
    CHECK(!is_valid_sequence(asg({0, 1}), asg({1, 1}), self));

    ReconfigSequence jump;
    jump.steps = {asg({0, 0}), asg({1, 1})};
    CHECK(!is_valid_sequence(asg({0, 0}), asg({1, 1}), jump));

    ReconfigSequence ok;
    ok.steps = {asg({0, 0}), asg({1, 0}), asg({1, 1})};
    CHECK(is_valid_sequence(asg({0, 0}), asg({1, 1}), ok));
    CHECK(hamming(ok.steps[0], ok.steps[2]) == 2);
}

TEST_CASE("multi-assignments: satisfaction, neighbors, peak") {
    CspInstance tri = triangle_neq();

    MultiAssignment full;
    full.sets = {{0, 1}, {0, 1}, {0, 1}};
    CHECK(multi_satisfies(tri, full));  // pick an alternating pair per edge

    MultiAssignment gap;
    gap.sets = {{0, 1}, {}, {0, 1}};
    CHECK(!multi_satisfies(tri, gap));  // empty set on a constrained variable

    MultiAssignment a, b;
    a.sets = {{0}, {1}, {0}};
    b.sets = {{0}, {1}, {0, 1}};
    CHECK(multi_neighbors(a, b));
    CHECK(multi_neighbors(b, a));
    CHECK(!multi_neighbors(a, a));
    CHECK(a.size() == 3);
    CHECK(b.size() == 4);

    MultiAssignSequence singles;
    MultiAssignment five;
    five.sets = {{0}, {0}, {0}, {0}, {0}};
    singles.steps = {five};
    CHECK(sequence_minlab_size(singles) == 5);
}

TEST_CASE("singleton multi-assignments agree with assignment values") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 20; ++it) {
        CspInstance inst = gen_random_csp(3, 2, 4, 500 + it);
        Assignment psi = random_assignment(inst, rng);
        MultiAssignment m;
        for (Sym s : psi.vals) m.sets.push_back({s});
        CHECK(multi_satisfies(inst, m) == (value(inst, psi) == Rational(1)));
    }
}

TEST_CASE("unsatisfying or non-adjacent steps fail the sequence check") {
    CspInstance tri = triangle_neq();
    MultiAssignment good, bad;
    good.sets = {{0}, {1}, {0, 1}};
    bad.sets = {{0}, {1}, {0}};  // removing x2's symbol 1 leaves (x0,x2) stuck at (0,0)
    CHECK(multi_satisfies(tri, good));
    CHECK(!multi_satisfies(tri, bad));

    MultiAssignSequence seq;
    seq.steps = {good, bad};
    CHECK(!satisfies_sequence(tri, seq));  // adjacent, but the second step fails

    MultiAssignment far;
    far.sets = {{1}, {0}, {0, 1}};
    seq.steps = {good, far};
    CHECK(multi_satisfies(tri, far));
    CHECK_THROWS_AS(satisfies_sequence(tri, seq), Error);  // the move is not unit

    seq.steps = {good};
    CHECK(satisfies_sequence(tri, seq));
}

TEST_CASE("partial assignments and their maximum") {
    // single edge with an empty allowed set: only one endpoint can be set
    Constraint none;
    none.scope = {0, 1};
    CspInstance blocked(var_names(2), bit_alphabet(), 2, {none});
    PartialAssignment p;
    p.vals = {0, PartialAssignment::kUnset};
    CHECK(partial_satisfies(blocked, p));
    p.vals = {0, 0};
    CHECK(!partial_satisfies(blocked, p));
    CHECK(max_par_bruteforce(blocked) == 1);

    CspInstance nothing({}, bit_alphabet(), 2, {});
    CHECK(max_par_bruteforce(nothing) == 0);

    CspInstance tri = triangle_neq();
    CHECK(max_par_bruteforce(tri) == 2);  // an odd cycle is not 2-colorable
}

TEST_CASE("max partial equals variable count exactly when value 1 is reachable") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        CspInstance inst = gen_random_csp(3, 2, 3 + it % 4, 900 + it);
        bool satisfiable = false;
        for (Sym a = 0; a < 2; ++a)
            for (Sym b = 0; b < 2; ++b)
                for (Sym c = 0; c < 2; ++c)
                    if (value(inst, asg({a, b, c})) == Rational(1)) satisfiable = true;
        CHECK((max_par_bruteforce(inst) == 3) == satisfiable);
    }
}

TEST_CASE("direct sequences flip the listed variables in order") {
    Assignment s = asg({0, 0, 0});
    Assignment t = asg({1, 1, 1});
    ReconfigSequence seq = direct_sequence(s, t, {2, 0, 1});
    REQUIRE(seq.steps.size() == 4);
    CHECK(seq.steps.front() == s);
    CHECK(seq.steps.back() == t);
    CHECK(seq.steps[1] == asg({0, 0, 1}));
    CHECK(is_valid_sequence(s, t, seq));

    ReconfigSequence loop = direct_sequence(s, s, {});
    CHECK(loop.steps == std::vector<Assignment>{s});

    CHECK_THROWS_AS(direct_sequence(s, t, std::vector<int>{0, 1}), Error);      // incomplete
    CHECK_THROWS_AS(direct_sequence(s, t, std::vector<int>{0, 0, 1, 2}), Error);  // repeated
    Assignment t2 = asg({1, 0, 0});
    CHECK_THROWS_AS(direct_sequence(s, t2, std::vector<int>{0, 1}), Error);  // agreeing var listed
}

TEST_CASE("state count saturates instead of overflowing") {
    CspInstance wide(var_names(63), bit_alphabet(), 2, {});
    CHECK(wide.state_count() == (std::uint64_t{1} << 62));
    CspInstance narrow(var_names(3), bit_alphabet(), 2, {});
    CHECK(narrow.state_count() == 8);
}
