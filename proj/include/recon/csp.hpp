#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "recon/error.hpp"
#include "recon/rational.hpp"

namespace recon {

using Sym = std::int32_t;

/// Bidirectional name table. I/O speaks string ids, everything internal is a
/// dense index into this table.
class NameTable {
public:
    NameTable() = default;
    explicit NameTable(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> find(const std::string& name) const;
    int require(const std::string& name) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// One k-ary constraint: an explicit, lexicographically sorted list of
/// allowed tuples plus an optional wildcard ("any tuple whose first symbol
/// lies in this set is allowed"). The wildcard keeps instances whose
/// constraints accept entire half-spaces of tuples from blowing up in
/// memory; explicit tuples and wildcard may overlap.
struct Constraint {
    std::vector<int> scope;                // k distinct variable indices
    std::vector<Sym> allowed;              // row-major k-tuples, sorted, deduped
    std::vector<Sym> wildcard_first;       // sorted symbol ids, may be empty

    std::size_t tuple_rows() const { return scope.empty() ? 0 : allowed.size() / scope.size(); }
    bool allows(const Sym* t) const;
    void normalize();                      // sort + dedup rows and wildcard list
};

/// k-uniform CSP instance over a finite alphabet, with optional per-variable
/// domain restriction. Parallel constraints on the same scope are kept with
/// multiplicity; the value of an assignment counts each one separately.
class CspInstance {
public:
    CspInstance(std::vector<std::string> variables,
                std::vector<std::string> alphabet,
                int arity,
                std::vector<Constraint> constraints,
                std::vector<std::vector<Sym>> domains = {});

    int arity() const { return arity_; }
    std::size_t var_count() const { return vars_.size(); }
    std::size_t alphabet_size() const { return syms_.size(); }
    const NameTable& variables() const { return vars_; }
    const NameTable& symbols() const { return syms_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    const std::vector<Sym>& domain(int v) const { return domains_[v]; }
    bool in_domain(int v, Sym s) const;
    bool restricted() const { return restricted_; }

    /// Product of domain sizes, saturated at 2^62.
    std::uint64_t state_count() const;

private:
    int arity_;
    NameTable vars_;
    NameTable syms_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<Sym>> domains_;
    bool restricted_ = false;
};

struct Assignment {
    std::vector<Sym> vals;

    friend bool operator==(const Assignment& a, const Assignment& b) { return a.vals == b.vals; }
    friend bool operator!=(const Assignment& a, const Assignment& b) { return !(a == b); }
    friend bool operator<(const Assignment& a, const Assignment& b) { return a.vals < b.vals; }
};

/// Multi-assignment: a (possibly empty) sorted set of symbols per variable.
struct MultiAssignment {
    std::vector<std::vector<Sym>> sets;

    std::int64_t size() const;
    void normalize();

    friend bool operator==(const MultiAssignment& a, const MultiAssignment& b) { return a.sets == b.sets; }
    friend bool operator!=(const MultiAssignment& a, const MultiAssignment& b) { return !(a == b); }
};

struct PartialAssignment {
    static constexpr Sym kUnset = -1;
    std::vector<Sym> vals;  // kUnset where unassigned

    std::int64_t size() const;
};

struct ReconfigSequence {
    std::vector<Assignment> steps;
};

struct MultiAssignSequence {
    std::vector<MultiAssignment> steps;
};

// ---- basic operations ------------------------------------------------------

int hamming(const Assignment& a, const Assignment& b);

/// Fraction of constraints satisfied by a total assignment. An instance with
/// no constraints has value 1 by convention.
Rational value(const CspInstance& inst, const Assignment& psi);

/// Number of constraints satisfied (integer form of value()).
std::int64_t satisfied_count(const CspInstance& inst, const Assignment& psi);

/// Minimum step value along a reconfiguration sequence. Consecutive steps
/// must differ in exactly one variable.
Rational sequence_value(const CspInstance& inst, const ReconfigSequence& seq);

/// True iff seq starts at psi_s, ends at psi_t and moves one variable per step.
bool is_valid_sequence(const Assignment& psi_s, const Assignment& psi_t,
                       const ReconfigSequence& seq);

/// Adjacency of multi-assignments: insert or delete exactly one symbol.
bool multi_neighbors(const MultiAssignment& a, const MultiAssignment& b);

/// A multi-assignment satisfies a 2-CSP when every constraint has some
/// allowed pair inside the assigned sets.
bool multi_satisfies(const CspInstance& inst, const MultiAssignment& m);

/// Largest step size of a multi-assignment sequence (its "peak").
std::int64_t sequence_minlab_size(const MultiAssignSequence& seq);

/// True iff every step of the sequence satisfies the instance. Also enforces
/// step adjacency.
bool satisfies_sequence(const CspInstance& inst, const MultiAssignSequence& seq);

/// A partial assignment satisfies the instance when every constraint whose
/// scope is fully assigned is satisfied.
bool partial_satisfies(const CspInstance& inst, const PartialAssignment& p);

/// Maximum size of a satisfying partial assignment, by enumeration.
std::int64_t max_par_bruteforce(const CspInstance& inst, std::uint64_t cap = 1u << 20);

/// The canonical sequence flipping differing variables from psi_s to psi_t in
/// the given order. `order` must list each differing variable exactly once
/// and nothing else.
ReconfigSequence direct_sequence(const Assignment& psi_s, const Assignment& psi_t,
                                 const std::vector<int>& order);

}  // namespace recon
