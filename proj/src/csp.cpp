#include "recon/csp.hpp"

#include <algorithm>
#include <numeric>

namespace recon {

// ---- NameTable --------------------------------------------------------------

NameTable::NameTable(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
        if (!fresh) fail(ErrorCode::BadParams, "duplicate id '" + names_[i] + "'");
    }
}

std::optional<int> NameTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int NameTable::require(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(ErrorCode::AlphabetMismatch, "unknown id '" + name + "'");
    return it->second;
}

// ---- Constraint -------------------------------------------------------------

namespace {

struct RowLess {
    std::size_t k;
    bool operator()(const Sym* a, const Sym* b) const {
        return std::lexicographical_compare(a, a + k, b, b + k);
    }
};

}  // namespace

void Constraint::normalize() {
    const std::size_t k = scope.size();
    if (k == 0) return;
    std::vector<const Sym*> rows;
    rows.reserve(tuple_rows());
    for (std::size_t r = 0; r * k < allowed.size(); ++r) rows.push_back(allowed.data() + r * k);
    std::sort(rows.begin(), rows.end(), RowLess{k});
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [k](const Sym* a, const Sym* b) { return std::equal(a, a + k, b); }),
               rows.end());
    std::vector<Sym> out;
    out.reserve(rows.size() * k);
    for (const Sym* r : rows) out.insert(out.end(), r, r + k);
    allowed = std::move(out);

    std::sort(wildcard_first.begin(), wildcard_first.end());
    wildcard_first.erase(std::unique(wildcard_first.begin(), wildcard_first.end()),
                         wildcard_first.end());
}

bool Constraint::allows(const Sym* t) const {
    if (!wildcard_first.empty() &&
        std::binary_search(wildcard_first.begin(), wildcard_first.end(), t[0]))
        return true;
    const std::size_t k = scope.size();
    std::size_t lo = 0, hi = tuple_rows();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        const Sym* row = allowed.data() + mid * k;
        if (std::lexicographical_compare(row, row + k, t, t + k)) lo = mid + 1;
        else hi = mid;
    }
    if (lo == tuple_rows()) return false;
    const Sym* row = allowed.data() + lo * k;
    return std::equal(row, row + k, t);
}

// ---- CspInstance ------------------------------------------------------------

CspInstance::CspInstance(std::vector<std::string> variables,
                         std::vector<std::string> alphabet,
                         int arity,
                         std::vector<Constraint> constraints,
                         std::vector<std::vector<Sym>> domains)
    : arity_(arity),
      vars_(std::move(variables)),
      syms_(std::move(alphabet)),
      constraints_(std::move(constraints)),
      domains_(std::move(domains)) {
    if (arity_ < 1) fail(ErrorCode::ArityError, "arity must be at least 1");
    const int n = static_cast<int>(vars_.size());
    const Sym q = static_cast<Sym>(syms_.size());

    if (domains_.empty()) {
        std::vector<Sym> full(q);
        std::iota(full.begin(), full.end(), 0);
        domains_.assign(n, full);
    } else {
        if (domains_.size() != static_cast<std::size_t>(n))
            fail(ErrorCode::BadParams, "domain list size mismatch");
        for (auto& d : domains_) {
            std::sort(d.begin(), d.end());
            d.erase(std::unique(d.begin(), d.end()), d.end());
            if (d.empty()) fail(ErrorCode::BadParams, "empty variable domain");
            if (d.front() < 0 || d.back() >= q)
                fail(ErrorCode::AlphabetMismatch, "domain symbol out of range");
            if (d.size() != static_cast<std::size_t>(q)) restricted_ = true;
        }
    }

    for (auto& c : constraints_) {
        if (c.scope.size() != static_cast<std::size_t>(arity_))
            fail(ErrorCode::ArityError, "constraint scope size differs from arity");
        std::vector<int> sorted = c.scope;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= n)
                fail(ErrorCode::IndexOutOfRange, "constraint scope variable out of range");
            if (i > 0 && sorted[i] == sorted[i - 1])
                fail(ErrorCode::BadParams, "repeated variable in constraint scope");
        }
        if (c.allowed.size() % static_cast<std::size_t>(arity_) != 0)
            fail(ErrorCode::BadParams, "allowed tuple list length not a multiple of arity");
        for (Sym s : c.allowed)
            if (s < 0 || s >= q) fail(ErrorCode::AlphabetMismatch, "tuple symbol out of range");
        for (Sym s : c.wildcard_first)
            if (s < 0 || s >= q) fail(ErrorCode::AlphabetMismatch, "wildcard symbol out of range");
        c.normalize();
    }
}

bool CspInstance::in_domain(int v, Sym s) const {
    const auto& d = domains_[v];
    return std::binary_search(d.begin(), d.end(), s);
}

std::uint64_t CspInstance::state_count() const {
    constexpr std::uint64_t kSat = std::uint64_t{1} << 62;
    std::uint64_t total = 1;
    for (const auto& d : domains_) {
        std::uint64_t ds = d.size();
        if (total > kSat / ds) return kSat;
        total *= ds;
    }
    return total;
}

// ---- assignments ------------------------------------------------------------

std::int64_t MultiAssignment::size() const {
    std::int64_t s = 0;
    for (const auto& set : sets) s += static_cast<std::int64_t>(set.size());
    return s;
}

void MultiAssignment::normalize() {
    for (auto& set : sets) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
}

std::int64_t PartialAssignment::size() const {
    return std::count_if(vals.begin(), vals.end(), [](Sym s) { return s != kUnset; });
}

int hamming(const Assignment& a, const Assignment& b) {
    if (a.vals.size() != b.vals.size())
        fail(ErrorCode::BadParams, "hamming distance over different variable sets");
    int d = 0;
    for (std::size_t i = 0; i < a.vals.size(); ++i)
        if (a.vals[i] != b.vals[i]) ++d;
    return d;
}

// ---- value ------------------------------------------------------------------

namespace {

void check_total(const CspInstance& inst, const Assignment& psi) {
    if (psi.vals.size() != inst.var_count())
        fail(ErrorCode::AlphabetMismatch, "assignment does not cover the variable set");
    for (std::size_t v = 0; v < psi.vals.size(); ++v)
        if (!inst.in_domain(static_cast<int>(v), psi.vals[v]))
            fail(ErrorCode::AlphabetMismatch,
                 "symbol out of domain for variable '" + inst.variables().name(v) + "'");
}

}  // namespace

std::int64_t satisfied_count(const CspInstance& inst, const Assignment& psi) {
    check_total(inst, psi);
    std::int64_t sat = 0;
    std::vector<Sym> t(inst.arity());
    for (const auto& c : inst.constraints()) {
        for (std::size_t i = 0; i < c.scope.size(); ++i) t[i] = psi.vals[c.scope[i]];
        if (c.allows(t.data())) ++sat;
    }
    return sat;
}

Rational value(const CspInstance& inst, const Assignment& psi) {
    if (inst.constraints().empty()) {
        check_total(inst, psi);
        return Rational(1);
    }
    return Rational(satisfied_count(inst, psi),
                    static_cast<std::int64_t>(inst.constraints().size()));
}

Rational sequence_value(const CspInstance& inst, const ReconfigSequence& seq) {
    if (seq.steps.empty()) fail(ErrorCode::InvalidSequence, "empty reconfiguration sequence");
    Rational best = value(inst, seq.steps.front());
    for (std::size_t i = 1; i < seq.steps.size(); ++i) {
        if (hamming(seq.steps[i - 1], seq.steps[i]) != 1)
            fail(ErrorCode::InvalidSequence,
                 "steps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                     " do not differ in exactly one variable");
        best = std::min(best, value(inst, seq.steps[i]));
    }
    return best;
}

bool is_valid_sequence(const Assignment& psi_s, const Assignment& psi_t,
                       const ReconfigSequence& seq) {
    if (seq.steps.empty()) return false;
    const std::size_t n = psi_s.vals.size();
    if (psi_t.vals.size() != n) return false;
    for (const auto& st : seq.steps)
        if (st.vals.size() != n) return false;
    if (seq.steps.front() != psi_s || seq.steps.back() != psi_t) return false;
    for (std::size_t i = 1; i < seq.steps.size(); ++i)
        if (hamming(seq.steps[i - 1], seq.steps[i]) != 1) return false;
    return true;
}

// ---- multi-assignments ------------------------------------------------------

bool multi_neighbors(const MultiAssignment& a, const MultiAssignment& b) {
    if (a.sets.size() != b.sets.size()) return false;
    std::int64_t diff = 0;
    for (std::size_t v = 0; v < a.sets.size(); ++v) {
        const auto& x = a.sets[v];
        const auto& y = b.sets[v];
        std::size_t i = 0, j = 0;
        while (i < x.size() && j < y.size()) {
            if (x[i] == y[j]) { ++i; ++j; }
            else if (x[i] < y[j]) { ++diff; ++i; }
            else { ++diff; ++j; }
        }
        diff += static_cast<std::int64_t>((x.size() - i) + (y.size() - j));
        if (diff > 1) return false;
    }
    return diff == 1;
}

bool multi_satisfies(const CspInstance& inst, const MultiAssignment& m) {
    if (inst.arity() != 2) fail(ErrorCode::ArityError, "multi-assignments need a 2-CSP");
    if (m.sets.size() != inst.var_count())
        fail(ErrorCode::AlphabetMismatch, "multi-assignment does not cover the variable set");
    for (std::size_t v = 0; v < m.sets.size(); ++v)
        for (Sym s : m.sets[v])
            if (!inst.in_domain(static_cast<int>(v), s))
                fail(ErrorCode::AlphabetMismatch,
                     "symbol out of domain for variable '" + inst.variables().name(v) + "'");
    for (const auto& c : inst.constraints()) {
        const auto& su = m.sets[c.scope[0]];
        const auto& sv = m.sets[c.scope[1]];
        bool ok = false;
        if (!c.wildcard_first.empty() && !sv.empty()) {
            for (Sym a : su) {
                if (std::binary_search(c.wildcard_first.begin(), c.wildcard_first.end(), a)) {
                    ok = true;
                    break;
                }
            }
        }
        for (std::size_t r = 0; !ok && r < c.tuple_rows(); ++r) {
            Sym a = c.allowed[2 * r], b = c.allowed[2 * r + 1];
            ok = std::binary_search(su.begin(), su.end(), a) &&
                 std::binary_search(sv.begin(), sv.end(), b);
        }
        if (!ok) return false;
    }
    return true;
}

std::int64_t sequence_minlab_size(const MultiAssignSequence& seq) {
    if (seq.steps.empty()) fail(ErrorCode::InvalidSequence, "empty multi-assignment sequence");
    std::int64_t peak = seq.steps.front().size();
    for (std::size_t i = 1; i < seq.steps.size(); ++i) {
        if (!multi_neighbors(seq.steps[i - 1], seq.steps[i]))
            fail(ErrorCode::InvalidSequence,
                 "steps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                     " do not differ by one symbol");
        peak = std::max(peak, seq.steps[i].size());
    }
    return peak;
}

bool satisfies_sequence(const CspInstance& inst, const MultiAssignSequence& seq) {
    sequence_minlab_size(seq);  // adjacency check
    for (const auto& st : seq.steps)
        if (!multi_satisfies(inst, st)) return false;
    return true;
}

// ---- partial assignments ----------------------------------------------------

bool partial_satisfies(const CspInstance& inst, const PartialAssignment& p) {
    if (p.vals.size() != inst.var_count())
        fail(ErrorCode::AlphabetMismatch, "partial assignment does not cover the variable set");
    for (std::size_t v = 0; v < p.vals.size(); ++v)
        if (p.vals[v] != PartialAssignment::kUnset &&
            !inst.in_domain(static_cast<int>(v), p.vals[v]))
            fail(ErrorCode::AlphabetMismatch,
                 "symbol out of domain for variable '" + inst.variables().name(v) + "'");
    std::vector<Sym> t(inst.arity());
    for (const auto& c : inst.constraints()) {
        bool total = true;
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
            t[i] = p.vals[c.scope[i]];
            if (t[i] == PartialAssignment::kUnset) { total = false; break; }
        }
        if (total && !c.allows(t.data())) return false;
    }
    return true;
}

std::int64_t max_par_bruteforce(const CspInstance& inst, std::uint64_t cap) {
    const int n = static_cast<int>(inst.var_count());
    std::uint64_t states = 1;
    for (int v = 0; v < n; ++v) {
        std::uint64_t d = inst.domain(v).size() + 1;
        if (states > cap / d) fail(ErrorCode::TooLarge, "partial assignment space exceeds cap");
        states *= d;
    }
    PartialAssignment p;
    p.vals.assign(n, PartialAssignment::kUnset);
    std::vector<int> digit(n, 0);  // 0 = unset, i>0 = domain[i-1]
    std::int64_t best = 0;
    for (std::uint64_t it = 0;; ++it) {
        if (partial_satisfies(inst, p)) best = std::max(best, p.size());
        int v = 0;
        while (v < n) {
            if (digit[v] < static_cast<int>(inst.domain(v).size())) {
                ++digit[v];
                p.vals[v] = inst.domain(v)[digit[v] - 1];
                break;
            }
            digit[v] = 0;
            p.vals[v] = PartialAssignment::kUnset;
            ++v;
        }
        if (v == n) break;
    }
    return best;
}

// ---- direct sequences -------------------------------------------------------

ReconfigSequence direct_sequence(const Assignment& psi_s, const Assignment& psi_t,
                                 const std::vector<int>& order) {
    if (psi_s.vals.size() != psi_t.vals.size())
        fail(ErrorCode::BadParams, "endpoint assignments over different variable sets");
    std::vector<char> differs(psi_s.vals.size(), 0);
    std::size_t expected = 0;
    for (std::size_t v = 0; v < psi_s.vals.size(); ++v)
        if (psi_s.vals[v] != psi_t.vals[v]) { differs[v] = 1; ++expected; }
    std::vector<char> seen(psi_s.vals.size(), 0);
    for (int v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= psi_s.vals.size())
            fail(ErrorCode::BadOrder, "order lists an unknown variable");
        if (!differs[v]) fail(ErrorCode::BadOrder, "order lists a variable the endpoints agree on");
        if (seen[v]) fail(ErrorCode::BadOrder, "order repeats a variable");
        seen[v] = 1;
    }
    if (order.size() != expected)
        fail(ErrorCode::BadOrder, "order does not cover all differing variables");

    ReconfigSequence seq;
    seq.steps.reserve(order.size() + 1);
    Assignment cur = psi_s;
    seq.steps.push_back(cur);
    for (int v : order) {
        cur.vals[v] = psi_t.vals[v];
        seq.steps.push_back(cur);
    }
    return seq;
}

}  // namespace recon
