#include "recon/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace recon {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::ParseError, msg); }

const json& need(const json& doc, const char* key) {
    if (!doc.is_object()) bad("expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) bad(std::string("missing key '") + key + "'");
    return *it;
}

void check_kind(const json& doc, const char* kind) {
    const json& k = need(doc, "kind");
    if (!k.is_string() || k.get<std::string>() != kind)
        bad(std::string("expected kind '") + kind + "'");
}

std::int64_t need_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::string need_string(const json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(need_string(e, what));
    return out;
}

// Name -> index map used while resolving a document; unknown ids are a
// parse error, not a core-layer error.
struct Resolver {
    std::unordered_map<std::string, int> index;
    std::string what;

    Resolver(const std::vector<std::string>& names, std::string w) : what(std::move(w)) {
        for (std::size_t i = 0; i < names.size(); ++i)
            index.emplace(names[i], static_cast<int>(i));
    }

    int operator()(const std::string& name) const {
        auto it = index.find(name);
        if (it == index.end()) bad("unknown " + what + " '" + name + "'");
        return it->second;
    }
};

json values_object(const CspInstance& inst, const std::vector<Sym>& vals, bool skip_unset) {
    json out = json::object();
    for (std::size_t v = 0; v < vals.size(); ++v) {
        if (skip_unset && vals[v] == PartialAssignment::kUnset) continue;
        out[inst.variables().name(v)] = inst.symbols().name(vals[v]);
    }
    return out;
}

std::vector<Sym> parse_values(const json& j, const CspInstance& inst, bool allow_unset) {
    if (!j.is_object()) bad("'values' must be an object");
    std::vector<Sym> vals(inst.var_count(), PartialAssignment::kUnset);
    Resolver sym(inst.symbols().names(), "symbol");
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto v = inst.variables().find(it.key());
        if (!v) bad("unknown variable '" + it.key() + "'");
        vals[*v] = static_cast<Sym>(sym(need_string(it.value(), "value")));
    }
    if (!allow_unset)
        for (std::size_t v = 0; v < vals.size(); ++v)
            if (vals[v] == PartialAssignment::kUnset)
                bad("variable '" + inst.variables().name(v) + "' is missing a value");
    return vals;
}

json multi_values_object(const CspInstance& inst, const MultiAssignment& ma) {
    json out = json::object();
    for (std::size_t v = 0; v < ma.sets.size(); ++v) {
        json set = json::array();
        for (Sym s : ma.sets[v]) set.push_back(inst.symbols().name(s));
        out[inst.variables().name(v)] = set;
    }
    return out;
}

MultiAssignment parse_multi_values(const json& j, const CspInstance& inst) {
    if (!j.is_object()) bad("'values' must be an object");
    MultiAssignment ma;
    ma.sets.assign(inst.var_count(), {});
    Resolver sym(inst.symbols().names(), "symbol");
    std::vector<bool> seen(inst.var_count(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto v = inst.variables().find(it.key());
        if (!v) bad("unknown variable '" + it.key() + "'");
        seen[*v] = true;
        for (const auto& e : string_list(it.value(), "symbol set"))
            ma.sets[*v].push_back(static_cast<Sym>(sym(e)));
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) bad("variable '" + inst.variables().name(v) + "' is missing a symbol set");
    ma.normalize();
    return ma;
}

const char* code_kind_name(RihCodeKind k) {
    return k == RihCodeKind::hadamard ? "hadamard" : "identity";
}

}  // namespace

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) bad("failed while reading '" + path + "'");
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) bad("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out.good()) bad("failed while writing '" + path + "'");
}

json load_json(const std::string& path) { return parse_text(read_file(path)); }

void store_json(const std::string& path, const json& doc) {
    write_file(path, canonical_dump(doc));
}

json to_json(const CspInstance& inst) {
    json cons = json::array();
    const std::size_t k = static_cast<std::size_t>(inst.arity());
    for (const auto& c : inst.constraints()) {
        json jc = json::object();
        json scope = json::array();
        for (int v : c.scope) scope.push_back(inst.variables().name(v));
        json rows = json::array();
        for (std::size_t r = 0; r < c.tuple_rows(); ++r) {
            json row = json::array();
            for (std::size_t j = 0; j < k; ++j) row.push_back(inst.symbols().name(c.allowed[r * k + j]));
            rows.push_back(std::move(row));
        }
        jc["scope"] = std::move(scope);
        jc["allowed"] = std::move(rows);
        if (!c.wildcard_first.empty()) {
            json w = json::array();
            for (Sym s : c.wildcard_first) w.push_back(inst.symbols().name(s));
            jc["any-with"] = std::move(w);
        }
        cons.push_back(std::move(jc));
    }
    json doc;
    doc["kind"] = "csp";
    doc["arity"] = inst.arity();
    doc["variables"] = inst.variables().names();
    doc["alphabet"] = inst.symbols().names();
    doc["constraints"] = std::move(cons);
    if (inst.restricted()) {
        json doms = json::object();
        for (std::size_t v = 0; v < inst.var_count(); ++v) {
            json d = json::array();
            for (Sym s : inst.domain(static_cast<int>(v))) d.push_back(inst.symbols().name(s));
            doms[inst.variables().name(v)] = std::move(d);
        }
        doc["domains"] = std::move(doms);
    }
    return doc;
}

CspInstance parse_csp(const json& doc) {
    check_kind(doc, "csp");
    const std::int64_t arity = need_int(need(doc, "arity"), "'arity'");
    if (arity < 1 || arity > 64) bad("'arity' out of range");
    auto variables = string_list(need(doc, "variables"), "'variables'");
    auto alphabet = string_list(need(doc, "alphabet"), "'alphabet'");
    Resolver var(variables, "variable");
    Resolver sym(alphabet, "symbol");

    const json& jcons = need(doc, "constraints");
    if (!jcons.is_array()) bad("'constraints' must be an array");
    std::vector<Constraint> cons;
    cons.reserve(jcons.size());
    for (const auto& jc : jcons) {
        Constraint c;
        for (const auto& name : string_list(need(jc, "scope"), "'scope'"))
            c.scope.push_back(var(name));
        const json& rows = need(jc, "allowed");
        if (!rows.is_array()) bad("'allowed' must be an array of tuples");
        for (const auto& row : rows) {
            auto tuple = string_list(row, "tuple");
            if (tuple.size() != static_cast<std::size_t>(arity)) bad("tuple length must equal the arity");
            for (const auto& name : tuple) c.allowed.push_back(static_cast<Sym>(sym(name)));
        }
        if (auto it = jc.find("any-with"); it != jc.end())
            for (const auto& name : string_list(*it, "'any-with'"))
                c.wildcard_first.push_back(static_cast<Sym>(sym(name)));
        cons.push_back(std::move(c));
    }

    std::vector<std::vector<Sym>> domains;
    if (auto it = doc.find("domains"); it != doc.end()) {
        if (!it->is_object()) bad("'domains' must be an object");
        std::vector<Sym> full(alphabet.size());
        for (std::size_t s = 0; s < full.size(); ++s) full[s] = static_cast<Sym>(s);
        domains.assign(variables.size(), full);
        for (auto d = it->begin(); d != it->end(); ++d) {
            auto& slot = domains[static_cast<std::size_t>(var(d.key()))];
            slot.clear();
            for (const auto& name : string_list(d.value(), "domain"))
                slot.push_back(static_cast<Sym>(sym(name)));
        }
    }
    return CspInstance(std::move(variables), std::move(alphabet), static_cast<int>(arity),
                       std::move(cons), std::move(domains));
}

json to_json(const Graph& g) {
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    json jedges = json::array();
    for (const auto& e : edges)
        jedges.push_back(json::array({g.vertex_names()[e.first], g.vertex_names()[e.second]}));
    json doc;
    doc["kind"] = "graph";
    doc["vertices"] = g.vertex_names();
    doc["edges"] = std::move(jedges);
    return doc;
}

Graph parse_graph(const json& doc) {
    check_kind(doc, "graph");
    auto vertices = string_list(need(doc, "vertices"), "'vertices'");
    Resolver vx(vertices, "vertex");
    const json& jedges = need(doc, "edges");
    if (!jedges.is_array()) bad("'edges' must be an array");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(jedges.size());
    for (const auto& je : jedges) {
        auto pair = string_list(je, "edge");
        if (pair.size() != 2) bad("an edge must name exactly two endpoints");
        edges.emplace_back(vx(pair[0]), vx(pair[1]));
    }
    return Graph(std::move(vertices), std::move(edges));
}

json to_json(const SetCoverInstance& sc) {
    json jsets = json::array();
    for (const auto& s : sc.sets) {
        std::vector<std::int64_t> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        json js = json::array();
        for (std::int64_t e : sorted) js.push_back(e + 1);
        jsets.push_back(std::move(js));
    }
    json doc;
    doc["kind"] = "setcover";
    doc["universe"] = sc.universe;
    doc["sets"] = std::move(jsets);
    return doc;
}

SetCoverInstance parse_setcover(const json& doc) {
    check_kind(doc, "setcover");
    SetCoverInstance sc;
    sc.universe = need_int(need(doc, "universe"), "'universe'");
    if (sc.universe < 0) bad("'universe' must be non-negative");
    const json& jsets = need(doc, "sets");
    if (!jsets.is_array()) bad("'sets' must be an array");
    for (const auto& js : jsets) {
        if (!js.is_array()) bad("a set must be an array of elements");
        std::vector<std::int64_t> s;
        s.reserve(js.size());
        for (const auto& je : js) {
            const std::int64_t e = need_int(je, "element");
            if (e < 1 || e > sc.universe) bad("element out of range (elements are 1-based)");
            s.push_back(e - 1);
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) bad("duplicate element in a set");
        sc.sets.push_back(std::move(s));
    }
    return sc;
}

json assignment_to_json(const CspInstance& inst, const Assignment& psi) {
    json doc;
    doc["kind"] = "assignment";
    doc["values"] = values_object(inst, psi.vals, false);
    return doc;
}

Assignment parse_assignment(const json& doc, const CspInstance& inst) {
    check_kind(doc, "assignment");
    return Assignment{parse_values(need(doc, "values"), inst, false)};
}

json multi_assignment_to_json(const CspInstance& inst, const MultiAssignment& ma) {
    json doc;
    doc["kind"] = "multi_assignment";
    doc["values"] = multi_values_object(inst, ma);
    return doc;
}

MultiAssignment parse_multi_assignment(const json& doc, const CspInstance& inst) {
    check_kind(doc, "multi_assignment");
    return parse_multi_values(need(doc, "values"), inst);
}

json partial_assignment_to_json(const CspInstance& inst, const PartialAssignment& pa) {
    json doc;
    doc["kind"] = "partial_assignment";
    doc["values"] = values_object(inst, pa.vals, true);
    return doc;
}

PartialAssignment parse_partial_assignment(const json& doc, const CspInstance& inst) {
    check_kind(doc, "partial_assignment");
    return PartialAssignment{parse_values(need(doc, "values"), inst, true)};
}

json sequence_to_json(const CspInstance& inst, const ReconfigSequence& seq) {
    json steps = json::array();
    for (const auto& psi : seq.steps) steps.push_back(values_object(inst, psi.vals, false));
    json doc;
    doc["kind"] = "sequence";
    doc["steps"] = std::move(steps);
    return doc;
}

ReconfigSequence parse_sequence(const json& doc, const CspInstance& inst) {
    check_kind(doc, "sequence");
    const json& jsteps = need(doc, "steps");
    if (!jsteps.is_array()) bad("'steps' must be an array");
    ReconfigSequence seq;
    for (const auto& js : jsteps) seq.steps.push_back(Assignment{parse_values(js, inst, false)});
    return seq;
}

json multi_sequence_to_json(const CspInstance& inst, const MultiAssignSequence& seq) {
    json steps = json::array();
    for (const auto& ma : seq.steps) steps.push_back(multi_values_object(inst, ma));
    json doc;
    doc["kind"] = "multi_sequence";
    doc["steps"] = std::move(steps);
    return doc;
}

MultiAssignSequence parse_multi_sequence(const json& doc, const CspInstance& inst) {
    check_kind(doc, "multi_sequence");
    const json& jsteps = need(doc, "steps");
    if (!jsteps.is_array()) bad("'steps' must be an array");
    MultiAssignSequence seq;
    for (const auto& js : jsteps) seq.steps.push_back(parse_multi_values(js, inst));
    return seq;
}

namespace {

std::vector<int> parse_index_set(const json& js, const SetCoverInstance& sc, const char* what) {
    if (!js.is_array()) bad(std::string(what) + " must be an array of set indices");
    std::vector<int> st;
    st.reserve(js.size());
    for (const auto& je : js) {
        const std::int64_t i = need_int(je, "set index");
        if (i < 0 || i >= static_cast<std::int64_t>(sc.sets.size())) bad("set index out of range");
        st.push_back(static_cast<int>(i));
    }
    std::sort(st.begin(), st.end());
    if (std::adjacent_find(st.begin(), st.end()) != st.end())
        bad(std::string("duplicate set index in ") + what);
    return st;
}

}  // namespace

json cover_to_json(const std::vector<int>& chosen) {
    std::vector<int> sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    json doc;
    doc["kind"] = "cover";
    doc["sets"] = sorted;
    return doc;
}

std::vector<int> parse_cover(const json& doc, const SetCoverInstance& sc) {
    check_kind(doc, "cover");
    return parse_index_set(need(doc, "sets"), sc, "'sets'");
}

json cover_sequence_to_json(const SetCoverSequence& seq) {
    json steps = json::array();
    for (const auto& st : seq.steps) steps.push_back(st);
    json doc;
    doc["kind"] = "cover_sequence";
    doc["steps"] = std::move(steps);
    return doc;
}

SetCoverSequence parse_cover_sequence(const json& doc, const SetCoverInstance& sc) {
    check_kind(doc, "cover_sequence");
    const json& jsteps = need(doc, "steps");
    if (!jsteps.is_array()) bad("'steps' must be an array");
    SetCoverSequence seq;
    for (const auto& js : jsteps) seq.steps.push_back(parse_index_set(js, sc, "a cover step"));
    return seq;
}

json downward_sequence_to_json(const Graph& g, const DownwardSetSequence& seq) {
    json removals = json::array();
    for (const auto& batch : seq.removals) {
        std::vector<int> sorted = batch;
        std::sort(sorted.begin(), sorted.end());
        json jb = json::array();
        for (int v : sorted) jb.push_back(g.vertex_names()[v]);
        removals.push_back(std::move(jb));
    }
    json doc;
    doc["kind"] = "downward_sequence";
    doc["removals"] = std::move(removals);
    return doc;
}

DownwardSetSequence parse_downward_sequence(const json& doc, const Graph& g) {
    check_kind(doc, "downward_sequence");
    const json& jrem = need(doc, "removals");
    if (!jrem.is_array()) bad("'removals' must be an array");
    Resolver vx(g.vertex_names(), "vertex");
    DownwardSetSequence seq;
    seq.n_vertices = g.vertex_count();
    for (const auto& jb : jrem) {
        std::vector<int> batch;
        for (const auto& name : string_list(jb, "removal batch"))
            batch.push_back(vx(name));
        seq.removals.push_back(std::move(batch));
    }
    seq.validate();
    return seq;
}

json rih_to_json(const RihInstance& rih, std::uint64_t cap) {
    json doc;
    doc["kind"] = "rih";
    doc["code"] = code_kind_name(rih.code_kind);
    doc["cap"] = cap;
    doc["source"] = to_json(rih.source);
    doc["source_psi_s"] = assignment_to_json(rih.source, rih.source_s);
    doc["source_psi_t"] = assignment_to_json(rih.source, rih.source_t);
    // recorded shape of the derived instance, checked on parse
    doc["variables"] = rih.csp.variables().names();
    doc["alphabet"] = rih.csp.symbols().names();
    doc["epsilon"] = rih.epsilon.str();
    return doc;
}

json correspondence_to_json(const CspInstance& source, const SetCoverCorrespondence& corr) {
    json edges = json::array();
    for (const auto& e : corr.edges) {
        json pairs = json::array();
        for (const auto& p : e.pairs)
            pairs.push_back(json::array(
                {source.symbols().name(p.first), source.symbols().name(p.second)}));
        json je;
        je["u"] = source.variables().name(e.u);
        je["v"] = source.variables().name(e.v);
        je["offset"] = e.offset;
        je["pairs"] = std::move(pairs);
        edges.push_back(std::move(je));
    }
    json doc;
    doc["kind"] = "setcover_correspondence";
    doc["universe"] = corr.universe;
    doc["variables"] = source.variables().names();
    doc["alphabet"] = source.symbols().names();
    doc["edges"] = std::move(edges);
    return doc;
}

RihDocument parse_rih(const json& doc) {
    check_kind(doc, "rih");
    RihOptions opts;
    const std::string code = need_string(need(doc, "code"), "'code'");
    if (code == "hadamard")
        opts.code_kind = RihCodeKind::hadamard;
    else if (code == "identity")
        opts.code_kind = RihCodeKind::identity;
    else
        bad("'code' must be \"hadamard\" or \"identity\"");
    const std::int64_t cap = need_int(need(doc, "cap"), "'cap'");
    if (cap < 1) bad("'cap' must be positive");
    opts.cap = static_cast<std::uint64_t>(cap);

    CspInstance source = parse_csp(need(doc, "source"));
    Assignment psi_s = parse_assignment(need(doc, "source_psi_s"), source);
    Assignment psi_t = parse_assignment(need(doc, "source_psi_t"), source);
    RihInstance inst = rih_reduce(source, psi_s, psi_t, opts);

    if (string_list(need(doc, "variables"), "'variables'") != inst.csp.variables().names() ||
        string_list(need(doc, "alphabet"), "'alphabet'") != inst.csp.symbols().names() ||
        Rational::parse(need_string(need(doc, "epsilon"), "'epsilon'")) != inst.epsilon)
        bad("recorded shape does not match the rebuilt reduction");
    return RihDocument{std::move(inst), opts};
}

}  // namespace recon
