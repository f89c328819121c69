#include <doctest.h>

#include <filesystem>
#include <functional>

#include "recon/balanced.hpp"
#include "recon/gen.hpp"
#include "recon/io.hpp"
#include "recon/reductions.hpp"
#include "recon/rih.hpp"
#include "helpers.hpp"

using namespace recon;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ParseError;
}

json text_round_trip(const json& doc) { return parse_text(canonical_dump(doc)); }

/// Two binary variables joined by a single "different" constraint.
CspInstance one_edge_neq() {
    return CspInstance(var_names(2), bit_alphabet(), 2,
                       {edge_constraint(0, 1, {{0, 1}, {1, 0}})});
}

SetCoverInstance pairs_cover() {
    SetCoverInstance sc;
    sc.universe = 3;
    sc.sets = {{0, 1}, {1, 2}, {0, 2}};
    return sc;
}

}  // namespace

TEST_CASE("canonical text is sorted, two-space indented and newline terminated") {
    json doc;
    doc["zeta"] = 1;
    doc["alpha"] = json::array({true, false});
    CHECK(canonical_dump(doc) ==
          "{\n  \"alpha\": [\n    true,\n    false\n  ],\n  \"zeta\": 1\n}\n");

    // dumping twice and re-parsing the dump are both stable
    const std::string text = canonical_dump(doc);
    CHECK(canonical_dump(doc) == text);
    CHECK(canonical_dump(parse_text(text)) == text);

    CHECK_THROWS_AS(parse_text("{\"kind\": "), Error);
    CHECK(code_of([] { parse_text("not json"); }) == ErrorCode::ParseError);
}

TEST_CASE("instance documents round trip byte for byte") {
    const CspInstance tri = triangle_neq();
    const std::string text = canonical_dump(to_json(tri));
    const CspInstance back = parse_csp(parse_text(text));
    CHECK(canonical_dump(to_json(back)) == text);

    const json doc = to_json(tri);
    CHECK(doc["kind"] == "csp");
    CHECK(doc["arity"] == 2);
    CHECK(doc["variables"] == json::array({"x0", "x1", "x2"}));
    CHECK(doc["alphabet"] == json::array({"0", "1"}));
    CHECK(doc["constraints"].size() == 3);
    // unrestricted instances carry no domain table and plain rows no wildcard
    CHECK(!doc.contains("domains"));
    CHECK(!doc["constraints"][0].contains("any-with"));

    CHECK(back.var_count() == 3);
    CHECK(value(back, asg({0, 1, 0})) == Rational(2, 3));
}

TEST_CASE("wildcards, domains and tuple order all serialize canonically") {
    // rows and wildcard symbols are handed over out of order and duplicated
    Constraint c = edge_constraint(0, 1, {{1, 0}, {0, 1}, {1, 0}});
    c.wildcard_first = {1, 0, 1};
    std::vector<std::vector<Sym>> domains = {{0, 1}, {1}};
    const CspInstance inst(var_names(2), bit_alphabet(), 2, {c}, domains);

    const json doc = to_json(inst);
    CHECK(doc["constraints"][0]["allowed"] ==
          json::parse(R"([["0","1"],["1","0"]])"));
    CHECK(doc["constraints"][0]["any-with"] == json::array({"0", "1"}));
    CHECK(doc["domains"] == json::parse(R"({"x0":["0","1"],"x1":["1"]})"));

    const std::string text = canonical_dump(doc);
    const CspInstance back = parse_csp(text_round_trip(doc));
    CHECK(canonical_dump(to_json(back)) == text);
    CHECK(back.restricted());
    CHECK(back.domain(1) == std::vector<Sym>{1});
}

TEST_CASE("instance parsing rejects malformed documents") {
    const std::string base = R"({
        "kind": "csp", "arity": 2,
        "variables": ["x0", "x1"], "alphabet": ["0", "1"],
        "constraints": [{"scope": ["x0", "x1"], "allowed": [["0", "1"]]}]
    })";
    CHECK_NOTHROW(parse_csp(parse_text(base)));

    auto reject = [&](const std::function<void(json&)>& mutate) {
        json doc = parse_text(base);
        mutate(doc);
        CHECK(code_of([&] { parse_csp(doc); }) == ErrorCode::ParseError);
    };
    reject([](json& d) { d["kind"] = "graph"; });
    reject([](json& d) { d.erase("kind"); });
    reject([](json& d) { d.erase("constraints"); });
    reject([](json& d) { d["arity"] = 0; });
    reject([](json& d) { d["arity"] = 65; });
    reject([](json& d) { d["arity"] = "2"; });
    reject([](json& d) { d["constraints"][0]["scope"][1] = "zz"; });
    reject([](json& d) { d["constraints"][0]["allowed"][0][0] = "9"; });
    reject([](json& d) { d["constraints"][0]["allowed"][0] = json::array({"0"}); });
    reject([](json& d) { d["constraints"][0]["any-with"] = json::array({"9"}); });
    reject([](json& d) { d["constraints"] = 7; });
    reject([](json& d) { d["domains"] = json::parse(R"({"zz":["0"]})"); });
}

TEST_CASE("graph documents keep parallel edges and sort endpoints") {
    // reversed endpoints and a duplicate edge
    Graph g({"b", "a", "c"}, {{2, 0}, {1, 0}, {1, 0}});
    const json doc = to_json(g);
    CHECK(doc["vertices"] == json::array({"b", "a", "c"}));
    CHECK(doc["edges"] ==
          json::parse(R"([["b","a"],["b","a"],["b","c"]])"));

    const std::string text = canonical_dump(doc);
    const Graph back = parse_graph(parse_text(text));
    CHECK(canonical_dump(to_json(back)) == text);
    CHECK(back.edge_count() == 3);

    auto reject = [](const char* text) {
        CHECK(code_of([&] { parse_graph(parse_text(text)); }) == ErrorCode::ParseError);
    };
    reject(R"({"kind":"graph","vertices":["a"],"edges":[["a"]]})");
    reject(R"({"kind":"graph","vertices":["a","b"],"edges":[["a","zz"]]})");
    reject(R"({"kind":"graph","vertices":["a","b"],"edges":7})");
    reject(R"({"kind":"graph","edges":[]})");
}

TEST_CASE("set cover documents are one-based and sorted on disk") {
    SetCoverInstance sc;
    sc.universe = 4;
    sc.sets = {{3, 0}, {}, {1}};
    const json doc = to_json(sc);
    CHECK(doc["universe"] == 4);
    CHECK(doc["sets"] == json::parse(R"([[1,4],[],[2]])"));

    const std::string text = canonical_dump(doc);
    const SetCoverInstance back = parse_setcover(parse_text(text));
    CHECK(canonical_dump(to_json(back)) == text);
    CHECK(back.sets[0] == std::vector<std::int64_t>{0, 3});

    auto reject = [](const char* text) {
        CHECK(code_of([&] { parse_setcover(parse_text(text)); }) == ErrorCode::ParseError);
    };
    reject(R"({"kind":"setcover","universe":3,"sets":[[0]]})");
    reject(R"({"kind":"setcover","universe":3,"sets":[[4]]})");
    reject(R"({"kind":"setcover","universe":3,"sets":[[2,2]]})");
    reject(R"({"kind":"setcover","universe":-1,"sets":[]})");
    reject(R"({"kind":"setcover","universe":3,"sets":[7]})");
}

TEST_CASE("assignment documents round trip with sorted variable keys") {
    const CspInstance tri = triangle_neq();
    const Assignment psi = asg({0, 1, 0});
    const std::string text = canonical_dump(assignment_to_json(tri, psi));
    CHECK(text ==
          "{\n  \"kind\": \"assignment\",\n  \"values\": {\n"
          "    \"x0\": \"0\",\n    \"x1\": \"1\",\n    \"x2\": \"0\"\n  }\n}\n");
    const Assignment back = parse_assignment(parse_text(text), tri);
    CHECK(back.vals == psi.vals);
    CHECK(canonical_dump(assignment_to_json(tri, back)) == text);

    auto reject = [&](const char* values) {
        json doc = parse_text(std::string(R"({"kind":"assignment","values":)") + values + "}");
        CHECK(code_of([&] { parse_assignment(doc, tri); }) == ErrorCode::ParseError);
    };
    reject(R"({"zz":"0","x0":"0","x1":"0","x2":"0"})");  // unknown variable
    reject(R"({"x0":"9","x1":"0","x2":"0"})");           // unknown symbol
    reject(R"({"x0":"0","x1":"0"})");                    // x2 missing
    reject(R"({"x0":0,"x1":"0","x2":"0"})");             // value must be a string
    reject(R"(["0","1","0"])");                          // values must be an object
}

TEST_CASE("multi assignment documents normalize their symbol sets") {
    const CspInstance edge = one_edge_neq();
    const json doc = parse_text(
        R"({"kind":"multi_assignment","values":{"x0":["1","0","1"],"x1":[]}})");
    const MultiAssignment ma = parse_multi_assignment(doc, edge);
    CHECK(ma.sets[0] == std::vector<Sym>{0, 1});
    CHECK(ma.sets[1].empty());

    const std::string text = canonical_dump(multi_assignment_to_json(edge, ma));
    const MultiAssignment back = parse_multi_assignment(parse_text(text), edge);
    CHECK(canonical_dump(multi_assignment_to_json(edge, back)) == text);

    // every variable needs a set, even an empty one
    const json missing = parse_text(R"({"kind":"multi_assignment","values":{"x0":["1"]}})");
    CHECK(code_of([&] { parse_multi_assignment(missing, edge); }) == ErrorCode::ParseError);
}

TEST_CASE("partial assignment documents omit unset variables") {
    const CspInstance tri = triangle_neq();
    PartialAssignment pa;
    pa.vals = {PartialAssignment::kUnset, 1, PartialAssignment::kUnset};
    const json doc = partial_assignment_to_json(tri, pa);
    CHECK(doc["values"] == json::parse(R"({"x1":"1"})"));

    const std::string text = canonical_dump(doc);
    const PartialAssignment back = parse_partial_assignment(parse_text(text), tri);
    CHECK(back.vals == pa.vals);
    CHECK(canonical_dump(partial_assignment_to_json(tri, back)) == text);

    // empty is fine for a partial map, unlike a total assignment
    const json none = parse_text(R"({"kind":"partial_assignment","values":{}})");
    CHECK(parse_partial_assignment(none, tri).vals ==
          std::vector<Sym>(3, PartialAssignment::kUnset));
}

TEST_CASE("sequence documents round trip step lists") {
    const CspInstance tri = triangle_neq();
    ReconfigSequence seq;
    seq.steps = {asg({0, 1, 0}), asg({0, 1, 1}), asg({1, 1, 1})};
    const std::string text = canonical_dump(sequence_to_json(tri, seq));
    const ReconfigSequence back = parse_sequence(parse_text(text), tri);
    REQUIRE(back.steps.size() == 3);
    CHECK(back.steps[1].vals == seq.steps[1].vals);
    CHECK(canonical_dump(sequence_to_json(tri, back)) == text);

    CHECK(code_of([&] {
        parse_sequence(parse_text(R"({"kind":"sequence","steps":7})"), tri);
    }) == ErrorCode::ParseError);
    CHECK(code_of([&] {
        parse_sequence(parse_text(R"({"kind":"sequence","steps":[{"x0":"0"}]})"), tri);
    }) == ErrorCode::ParseError);
}

TEST_CASE("multi sequence documents round trip") {
    const CspInstance edge = one_edge_neq();
    MultiAssignSequence seq;
    MultiAssignment a, b;
    a.sets = {{0}, {1}};
    b.sets = {{0, 1}, {1}};
    seq.steps = {a, b};
    const std::string text = canonical_dump(multi_sequence_to_json(edge, seq));
    const MultiAssignSequence back = parse_multi_sequence(parse_text(text), edge);
    REQUIRE(back.steps.size() == 2);
    CHECK(back.steps[1].sets[0] == std::vector<Sym>{0, 1});
    CHECK(canonical_dump(multi_sequence_to_json(edge, back)) == text);
}

TEST_CASE("cover documents hold sorted zero-based set indices") {
    const SetCoverInstance sc = pairs_cover();
    const json doc = cover_to_json({2, 0});
    CHECK(doc["sets"] == json::array({0, 2}));
    const std::string text = canonical_dump(doc);
    CHECK(parse_cover(parse_text(text), sc) == std::vector<int>{0, 2});
    CHECK(canonical_dump(cover_to_json(parse_cover(parse_text(text), sc))) == text);

    auto reject = [&](const char* text) {
        CHECK(code_of([&] { parse_cover(parse_text(text), sc); }) == ErrorCode::ParseError);
    };
    reject(R"({"kind":"cover","sets":[-1]})");
    reject(R"({"kind":"cover","sets":[3]})");
    reject(R"({"kind":"cover","sets":[1,1]})");

    SetCoverSequence cs;
    cs.steps = {{0, 1}, {0, 1, 2}, {1, 2}};
    const std::string seq_text = canonical_dump(cover_sequence_to_json(cs));
    const SetCoverSequence cs_back = parse_cover_sequence(parse_text(seq_text), sc);
    CHECK(cs_back.steps == cs.steps);
    CHECK(canonical_dump(cover_sequence_to_json(cs_back)) == seq_text);
    CHECK(code_of([&] {
        parse_cover_sequence(parse_text(R"({"kind":"cover_sequence","steps":[[0,5]]})"), sc);
    }) == ErrorCode::ParseError);
}

TEST_CASE("downward sequence documents store vertex names per batch") {
    const Graph g = gen_star(4);
    const DownwardSetSequence seq = full_balanced_sequence(g, 7);
    const std::string text = canonical_dump(downward_sequence_to_json(g, seq));
    const DownwardSetSequence back = parse_downward_sequence(parse_text(text), g);
    CHECK(back.n_vertices == 4);
    CHECK(cuts_of_sequence(g, back) == cuts_of_sequence(g, seq));
    CHECK(canonical_dump(downward_sequence_to_json(g, back)) == text);

    // unknown names are a parse error, structural holes a sequence error
    CHECK(code_of([&] {
        parse_downward_sequence(
            parse_text(R"({"kind":"downward_sequence","removals":[["zz"]]})"), g);
    }) == ErrorCode::ParseError);
    CHECK(code_of([&] {
        parse_downward_sequence(
            parse_text(R"({"kind":"downward_sequence","removals":[["v0"]]})"), g);
    }) == ErrorCode::InvalidSequence);
    CHECK(code_of([&] {
        parse_downward_sequence(
            parse_text(R"({"kind":"downward_sequence","removals":[["v0","v0"],["v1","v2","v3"]]})"),
            g);
    }) == ErrorCode::InvalidSequence);
}

TEST_CASE("reduction documents rebuild and shape-check the derived instance") {
    const PlantedCsp src = gen_planted_csp(3, 2, 4, 1);
    RihOptions opts;
    opts.code_kind = RihCodeKind::identity;
    opts.cap = 1u << 18;
    const RihInstance rih = rih_reduce(src.csp, src.psi_s, src.psi_t, opts);

    const json doc = rih_to_json(rih, opts.cap);
    const std::string text = canonical_dump(doc);
    const RihDocument back = parse_rih(parse_text(text));
    CHECK(back.options.code_kind == RihCodeKind::identity);
    CHECK(back.options.cap == opts.cap);
    CHECK(back.instance.epsilon == Rational(1, 150));
    CHECK(back.instance.csp.variables().names() == rih.csp.variables().names());
    CHECK(value(back.instance.csp, back.instance.psi_s) == Rational(1));
    CHECK(canonical_dump(rih_to_json(back.instance, back.options.cap)) == text);

    auto reject = [&](const std::function<void(json&)>& mutate) {
        json tampered = doc;
        mutate(tampered);
        CHECK(code_of([&] { parse_rih(tampered); }) == ErrorCode::ParseError);
    };
    // any drift between the recorded shape and the rebuilt reduction is rejected
    reject([](json& d) { d["variables"][0] = "zz"; });
    reject([](json& d) { d["alphabet"].erase(0); });
    reject([](json& d) { d["epsilon"] = "7/3"; });
    reject([](json& d) { d["code"] = "repetition"; });
    reject([](json& d) { d["cap"] = 0; });
    reject([](json& d) { d.erase("source_psi_t"); });
}

TEST_CASE("correspondence documents describe every edge block") {
    const CspInstance edge = one_edge_neq();
    const auto [sc, corr] = csp_to_setcover(edge);
    const json doc = correspondence_to_json(edge, corr);
    CHECK(doc["kind"] == "setcover_correspondence");
    CHECK(doc["universe"] == sc.universe);
    CHECK(doc["variables"] == json::array({"x0", "x1"}));
    CHECK(doc["alphabet"] == json::array({"0", "1"}));
    REQUIRE(doc["edges"].size() == 1);
    CHECK(doc["edges"][0]["u"] == "x0");
    CHECK(doc["edges"][0]["v"] == "x1");
    CHECK(doc["edges"][0]["offset"] == 0);
    CHECK(doc["edges"][0]["pairs"] == json::parse(R"([["0","1"],["1","0"]])"));
    CHECK(canonical_dump(doc) == canonical_dump(correspondence_to_json(edge, corr)));
}

TEST_CASE("documents survive a trip through the filesystem") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "recon_io_test";
    fs::create_directories(dir);
    const std::string path = (dir / "triangle.json").string();

    const json doc = to_json(triangle_neq());
    store_json(path, doc);
    CHECK(read_file(path) == canonical_dump(doc));
    CHECK(load_json(path) == doc);
    // storing what was loaded changes nothing on disk
    store_json(path, load_json(path));
    CHECK(read_file(path) == canonical_dump(doc));

    CHECK(code_of([&] { read_file((dir / "absent.json").string()); }) ==
          ErrorCode::ParseError);
    fs::remove_all(dir);
}
