#pragma once

#include <string>

#include <json.hpp>

#include "recon/csp.hpp"
#include "recon/graph.hpp"
#include "recon/reductions.hpp"
#include "recon/rih.hpp"
#include "recon/setcover.hpp"

namespace recon {

using json = nlohmann::json;

// Every document carries a "kind" discriminator:
//   csp                 arity/variables/alphabet/constraints [+ domains]
//   graph               vertices/edges (endpoint names; parallel edges kept)
//   setcover            universe/sets (elements are 1-based in files)
//   assignment          values: variable -> symbol
//   multi_assignment    values: variable -> [symbols]
//   partial_assignment  values: variable -> symbol, unset variables omitted
//   sequence            steps: [assignment values...]
//   multi_sequence      steps: [multi_assignment values...]
//   cover               sets: [0-based set indices]
//   cover_sequence      steps: [[0-based set indices]...]
//   downward_sequence   removals: [[vertex names]...]
//   rih                 code/cap/source/endpoints; re-derived on parse
//
// Canonical form: sorted object keys, two-space indent, trailing newline,
// allowed tuples sorted, graph edges sorted with each endpoint pair in
// index order, set elements sorted. parse then serialize reproduces a
// canonical file byte for byte.

std::string canonical_dump(const json& doc);
json parse_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
json load_json(const std::string& path);
void store_json(const std::string& path, const json& doc);

json to_json(const CspInstance& inst);
json to_json(const Graph& g);
json to_json(const SetCoverInstance& sc);

json assignment_to_json(const CspInstance& inst, const Assignment& psi);
json multi_assignment_to_json(const CspInstance& inst, const MultiAssignment& ma);
json partial_assignment_to_json(const CspInstance& inst, const PartialAssignment& pa);
json sequence_to_json(const CspInstance& inst, const ReconfigSequence& seq);
json multi_sequence_to_json(const CspInstance& inst, const MultiAssignSequence& seq);
json cover_to_json(const std::vector<int>& chosen);
json cover_sequence_to_json(const SetCoverSequence& seq);
json downward_sequence_to_json(const Graph& g, const DownwardSetSequence& seq);
json rih_to_json(const RihInstance& rih, std::uint64_t cap);
json correspondence_to_json(const CspInstance& source, const SetCoverCorrespondence& corr);

CspInstance parse_csp(const json& doc);
Graph parse_graph(const json& doc);
SetCoverInstance parse_setcover(const json& doc);

Assignment parse_assignment(const json& doc, const CspInstance& inst);
MultiAssignment parse_multi_assignment(const json& doc, const CspInstance& inst);
PartialAssignment parse_partial_assignment(const json& doc, const CspInstance& inst);
ReconfigSequence parse_sequence(const json& doc, const CspInstance& inst);
MultiAssignSequence parse_multi_sequence(const json& doc, const CspInstance& inst);
std::vector<int> parse_cover(const json& doc, const SetCoverInstance& sc);
SetCoverSequence parse_cover_sequence(const json& doc, const SetCoverInstance& sc);
DownwardSetSequence parse_downward_sequence(const json& doc, const Graph& g);

struct RihDocument {
    RihInstance instance;
    RihOptions options;
};

/// Rebuilds the reduction from the embedded source and checks the result
/// against the recorded shape; a mismatch is a parse error.
RihDocument parse_rih(const json& doc);

}  // namespace recon
