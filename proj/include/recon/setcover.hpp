#pragma once

#include <cstdint>
#include <vector>

namespace recon {

/// Set cover instance: universe {0,..,universe-1} plus a family of subsets.
/// Empty sets are allowed; serialization is 1-based to match the usual
/// [n] convention, internals are 0-based.
struct SetCoverInstance {
    std::int64_t universe = 0;
    std::vector<std::vector<std::int64_t>> sets;
};

/// Sequence of covers, each a sorted list of set indices; consecutive steps
/// must differ by inserting or deleting exactly one index.
struct SetCoverSequence {
    std::vector<std::vector<int>> steps;
};

bool is_cover(const SetCoverInstance& inst, const std::vector<int>& chosen);

/// True iff seq runs from T_s to T_t, every step is a cover, and consecutive
/// steps differ by one index.
bool is_valid_cover_sequence(const SetCoverInstance& inst,
                             const std::vector<int>& t_s,
                             const std::vector<int>& t_t,
                             const SetCoverSequence& seq);

}  // namespace recon
