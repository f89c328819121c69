#include "recon/setcover.hpp"

#include <algorithm>

#include "recon/error.hpp"

namespace recon {

bool is_cover(const SetCoverInstance& inst, const std::vector<int>& chosen) {
    std::vector<char> covered(inst.universe, 0);
    std::int64_t hit = 0;
    for (int i : chosen) {
        if (i < 0 || static_cast<std::size_t>(i) >= inst.sets.size())
            fail(ErrorCode::IndexOutOfRange, "set index out of range");
        for (std::int64_t e : inst.sets[i]) {
            if (e < 0 || e >= inst.universe)
                fail(ErrorCode::IndexOutOfRange, "set element outside the universe");
            if (!covered[e]) { covered[e] = 1; ++hit; }
        }
    }
    return hit == inst.universe;
}

namespace {

bool one_index_apart(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    int diff = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++i; ++j; }
        else if (a[i] < b[j]) { ++diff; ++i; }
        else { ++diff; ++j; }
        if (diff > 1) return false;
    }
    diff += static_cast<int>((a.size() - i) + (b.size() - j));
    return diff == 1;
}

}  // namespace

bool is_valid_cover_sequence(const SetCoverInstance& inst,
                             const std::vector<int>& t_s,
                             const std::vector<int>& t_t,
                             const SetCoverSequence& seq) {
    if (seq.steps.empty()) return false;
    for (const auto& st : seq.steps)
        if (!std::is_sorted(st.begin(), st.end()) ||
            std::adjacent_find(st.begin(), st.end()) != st.end())
            return false;
    if (seq.steps.front() != t_s || seq.steps.back() != t_t) return false;
    for (std::size_t i = 1; i < seq.steps.size(); ++i)
        if (!one_index_apart(seq.steps[i - 1], seq.steps[i])) return false;
    for (const auto& st : seq.steps)
        if (!is_cover(inst, st)) return false;
    return true;
}

}  // namespace recon
