#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cla/array.hpp"
#include "cla/distinguish.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/format.hpp"
#include "cla/model.hpp"
#include "cla/parser.hpp"

namespace cla {

// A group of mutually indistinguishable candidate explanations.
struct CandidateClass {
    std::vector<InteractionSet> members;
};

struct LocateResult {
    bool explained = false;  // false: no hypothesis matches the failing rows
    RowSet failing_rows;
    std::vector<CandidateClass> classes;
};

// Given outcomes for the rows of `array`, return every interaction set in
// the (d, t) hypothesis universe whose covered rows are exactly the failing
// rows, grouped into indistinguishability classes. On a matching CLA there
// is at most one class.
inline LocateResult locate_faults(const SutModel& model, const TestArray& array,
                                  const OutcomeVector& outcomes, const UniverseParams& params,
                                  std::uint64_t universe_cap = kDefaultUniverseCap,
                                  std::uint64_t enum_cap = kDefaultEnumerationCap) {
    if (outcomes.size() != array.row_count())
        throw InputError("outcome vector length does not match array row count");

    LocateResult result;
    result.failing_rows = RowSet(array.row_count());
    for (int i = 0; i < array.row_count(); ++i)
        if (outcomes.failed[i]) result.failing_rows.insert(i);

    std::vector<InteractionSet> universe =
        build_universe(model, params, universe_cap, ValidityBackend::Auto, enum_cap);

    std::vector<InteractionSet> candidates;
    for (auto& ts : universe)
        if (covering_rows(array, ts) == result.failing_rows) candidates.push_back(std::move(ts));

    if (candidates.empty()) return result;  // unexplained outcome
    result.explained = true;

    // Partition candidates into connected components of indistinguishability.
    const int n = static_cast<int>(candidates.size());
    std::vector<int> component(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (component[i] >= 0) continue;
        component[i] = next;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (component[j] >= 0) continue;
                if (!distinguishable(model, candidates[cur], candidates[j])) {
                    component[j] = next;
                    stack.push_back(j);
                }
            }
        }
        ++next;
    }
    result.classes.resize(next);
    for (int i = 0; i < n; ++i) result.classes[component[i]].members.push_back(candidates[i]);
    return result;
}

inline std::string locate_result_to_text(const SutModel& model, const TestArray& array,
                                         const LocateResult& result) {
    std::string out;
    if (!result.explained) {
        out = "UNEXPLAINED: no candidate interaction set matches the failing rows\n";
        return out;
    }
    for (std::size_t c = 0; c < result.classes.size(); ++c) {
        out += "class " + std::to_string(c) + ":\n";
        for (const auto& ts : result.classes[c].members) {
            out += "  " + format_interaction_set(model, ts) + "  rows:";
            for (int r : covering_rows(array, ts).indices()) out += " " + std::to_string(r);
            out += "\n";
        }
    }
    return out;
}

}  // namespace cla
