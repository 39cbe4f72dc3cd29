#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cla/array.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/model.hpp"

namespace cla {

inline constexpr std::uint64_t kDefaultUniverseCap = 20'000;

// Lemma-style witness check: the two sets are distinguishable iff some valid
// test covers a member of exactly one of them.
inline bool distinguishable(const SutModel& model, const InteractionSet& ts1,
                            const InteractionSet& ts2) {
    for (const auto& t : ts1.members)
        if (find_valid_test(model, t, ts2.members)) return true;
    for (const auto& t : ts2.members)
        if (find_valid_test(model, t, ts1.members)) return true;
    return false;
}

struct UniverseParams {
    int d = 1;
    int t = 1;
    bool bar_d = false;  // set sizes 0..d instead of exactly d
    bool bar_t = false;  // interaction strengths 0..t instead of exactly t
};

// The pair is subject to the CLA/LA condition only when the union of the two
// sets is independent. For exact-strength universes every pair qualifies.
inline bool pair_in_scope(const InteractionSet& ts1, const InteractionSet& ts2, bool bar_t) {
    if (!bar_t) return true;
    return independent(set_union(ts1, ts2));
}

// All interaction sets quantified over by the chosen CLA variant: subsets of
// VI_t (or of VI_0..VI_t when bar_t) of size d (or 0..d when bar_d), keeping
// only independent sets when bar_t is set.
inline std::vector<InteractionSet> build_universe(const SutModel& model, const UniverseParams& params,
                                                  std::uint64_t cap = kDefaultUniverseCap,
                                                  ValidityBackend backend = ValidityBackend::Auto,
                                                  std::uint64_t enum_cap = kDefaultEnumerationCap) {
    if (params.d < 0) throw InputError("d must be non-negative");
    if (params.t < 0 || params.t > model.factor_count()) throw InputError("strength t out of range");

    std::vector<Interaction> base = valid_interactions(
        model, params.t, params.bar_t ? StrengthMode::UpTo : StrengthMode::Exact, backend, enum_cap);

    std::vector<InteractionSet> out;
    auto emit = [&](std::vector<Interaction> members) {
        if (out.size() >= cap)
            throw CapExceeded("interaction-set universe exceeds cap of " + std::to_string(cap));
        out.push_back(InteractionSet(std::move(members)));
    };

    int lo = params.bar_d ? 0 : params.d;
    for (int size = lo; size <= params.d; ++size) {
        std::vector<int> idx;
        std::vector<Interaction> members;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(members.size()) == size) {
                InteractionSet ts{std::vector<Interaction>(members)};
                if (!params.bar_t || independent(ts)) emit(std::move(ts.members));
                return;
            }
            for (int i = start; i < static_cast<int>(base.size()); ++i) {
                members.push_back(base[i]);
                self(self, i + 1);
                members.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

// All in-scope unordered pairs of distinct universe sets that are NOT
// distinguishable, each pair ordered (smaller, larger), sorted.
inline std::vector<std::pair<InteractionSet, InteractionSet>> indistinguishable_pairs(
    const SutModel& model, const UniverseParams& params, std::uint64_t cap = kDefaultUniverseCap,
    std::uint64_t enum_cap = kDefaultEnumerationCap) {
    std::vector<InteractionSet> universe =
        build_universe(model, params, cap, ValidityBackend::Auto, enum_cap);
    std::vector<std::pair<InteractionSet, InteractionSet>> out;
    auto emit = [&out](const InteractionSet& a, const InteractionSet& b) {
        out.emplace_back(std::min(a, b), std::max(a, b));
    };

    if (model.total_tests() <= enum_cap) {
        // Over the exhaustive array of all valid tests, equal row coverage is
        // exactly indistinguishability.
        TestArray exhaustive;
        exhaustive.rows = enumerate_valid_tests(model, enum_cap);
        std::unordered_map<RowSet, std::vector<int>, RowSetHash> groups;
        for (int i = 0; i < static_cast<int>(universe.size()); ++i)
            groups[covering_rows(exhaustive, universe[i])].push_back(i);
        for (auto& [rs, idx] : groups) {
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b)
                    if (pair_in_scope(universe[idx[a]], universe[idx[b]], params.bar_t))
                        emit(universe[idx[a]], universe[idx[b]]);
        }
    } else {
        for (std::size_t a = 0; a < universe.size(); ++a)
            for (std::size_t b = a + 1; b < universe.size(); ++b)
                if (pair_in_scope(universe[a], universe[b], params.bar_t) &&
                    !distinguishable(model, universe[a], universe[b]))
                    emit(universe[a], universe[b]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cla
