#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cla/array.hpp"
#include "cla/errors.hpp"
#include "cla/model.hpp"

namespace cla {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// All valid tests in lexicographic value order. Errors out if the count
// would exceed `cap`; callers that cannot afford full enumeration should
// use find_valid_test probes instead.
inline std::vector<Test> enumerate_valid_tests(const SutModel& model,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
    if (cap == 0) throw InputError("enumeration cap must be positive");
    const int k = model.factor_count();
    std::vector<Test> out;
    std::vector<int> assignment(k, -1);
    auto dfs = [&](auto&& self, int depth) -> void {
        if (model.constraint.eval_partial(assignment) == Tri::False) return;
        if (depth == k) {
            if (out.size() >= cap)
                throw CapExceeded("enumeration too large: more than " + std::to_string(cap) +
                                  " valid tests");
            out.push_back(assignment);
            return;
        }
        for (int v = 0; v < model.domain_size(depth); ++v) {
            assignment[depth] = v;
            self(self, depth + 1);
            assignment[depth] = -1;
        }
    };
    dfs(dfs, 0);
    return out;
}

// All C(k,t) strength-t sub-assignments of a test.
inline std::vector<Interaction> interactions_of(const Test& test, int t) {
    const int k = static_cast<int>(test.size());
    if (t < 0 || t > k) throw InputError("strength t out of range");
    std::vector<Interaction> out;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(chosen.size()) == t) {
            std::vector<std::pair<int, int>> pairs;
            pairs.reserve(t);
            for (int f : chosen) pairs.emplace_back(f, test[f]);
            out.push_back(Interaction(std::move(pairs)));
            return;
        }
        for (int f = start; f <= k - (t - static_cast<int>(chosen.size())); ++f) {
            chosen.push_back(f);
            self(self, f + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// All syntactic t-way interactions of the model.
inline std::vector<Interaction> all_interactions(const SutModel& model, int t) {
    const int k = model.factor_count();
    if (t < 0 || t > k) throw InputError("strength t out of range");
    std::vector<Interaction> out;
    std::vector<std::pair<int, int>> pairs;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pairs.size()) == t) {
            out.push_back(Interaction(pairs));
            return;
        }
        for (int f = start; f <= k - (t - static_cast<int>(pairs.size())); ++f) {
            for (int v = 0; v < model.domain_size(f); ++v) {
                pairs.emplace_back(f, v);
                self(self, f + 1);
                pairs.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

enum class StrengthMode { Exact, UpTo };
enum class ValidityBackend { Auto, Enumerate, Probe };

// VI_t (exact) or VI_0 .. VI_t (up-to), in canonical order.
inline std::vector<Interaction> valid_interactions(const SutModel& model, int t,
                                                   StrengthMode mode = StrengthMode::Exact,
                                                   ValidityBackend backend = ValidityBackend::Auto,
                                                   std::uint64_t cap = kDefaultEnumerationCap) {
    if (t < 0 || t > model.factor_count()) throw InputError("strength t out of range");
    if (backend == ValidityBackend::Auto)
        backend = model.total_tests() <= cap ? ValidityBackend::Enumerate : ValidityBackend::Probe;

    int lo = (mode == StrengthMode::Exact) ? t : 0;
    std::vector<Interaction> out;
    if (backend == ValidityBackend::Enumerate) {
        std::vector<Test> all = enumerate_valid_tests(model, cap);
        for (int s = lo; s <= t; ++s) {
            std::set<Interaction> found;
            for (const auto& test : all)
                for (auto& ia : interactions_of(test, s)) found.insert(std::move(ia));
            out.insert(out.end(), found.begin(), found.end());
        }
    } else {
        for (int s = lo; s <= t; ++s)
            for (auto& ia : all_interactions(model, s))
                if (interaction_valid(model, ia)) out.push_back(std::move(ia));
    }
    return out;
}

// I_t \ VI_t.
inline std::vector<Interaction> invalid_interactions(const SutModel& model, int t,
                                                     ValidityBackend backend = ValidityBackend::Auto,
                                                     std::uint64_t cap = kDefaultEnumerationCap) {
    std::set<Interaction> valid;
    for (auto& ia : valid_interactions(model, t, StrengthMode::Exact, backend, cap))
        valid.insert(std::move(ia));
    std::vector<Interaction> out;
    for (auto& ia : all_interactions(model, t))
        if (!valid.count(ia)) out.push_back(std::move(ia));
    return out;
}

// rho_A(T): rows of the array covering the interaction.
inline RowSet covering_rows(const TestArray& array, const Interaction& target) {
    RowSet rs(array.row_count());
    for (int i = 0; i < array.row_count(); ++i)
        if (target.covered_by(array.rows[i])) rs.insert(i);
    return rs;
}

// rho_A(TS) = union over members; rho_A(empty set) is empty.
inline RowSet covering_rows(const TestArray& array, const InteractionSet& targets) {
    RowSet rs(array.row_count());
    for (const auto& t : targets.members) rs |= covering_rows(array, t);
    return rs;
}

}  // namespace cla
