#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cla/array.hpp"
#include "cla/distinguish.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/format.hpp"
#include "cla/model.hpp"

namespace cla {

inline constexpr int kMaxReportWitnesses = 100;

struct Report {
    bool pass = false;
    bool degenerate = false;  // vacuous condition, e.g. d = 0
    std::uint64_t universe_size = 0;
    std::uint64_t pairs_checked = 0;
    std::vector<std::string> witnesses;  // human-readable violation descriptions
    std::vector<std::string> warnings;

    void add_witness(std::string w) {
        if (witnesses.size() < kMaxReportWitnesses) witnesses.push_back(std::move(w));
    }
};

namespace detail {

// Shared row-validity and duplicate screening. Returns false on hard failure.
inline bool screen_rows(const SutModel& model, const TestArray& array, Report& report) {
    bool ok = true;
    for (int i = 0; i < array.row_count(); ++i) {
        model.check_test(array.rows[i]);
        if (!evaluate(model, array.rows[i])) {
            report.add_witness("row " + std::to_string(i) + " violates constraints: " +
                               format_test(model, array.rows[i]));
            ok = false;
        }
    }
    std::map<Test, int> seen;
    for (int i = 0; i < array.row_count(); ++i) {
        auto [it, inserted] = seen.emplace(array.rows[i], i);
        if (!inserted)
            report.warnings.push_back("row " + std::to_string(i) + " duplicates row " +
                                      std::to_string(it->second));
    }
    return ok;
}

}  // namespace detail

// t-CCA check: all rows valid and every valid t-way interaction covered.
inline Report verify_cca(const SutModel& model, const TestArray& array, int t,
                         ValidityBackend backend = ValidityBackend::Auto,
                         std::uint64_t enum_cap = kDefaultEnumerationCap) {
    if (t < 1 || t > model.factor_count()) throw InputError("strength t out of range");
    Report report;
    bool rows_ok = detail::screen_rows(model, array, report);
    std::vector<Interaction> vi = valid_interactions(model, t, StrengthMode::Exact, backend, enum_cap);
    report.universe_size = vi.size();
    bool covered_ok = true;
    for (const auto& ia : vi) {
        if (covering_rows(array, ia).empty()) {
            report.add_witness("uncovered valid interaction " + format_interaction(model, ia));
            covered_ok = false;
        }
    }
    report.pass = rows_ok && covered_ok;
    return report;
}

// CLA check per variant: every in-scope distinguishable pair of interaction
// sets must have distinct row coverage. Pairs are screened by grouping on
// row coverage; only same-coverage pairs need a distinguishability probe.
inline Report verify_cla(const SutModel& model, const TestArray& array, const UniverseParams& params,
                         std::uint64_t universe_cap = kDefaultUniverseCap,
                         std::uint64_t enum_cap = kDefaultEnumerationCap) {
    Report report;
    bool rows_ok = detail::screen_rows(model, array, report);
    if (!rows_ok) {
        report.pass = false;
        return report;
    }
    if (params.d == 0 && !params.bar_d) {
        report.pass = true;
        report.degenerate = true;
        report.warnings.push_back("d = 0: the locating condition is vacuous");
        return report;
    }

    std::vector<InteractionSet> universe = build_universe(model, params, universe_cap,
                                                          ValidityBackend::Auto, enum_cap);
    report.universe_size = universe.size();

    std::unordered_map<RowSet, std::vector<int>, RowSetHash> groups;
    for (int i = 0; i < static_cast<int>(universe.size()); ++i)
        groups[covering_rows(array, universe[i])].push_back(i);

    bool ok = true;
    for (auto& [rs, idx] : groups) {
        for (std::size_t a = 0; a < idx.size() && report.witnesses.size() < kMaxReportWitnesses; ++a) {
            for (std::size_t b = a + 1; b < idx.size() && report.witnesses.size() < kMaxReportWitnesses;
                 ++b) {
                const InteractionSet& ts1 = universe[idx[a]];
                const InteractionSet& ts2 = universe[idx[b]];
                if (!pair_in_scope(ts1, ts2, params.bar_t)) continue;
                ++report.pairs_checked;
                if (distinguishable(model, ts1, ts2)) {
                    report.add_witness("distinguishable sets share coverage: " +
                                       format_interaction_set(model, ts1) + " vs " +
                                       format_interaction_set(model, ts2));
                    ok = false;
                }
            }
        }
    }
    report.pass = ok;
    return report;
}

// Unconstrained locating-array check: distinct in-scope pairs must have
// distinct coverage (no distinguishability exemption).
inline Report verify_la(const SutModel& model, const TestArray& array, const UniverseParams& params,
                        std::uint64_t universe_cap = kDefaultUniverseCap,
                        std::uint64_t enum_cap = kDefaultEnumerationCap) {
    Report report;
    for (int i = 0; i < array.row_count(); ++i) model.check_test(array.rows[i]);
    if (params.d == 0 && !params.bar_d) {
        report.pass = true;
        report.degenerate = true;
        return report;
    }
    std::vector<InteractionSet> universe = build_universe(model, params, universe_cap,
                                                          ValidityBackend::Auto, enum_cap);
    report.universe_size = universe.size();
    std::unordered_map<RowSet, std::vector<int>, RowSetHash> groups;
    for (int i = 0; i < static_cast<int>(universe.size()); ++i)
        groups[covering_rows(array, universe[i])].push_back(i);
    bool ok = true;
    for (auto& [rs, idx] : groups) {
        for (std::size_t a = 0; a < idx.size() && report.witnesses.size() < kMaxReportWitnesses; ++a) {
            for (std::size_t b = a + 1; b < idx.size() && report.witnesses.size() < kMaxReportWitnesses;
                 ++b) {
                if (!pair_in_scope(universe[idx[a]], universe[idx[b]], params.bar_t)) continue;
                ++report.pairs_checked;
                report.add_witness("distinct sets share coverage: " +
                                   format_interaction_set(model, universe[idx[a]]) + " vs " +
                                   format_interaction_set(model, universe[idx[b]]));
                ok = false;
            }
        }
    }
    report.pass = ok;
    return report;
}

// Exhaustive minimal-size oracle for tiny models. A subset S of the valid
// tests satisfies the CLA condition iff S hits the symmetric difference of
// exhaustive-array coverages for every distinguishable in-scope pair, so the
// minimum size is an exact minimum hitting set, found by iterative-deepening
// search over subsets. `budget` bounds the search nodes.
inline std::pair<int, TestArray> minimal_cla_size(const SutModel& model, const UniverseParams& params,
                                                  std::uint64_t budget = 50'000'000,
                                                  std::uint64_t universe_cap = kDefaultUniverseCap,
                                                  std::uint64_t enum_cap = kDefaultEnumerationCap) {
    TestArray exhaustive;
    exhaustive.rows = enumerate_valid_tests(model, enum_cap);
    const int n = exhaustive.row_count();
    if (n > 64) throw CapExceeded("minimal_cla_size supports at most 64 valid tests");

    std::vector<InteractionSet> universe;
    if (!(params.d == 0 && !params.bar_d))
        universe = build_universe(model, params, universe_cap, ValidityBackend::Enumerate, enum_cap);

    std::vector<std::uint64_t> rho(universe.size(), 0);
    for (std::size_t i = 0; i < universe.size(); ++i) {
        RowSet rs = covering_rows(exhaustive, universe[i]);
        std::uint64_t mask = 0;
        for (int r : rs.indices()) mask |= (std::uint64_t{1} << r);
        rho[i] = mask;
    }

    // Constraint masks: one per distinguishable in-scope pair.
    std::vector<std::uint64_t> constraints;
    {
        std::unordered_map<std::uint64_t, int> seen;
        std::uint64_t pair_budget = budget;
        std::uint64_t pairs = 0;
        for (std::size_t a = 0; a < universe.size(); ++a) {
            for (std::size_t b = a + 1; b < universe.size(); ++b) {
                if (++pairs > pair_budget)
                    throw CapExceeded("minimal_cla_size budget exceeded while building constraints");
                std::uint64_t diff = rho[a] ^ rho[b];
                if (diff == 0) continue;  // indistinguishable, exempt
                if (!pair_in_scope(universe[a], universe[b], params.bar_t)) continue;
                if (seen.emplace(diff, 1).second) constraints.push_back(diff);
            }
        }
    }
    // Only subset-minimal constraints matter for hitting sets.
    std::sort(constraints.begin(), constraints.end(),
              [](std::uint64_t x, std::uint64_t y) { return __builtin_popcountll(x) < __builtin_popcountll(y); });
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t c : constraints) {
        bool dominated = false;
        for (std::uint64_t m : minimal)
            if ((m & c) == m) { dominated = true; break; }
        if (!dominated) minimal.push_back(c);
    }

    std::uint64_t nodes = 0;
    std::uint64_t chosen = 0;
    std::optional<std::uint64_t> found;
    // depth-limited DFS: branch on the rows of an unhit constraint
    auto dfs = [&](auto&& self, int remaining) -> bool {
        if (++nodes > budget) throw CapExceeded("minimal_cla_size budget exceeded");
        const std::uint64_t* pick = nullptr;
        int pick_count = 65;
        for (const auto& c : minimal) {
            if (c & chosen) continue;
            int cnt = __builtin_popcountll(c);
            if (cnt < pick_count) {
                pick_count = cnt;
                pick = &c;
                if (cnt == 1) break;
            }
        }
        if (!pick) {
            found = chosen;
            return true;
        }
        if (remaining == 0) return false;
        std::uint64_t c = *pick;
        while (c) {
            std::uint64_t bit = c & (~c + 1);
            c ^= bit;
            chosen |= bit;
            if (self(self, remaining - 1)) return true;
            chosen &= ~bit;
        }
        return false;
    };

    for (int size = 0; size <= n; ++size) {
        chosen = 0;
        if (dfs(dfs, size)) {
            TestArray witness;
            for (int r = 0; r < n; ++r)
                if (*found & (std::uint64_t{1} << r)) witness.rows.push_back(exhaustive.rows[r]);
            return {witness.row_count(), witness};
        }
    }
    throw InputError("minimal_cla_size: no subset satisfies the condition");  // unreachable
}

inline std::string report_to_text(const Report& report) {
    std::ostringstream out;
    out << (report.pass ? "PASS" : "FAIL");
    if (report.degenerate) out << " (degenerate)";
    out << "\nuniverse size: " << report.universe_size
        << "\npairs checked: " << report.pairs_checked << "\n";
    for (const auto& w : report.warnings) out << "warning: " << w << "\n";
    for (const auto& w : report.witnesses) out << "violation: " << w << "\n";
    return out.str();
}

}  // namespace cla
