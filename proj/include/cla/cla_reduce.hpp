#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cla/array.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/format.hpp"
#include "cla/model.hpp"

namespace cla {

// map: T -> rho_A(T) for every T in VI_t, plus a reverse index from row-set
// fingerprint to the interactions sharing that row set.
class CoverageMap {
public:
    CoverageMap(const TestArray& array, const std::vector<Interaction>& vi_t) {
        interactions_ = vi_t;
        rows_.reserve(vi_t.size());
        for (const auto& ia : interactions_) {
            rows_.push_back(covering_rows(array, ia));
            by_interaction_.emplace(ia, static_cast<int>(rows_.size()) - 1);
        }
        for (int i = 0; i < size(); ++i) reverse_.emplace(rows_[i].hash(), i);
    }

    int size() const { return static_cast<int>(interactions_.size()); }
    const std::vector<Interaction>& interactions() const { return interactions_; }

    int index_of(const Interaction& ia) const {
        auto it = by_interaction_.find(ia);
        return it == by_interaction_.end() ? -1 : it->second;
    }

    const RowSet& rows(int index) const { return rows_[index]; }

    const RowSet& rows(const Interaction& ia) const {
        int i = index_of(ia);
        if (i < 0) throw InputError("interaction not in coverage map: not in VI_t");
        return rows_[i];
    }

    // Some interaction (other than `except`) whose current row set equals rs?
    // Fingerprint match is confirmed by full set comparison.
    bool any_with_rows(const RowSet& rs, int except) const {
        auto [lo, hi] = reverse_.equal_range(rs.hash());
        for (auto it = lo; it != hi; ++it)
            if (it->second != except && rows_[it->second] == rs) return true;
        return false;
    }

    void erase_row(int interaction_index, int row) {
        auto [lo, hi] = reverse_.equal_range(rows_[interaction_index].hash());
        for (auto it = lo; it != hi; ++it) {
            if (it->second == interaction_index) {
                reverse_.erase(it);
                break;
            }
        }
        rows_[interaction_index].erase(row);
        reverse_.emplace(rows_[interaction_index].hash(), interaction_index);
    }

private:
    std::vector<Interaction> interactions_;
    std::vector<RowSet> rows_;
    std::map<Interaction, int> by_interaction_;
    std::unordered_multimap<std::size_t, int> reverse_;
};

inline CoverageMap build_coverage_map(const TestArray& array, const std::vector<Interaction>& vi_t) {
    return CoverageMap(array, vi_t);
}

struct ReductionReport {
    int input_rows = 0;
    int output_rows = 0;
    std::uint64_t seed = 0;
    std::vector<int> visit_order;    // original row indices, in examination order
    std::vector<int> deleted_rows;   // original row indices, in deletion order
    std::vector<bool> kept;          // per original row

    std::string to_text() const {
        std::string out = "reduction: " + std::to_string(input_rows) + " -> " +
                          std::to_string(output_rows) + " rows (seed " + std::to_string(seed) + ")\n";
        out += "deleted rows:";
        for (int r : deleted_rows) out += " " + std::to_string(r);
        out += "\n";
        return out;
    }
};

struct ReduceOptions {
    int runs = 10;            // independent permutations; smallest output wins
    int precondition_probes = 200;
    std::uint64_t enum_cap = kDefaultEnumerationCap;
};

namespace detail {

// Core deletion loop over an abstract coverage structure: each original row
// is examined exactly once in `order`; a row is deleted when every affected
// interaction keeps a nonempty row set and no two distinguishable
// interactions end up with identical row sets.
inline std::vector<int> reduce_rows(CoverageMap& map, const std::vector<std::vector<int>>& row_interactions,
                                    const std::vector<int>& order) {
    std::vector<int> deleted;
    for (int row : order) {
        bool redundant = true;
        for (int ia : row_interactions[row]) {
            RowSet after = map.rows(ia);
            after.erase(row);
            if (after.empty()) {
                redundant = false;
                break;
            }
            // Distinguishability on the initial CCA coincides with map
            // inequality, and deletions preserve it: a collision of row sets
            // is exactly a violation.
            if (map.any_with_rows(after, ia)) {
                redundant = false;
                break;
            }
        }
        if (redundant) {
            for (int ia : row_interactions[row]) map.erase_row(ia, row);
            deleted.push_back(row);
        }
    }
    return deleted;
}

}  // namespace detail

// Algorithm: reduce a (t+1)-CCA to a smaller array that still satisfies the
// single-fault locating condition at strength up to t. VI_t is derived from
// the input's own rows. Deterministic for a fixed seed.
inline std::pair<TestArray, ReductionReport> reduce_to_cla(const SutModel& model, const TestArray& cca,
                                                           int t, std::uint64_t seed,
                                                           const ReduceOptions& options = {}) {
    if (t < 1 || t > model.factor_count()) throw InputError("strength t out of range");
    for (int i = 0; i < cca.row_count(); ++i) {
        model.check_test(cca.rows[i]);
        if (!evaluate(model, cca.rows[i]))
            throw InputError("input row " + std::to_string(i) + " violates constraints");
    }

    // All t-way interactions occurring in the array; for a (t+1)-CCA input
    // this is exactly VI_t.
    std::set<Interaction> vi_set;
    for (const auto& row : cca.rows)
        for (auto& ia : interactions_of(row, t)) vi_set.insert(std::move(ia));
    std::vector<Interaction> vi(vi_set.begin(), vi_set.end());

    // Precondition spot-check: probe random t-way interactions for validity;
    // a valid interaction missing from the array means the input is not a CCA.
    {
        std::mt19937_64 probe_rng(seed ^ 0x5eed5eedULL);
        std::vector<Interaction> all = all_interactions(model, t);
        int probes = std::min<int>(options.precondition_probes, static_cast<int>(all.size()));
        for (int p = 0; p < probes; ++p) {
            const Interaction& ia = all[probe_rng() % all.size()];
            if (!vi_set.count(ia) && interaction_valid(model, ia))
                throw InputError("input is not a CCA: uncovered valid interaction " +
                                 format_interaction(model, ia));
        }
    }

    std::vector<std::vector<int>> row_interactions(cca.row_count());
    CoverageMap base_map = build_coverage_map(cca, vi);
    for (int r = 0; r < cca.row_count(); ++r)
        for (const auto& ia : interactions_of(cca.rows[r], t))
            row_interactions[r].push_back(base_map.index_of(ia));

    TestArray best;
    ReductionReport best_report;
    for (int run = 0; run < std::max(1, options.runs); ++run) {
        std::uint64_t run_seed = seed + run;
        std::mt19937_64 rng(run_seed);
        std::vector<int> order(cca.row_count());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        CoverageMap map = base_map;
        std::vector<int> deleted = detail::reduce_rows(map, row_interactions, order);

        std::vector<bool> kept(cca.row_count(), true);
        for (int r : deleted) kept[r] = false;
        TestArray out;
        for (int r = 0; r < cca.row_count(); ++r)
            if (kept[r]) out.rows.push_back(cca.rows[r]);

        if (run == 0 || out.row_count() < best.row_count()) {
            best = std::move(out);
            best_report = ReductionReport{};
            best_report.input_rows = cca.row_count();
            best_report.output_rows = best.row_count();
            best_report.seed = run_seed;
            best_report.visit_order = order;
            best_report.deleted_rows = deleted;
            best_report.kept = kept;
        }
    }
    return {best, best_report};
}

}  // namespace cla
