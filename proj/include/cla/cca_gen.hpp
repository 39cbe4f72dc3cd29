#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

#include "cla/array.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/format.hpp"
#include "cla/model.hpp"

namespace cla {

struct CcaGenOptions {
    int candidates_per_row = 50;
    int nucleus_retries = 10;
    // Backtracking budget per completion attempt, in search nodes; 0 picks
    // a small multiple of the factor count. Keeps a single candidate from
    // thrashing on constraint conflicts detected deep in the order; an
    // exhausted attempt is retried with a fresh factor order.
    int node_budget = 0;
    ValidityBackend backend = ValidityBackend::Auto;
    std::uint64_t enum_cap = kDefaultEnumerationCap;
};

namespace detail {

// Identifies the strength-t interactions of a model by dense id. Lookups in
// the row-scoring hot path go through packed 64-bit keys when t fits.
class InteractionIndex {
public:
    InteractionIndex(std::vector<Interaction> interactions, int t)
        : interactions_(std::move(interactions)), packed_(t <= 4) {
        for (int i = 0; i < static_cast<int>(interactions_.size()); ++i) {
            if (packed_)
                by_key_.emplace(pack(interactions_[i].pairs), i);
            else
                by_value_.emplace(interactions_[i], i);
        }
    }

    const std::vector<Interaction>& interactions() const { return interactions_; }

    // pairs must be sorted by factor index
    int lookup(const std::vector<std::pair<int, int>>& pairs) const {
        if (packed_) {
            auto it = by_key_.find(pack(pairs));
            return it == by_key_.end() ? -1 : it->second;
        }
        auto it = by_value_.find(Interaction(std::vector<std::pair<int, int>>(pairs)));
        return it == by_value_.end() ? -1 : it->second;
    }

private:
    static std::uint64_t pack(const std::vector<std::pair<int, int>>& pairs) {
        std::uint64_t key = 0;
        for (auto [f, v] : pairs) key = (key << 16) | (static_cast<std::uint64_t>(f) << 8) | v;
        return key;
    }

    std::vector<Interaction> interactions_;
    bool packed_;
    std::unordered_map<std::uint64_t, int> by_key_;
    std::map<Interaction, int> by_value_;
};

// Greedy row completion: fix the nucleus, then assign the remaining factors
// in the given order, preferring values that complete the most uncovered
// interactions; backtracks on constraint conflicts. Gives up once the node
// budget is spent, so a false return means "retry with another order", not
// "the nucleus is unextendable".
inline bool complete_row(const SutModel& model, const Interaction& nucleus,
                         const std::vector<int>& factor_order, const InteractionIndex& index,
                         const std::vector<char>& uncovered, int t, int node_budget,
                         std::mt19937_64& rng, Test& out) {
    const int k = model.factor_count();
    std::vector<int> assignment(k, -1);
    for (auto [f, v] : nucleus.pairs) assignment[f] = v;
    if (model.constraint.eval_partial(assignment) == Tri::False) return false;

    std::vector<std::pair<int, int>> scratch;
    scratch.reserve(t);

    // Newly completed uncovered t-way interactions if factor f takes value v.
    auto gain = [&](int f, int v) {
        int score = 0;
        std::vector<int> assigned;
        for (int i = 0; i < k; ++i)
            if (assignment[i] >= 0 && i != f) assigned.push_back(i);
        std::vector<int> chosen;
        auto rec = [&](auto&& self, std::size_t start) -> void {
            if (static_cast<int>(chosen.size()) == t - 1) {
                scratch.clear();
                bool placed = false;
                for (int g : chosen) {
                    if (!placed && f < g) {
                        scratch.emplace_back(f, v);
                        placed = true;
                    }
                    scratch.emplace_back(g, assignment[g]);
                }
                if (!placed) scratch.emplace_back(f, v);
                int id = index.lookup(scratch);
                if (id >= 0 && uncovered[id]) ++score;
                return;
            }
            for (std::size_t i = start; i < assigned.size(); ++i) {
                chosen.push_back(assigned[i]);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        if (static_cast<int>(assigned.size()) >= t - 1) rec(rec, 0);
        return score;
    };

    int budget = node_budget;
    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (budget-- <= 0) return false;
        if (depth == factor_order.size())
            return model.constraint.eval_partial(assignment) == Tri::True;
        int f = factor_order[depth];
        if (assignment[f] >= 0) return self(self, depth + 1);
        std::vector<std::pair<int, int>> ranked;  // (-gain, value)
        for (int v = 0; v < model.domain_size(f); ++v) ranked.emplace_back(-gain(f, v), v);
        std::shuffle(ranked.begin(), ranked.end(), rng);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto [neg, v] : ranked) {
            assignment[f] = v;
            if (model.constraint.eval_partial(assignment) != Tri::False && self(self, depth + 1))
                return true;
            assignment[f] = -1;
        }
        return false;
    };
    if (!dfs(dfs, 0)) return false;
    out = assignment;
    return true;
}

}  // namespace detail

// AETG-style greedy t-CCA generation. Deterministic for fixed (model, t, seed).
inline TestArray generate_cca(const SutModel& model, int t, std::uint64_t seed,
                              const CcaGenOptions& options = {}) {
    if (t < 1 || t > model.factor_count()) throw InputError("strength t out of range");
    if (!find_valid_test(model, Interaction{}, {}).has_value())
        throw InputError("no valid tests exist");

    detail::InteractionIndex index(
        valid_interactions(model, t, StrengthMode::Exact, options.backend, options.enum_cap), t);
    const int total = static_cast<int>(index.interactions().size());

    std::vector<char> uncovered(total, 1);
    std::vector<int> uncovered_ids(total);
    std::iota(uncovered_ids.begin(), uncovered_ids.end(), 0);
    std::vector<int> position(total);
    std::iota(position.begin(), position.end(), 0);

    auto mark_covered = [&](int id) {
        if (!uncovered[id]) return;
        uncovered[id] = 0;
        int pos = position[id];
        int last = uncovered_ids.back();
        uncovered_ids[pos] = last;
        position[last] = pos;
        uncovered_ids.pop_back();
    };

    std::mt19937_64 rng(seed);
    TestArray array;
    const int k = model.factor_count();
    const int budget = options.node_budget > 0 ? options.node_budget : 5 * (k + 1);

    while (!uncovered_ids.empty()) {
        Test best;
        int best_score = -1;
        for (int c = 0; c < options.candidates_per_row; ++c) {
            const Interaction& nucleus =
                index.interactions()[uncovered_ids[rng() % uncovered_ids.size()]];

            std::vector<int> order(k);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);

            Test candidate;
            bool built = false;
            for (int r = 0; r < options.nucleus_retries && !built; ++r) {
                built = detail::complete_row(model, nucleus, order, index, uncovered, t,
                                             budget, rng, candidate);
                if (!built) std::shuffle(order.begin(), order.end(), rng);
            }
            if (!built) {
                // Budgeted attempts all failed; fall back to a complete search.
                auto fallback = find_valid_test(model, nucleus, {});
                if (!fallback)
                    throw InputError("bookkeeping error: invalid interaction " +
                                     format_interaction(model, nucleus) + " marked uncovered");
                candidate = *fallback;
            }
            int score = 0;
            for (const auto& ia : interactions_of(candidate, t)) {
                int id = index.lookup(ia.pairs);
                if (id >= 0 && uncovered[id]) ++score;
            }
            if (score > best_score) {
                best_score = score;
                best = candidate;
            }
        }
        if (best_score <= 0)
            throw InputError("failed to construct a row covering any uncovered interaction");
        array.rows.push_back(best);
        for (const auto& ia : interactions_of(best, t)) {
            int id = index.lookup(ia.pairs);
            if (id >= 0) mark_covered(id);
        }
    }
    return array;
}

}  // namespace cla
