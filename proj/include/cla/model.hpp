#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cla/errors.hpp"

namespace cla {

// A full value assignment, one value index per factor.
using Test = std::vector<int>;

struct Factor {
    std::string name;
    std::vector<std::string> values;  // index i is value i

    int find_value(const std::string& v) const {
        for (int i = 0; i < static_cast<int>(values.size()); ++i)
            if (values[i] == v) return i;
        return -1;
    }
};

// Three-valued truth for partial assignments.
enum class Tri : std::uint8_t { False, True, Unknown };

inline Tri tri_not(Tri a) {
    if (a == Tri::Unknown) return Tri::Unknown;
    return a == Tri::True ? Tri::False : Tri::True;
}

// Constraint expression tree. Atoms compare a factor against one of its values.
struct ConstraintExpr {
    enum class Kind { ConstTrue, Atom, Not, And, Or, Implies };

    Kind kind = Kind::ConstTrue;
    int factor = -1;        // Atom
    int value = -1;         // Atom
    bool equals = true;     // Atom: true for '=', false for '!='
    std::vector<ConstraintExpr> children;

    static ConstraintExpr const_true() { return ConstraintExpr{}; }

    static ConstraintExpr atom(int factor, int value, bool equals) {
        ConstraintExpr e;
        e.kind = Kind::Atom;
        e.factor = factor;
        e.value = value;
        e.equals = equals;
        return e;
    }

    static ConstraintExpr negation(ConstraintExpr child) {
        ConstraintExpr e;
        e.kind = Kind::Not;
        e.children.push_back(std::move(child));
        return e;
    }

    static ConstraintExpr conjunction(std::vector<ConstraintExpr> cs) {
        if (cs.empty()) return const_true();
        if (cs.size() == 1) return std::move(cs.front());
        ConstraintExpr e;
        e.kind = Kind::And;
        e.children = std::move(cs);
        return e;
    }

    static ConstraintExpr disjunction(std::vector<ConstraintExpr> cs) {
        if (cs.size() == 1) return std::move(cs.front());
        ConstraintExpr e;
        e.kind = Kind::Or;
        e.children = std::move(cs);
        return e;
    }

    static ConstraintExpr implies(ConstraintExpr lhs, ConstraintExpr rhs) {
        ConstraintExpr e;
        e.kind = Kind::Implies;
        e.children.push_back(std::move(lhs));
        e.children.push_back(std::move(rhs));
        return e;
    }

    // Evaluation over a partial assignment; entry -1 means unassigned.
    Tri eval_partial(const std::vector<int>& assignment) const {
        switch (kind) {
            case Kind::ConstTrue:
                return Tri::True;
            case Kind::Atom: {
                int v = assignment[factor];
                if (v < 0) return Tri::Unknown;
                bool eq = (v == value);
                return (eq == equals) ? Tri::True : Tri::False;
            }
            case Kind::Not:
                return tri_not(children[0].eval_partial(assignment));
            case Kind::And: {
                bool unknown = false;
                for (const auto& c : children) {
                    Tri r = c.eval_partial(assignment);
                    if (r == Tri::False) return Tri::False;
                    if (r == Tri::Unknown) unknown = true;
                }
                return unknown ? Tri::Unknown : Tri::True;
            }
            case Kind::Or: {
                bool unknown = false;
                for (const auto& c : children) {
                    Tri r = c.eval_partial(assignment);
                    if (r == Tri::True) return Tri::True;
                    if (r == Tri::Unknown) unknown = true;
                }
                return unknown ? Tri::Unknown : Tri::False;
            }
            case Kind::Implies: {
                Tri a = children[0].eval_partial(assignment);
                Tri b = children[1].eval_partial(assignment);
                if (a == Tri::False || b == Tri::True) return Tri::True;
                if (a == Tri::True && b == Tri::False) return Tri::False;
                return Tri::Unknown;
            }
        }
        return Tri::Unknown;
    }
};

struct SutModel {
    std::string name;
    std::vector<Factor> factors;
    ConstraintExpr constraint = ConstraintExpr::const_true();

    int factor_count() const { return static_cast<int>(factors.size()); }

    int domain_size(int factor) const { return static_cast<int>(factors[factor].values.size()); }

    // Product of all domain sizes, saturating at 2^63-1.
    std::uint64_t total_tests() const {
        std::uint64_t n = 1;
        for (const auto& f : factors) {
            std::uint64_t s = f.values.size();
            if (n > UINT64_MAX / 2 / s) return UINT64_MAX / 2;
            n *= s;
        }
        return n;
    }

    int find_factor(const std::string& name_) const {
        for (int i = 0; i < factor_count(); ++i)
            if (factors[i].name == name_) return i;
        return -1;
    }

    void check_test(const Test& test) const {
        if (static_cast<int>(test.size()) != factor_count())
            throw InputError("test has " + std::to_string(test.size()) + " entries, expected " +
                             std::to_string(factor_count()));
        for (int i = 0; i < factor_count(); ++i)
            if (test[i] < 0 || test[i] >= domain_size(i))
                throw InputError("value index " + std::to_string(test[i]) +
                                 " out of range for factor " + factors[i].name);
    }
};

// A set of (factor, value) pairs, canonically sorted by factor index.
// The empty interaction is the 0-way interaction.
struct Interaction {
    std::vector<std::pair<int, int>> pairs;

    Interaction() = default;

    explicit Interaction(std::vector<std::pair<int, int>> ps) : pairs(std::move(ps)) {
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (pairs[i].first == pairs[i - 1].first)
                throw InputError("interaction repeats factor index " + std::to_string(pairs[i].first));
    }

    int strength() const { return static_cast<int>(pairs.size()); }
    bool is_empty() const { return pairs.empty(); }

    bool covered_by(const Test& test) const {
        for (auto [f, v] : pairs)
            if (test[f] != v) return false;
        return true;
    }

    // Fully determined by a partial assignment and matching it.
    bool covered_by_partial(const std::vector<int>& assignment) const {
        for (auto [f, v] : pairs)
            if (assignment[f] != v) return false;
        return true;
    }

    bool subset_of(const Interaction& other) const {
        return std::includes(other.pairs.begin(), other.pairs.end(), pairs.begin(), pairs.end());
    }

    bool strict_subset_of(const Interaction& other) const {
        return pairs.size() < other.pairs.size() && subset_of(other);
    }

    auto operator<=>(const Interaction&) const = default;
};

inline void check_interaction(const SutModel& model, const Interaction& ia) {
    for (auto [f, v] : ia.pairs) {
        if (f < 0 || f >= model.factor_count())
            throw InputError("interaction references factor index " + std::to_string(f));
        if (v < 0 || v >= model.domain_size(f))
            throw InputError("interaction references value " + std::to_string(v) +
                             " of factor " + model.factors[f].name);
    }
}

// A set of interactions with set semantics, kept in canonical order.
struct InteractionSet {
    std::vector<Interaction> members;

    InteractionSet() = default;

    explicit InteractionSet(std::vector<Interaction> ms) : members(std::move(ms)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }

    bool covers_some(const Test& test) const {
        for (const auto& m : members)
            if (m.covered_by(test)) return true;
        return false;
    }

    auto operator<=>(const InteractionSet&) const = default;
};

// True iff no member strictly contains another.
inline bool independent(const InteractionSet& ts) {
    for (std::size_t i = 0; i < ts.members.size(); ++i)
        for (std::size_t j = 0; j < ts.members.size(); ++j)
            if (i != j && ts.members[i].strict_subset_of(ts.members[j])) return false;
    return true;
}

inline InteractionSet set_union(const InteractionSet& a, const InteractionSet& b) {
    std::vector<Interaction> ms = a.members;
    ms.insert(ms.end(), b.members.begin(), b.members.end());
    return InteractionSet(std::move(ms));
}

// phi at a full assignment.
inline bool evaluate(const SutModel& model, const Test& test) {
    model.check_test(test);
    Tri r = model.constraint.eval_partial(test);
    return r == Tri::True;
}

// Depth-first search for a valid test covering `cover` while fully covering
// none of `avoid`. Factors are assigned in declaration order, values in
// ascending order; partial assignments that already falsify phi or fully
// match an avoided interaction are pruned. Deterministic.
inline std::optional<Test> find_valid_test(const SutModel& model, const Interaction& cover,
                                           const std::vector<Interaction>& avoid) {
    check_interaction(model, cover);
    for (const auto& a : avoid) check_interaction(model, a);

    const int k = model.factor_count();
    std::vector<int> assignment(k, -1);
    for (auto [f, v] : cover.pairs) assignment[f] = v;

    auto consistent = [&]() {
        if (model.constraint.eval_partial(assignment) == Tri::False) return false;
        for (const auto& a : avoid) {
            bool fully_assigned = true;
            bool matches = true;
            for (auto [f, v] : a.pairs) {
                if (assignment[f] < 0) { fully_assigned = false; break; }
                if (assignment[f] != v) { matches = false; break; }
            }
            if (fully_assigned && matches) return false;
        }
        return true;
    };

    std::vector<int> order;
    for (int i = 0; i < k; ++i)
        if (assignment[i] < 0) order.push_back(i);

    if (!consistent()) return std::nullopt;

    std::optional<Test> result;
    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == order.size()) {
            if (model.constraint.eval_partial(assignment) == Tri::True) {
                result = assignment;
                return true;
            }
            return false;
        }
        int f = order[depth];
        for (int v = 0; v < model.domain_size(f); ++v) {
            assignment[f] = v;
            if (consistent() && self(self, depth + 1)) return true;
            assignment[f] = -1;
        }
        return false;
    };
    dfs(dfs, 0);
    return result;
}

// An interaction is valid iff some valid test covers it.
inline bool interaction_valid(const SutModel& model, const Interaction& ia) {
    return find_valid_test(model, ia, {}).has_value();
}

}  // namespace cla
