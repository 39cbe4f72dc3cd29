#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cla/cca_gen.hpp"
#include "cla/cla_reduce.hpp"
#include "cla/enumeration.hpp"
#include "cla/format.hpp"
#include "cla/model.hpp"
#include "cla/verify.hpp"

namespace cla {

// Random satisfiable model: 2..6 factors with 2 or 3 values each and up to 5
// small constraints. Resamples until satisfiable.
inline SutModel random_model(std::mt19937_64& rng) {
    for (;;) {
        SutModel m;
        m.name = "random";
        int k = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < k; ++i) {
            Factor f;
            f.name = "F" + std::to_string(i + 1);
            int dom = 2 + static_cast<int>(rng() % 2);
            for (int v = 0; v < dom; ++v) f.values.push_back(std::to_string(v));
            m.factors.push_back(std::move(f));
        }
        int nc = static_cast<int>(rng() % 6);
        std::vector<ConstraintExpr> cs;
        for (int c = 0; c < nc; ++c) {
            int a = static_cast<int>(rng() % k);
            int b = static_cast<int>(rng() % k);
            ConstraintExpr lhs =
                ConstraintExpr::atom(a, static_cast<int>(rng() % m.domain_size(a)), rng() % 2 == 0);
            ConstraintExpr rhs =
                ConstraintExpr::atom(b, static_cast<int>(rng() % m.domain_size(b)), rng() % 2 == 0);
            switch (rng() % 3) {
                case 0:
                    cs.push_back(ConstraintExpr::implies(std::move(lhs), std::move(rhs)));
                    break;
                case 1: {
                    std::vector<ConstraintExpr> parts;
                    parts.push_back(std::move(lhs));
                    parts.push_back(std::move(rhs));
                    cs.push_back(ConstraintExpr::disjunction(std::move(parts)));
                    break;
                }
                default: {
                    std::vector<ConstraintExpr> parts;
                    parts.push_back(std::move(lhs));
                    parts.push_back(std::move(rhs));
                    cs.push_back(ConstraintExpr::negation(ConstraintExpr::conjunction(std::move(parts))));
                    break;
                }
            }
        }
        m.constraint = ConstraintExpr::conjunction(std::move(cs));
        if (find_valid_test(m, Interaction{}, {}).has_value()) return m;
    }
}

// Random subset of the valid tests, each row kept with probability 1/2.
inline TestArray random_subarray(const std::vector<Test>& all, std::mt19937_64& rng) {
    TestArray a;
    for (const auto& t : all)
        if (rng() % 2) a.rows.push_back(t);
    return a;
}

struct PropertyStats {
    int models = 0;
    long long checks = 0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }

    void merge(const PropertyStats& other) {
        models += other.models;
        checks += other.checks;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

// Any (t+1)-CCA is a (1bar, tbar)-CLA.
inline PropertyStats cca_to_cla_suite(int model_count, std::uint64_t seed) {
    PropertyStats stats;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < model_count; ++i) {
        SutModel m = random_model(rng);
        ++stats.models;
        for (int t : {1, 2}) {
            if (t + 1 > m.factor_count()) continue;
            TestArray cca = generate_cca(m, t + 1, rng());
            ++stats.checks;
            if (!verify_cca(m, cca, t + 1).pass) {
                stats.failures.push_back("model " + std::to_string(i) + ": generated array is not a " +
                                         std::to_string(t + 1) + "-CCA");
                continue;
            }
            if (!verify_cla(m, cca, UniverseParams{1, t, true, true}).pass)
                stats.failures.push_back("model " + std::to_string(i) + ": " + std::to_string(t + 1) +
                                         "-CCA failed (1bar," + std::to_string(t) + "bar)-CLA check");
        }
    }
    return stats;
}

// (1bar, t)-CLA and (1bar, tbar)-CLA verdicts agree, and a passing array is
// also a t-CCA.
inline PropertyStats strength_mode_suite(int model_count, std::uint64_t seed) {
    PropertyStats stats;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < model_count; ++i) {
        SutModel m = random_model(rng);
        ++stats.models;
        std::vector<Test> all = enumerate_valid_tests(m);
        TestArray sub = random_subarray(all, rng);
        for (int t : {1, 2}) {
            if (t > m.factor_count()) continue;
            ++stats.checks;
            bool exact = verify_cla(m, sub, UniverseParams{1, t, true, false}).pass;
            bool upto = verify_cla(m, sub, UniverseParams{1, t, true, true}).pass;
            if (exact != upto) {
                stats.failures.push_back("model " + std::to_string(i) + ": (1bar," + std::to_string(t) +
                                         ") and (1bar," + std::to_string(t) + "bar) verdicts disagree");
                continue;
            }
            if (exact && !verify_cca(m, sub, t).pass)
                stats.failures.push_back("model " + std::to_string(i) + ": (1bar," + std::to_string(t) +
                                         ")-CLA is not a " + std::to_string(t) + "-CCA");
        }
    }
    return stats;
}

// Subsumption: (dbar,tbar) => (dbar,t) and (d,tbar); (dbar,t) => (d,t);
// (dbar,tbar) => (d-1 bar,tbar); (d,tbar) => (d,t-1 bar).
inline PropertyStats subsumption_suite(int model_count, std::uint64_t seed) {
    PropertyStats stats;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < model_count; ++i) {
        SutModel m = random_model(rng);
        ++stats.models;
        std::vector<Test> all = enumerate_valid_tests(m);
        TestArray sub = random_subarray(all, rng);
        int d = 2;
        int t = std::min(2, m.factor_count());
        bool bar_both = verify_cla(m, sub, UniverseParams{d, t, true, true}).pass;
        bool bar_d = verify_cla(m, sub, UniverseParams{d, t, true, false}).pass;
        bool bar_t = verify_cla(m, sub, UniverseParams{d, t, false, true}).pass;
        bool exact = verify_cla(m, sub, UniverseParams{d, t, false, false}).pass;
        bool smaller_d = verify_cla(m, sub, UniverseParams{d - 1, t, true, true}).pass;
        bool smaller_t = verify_cla(m, sub, UniverseParams{d, t - 1, false, true}).pass;
        ++stats.checks;
        auto implies = [](bool a, bool b) { return !a || b; };
        if (!implies(bar_both, bar_d) || !implies(bar_both, bar_t) || !implies(bar_d, exact) ||
            !implies(bar_both, smaller_d) || !implies(bar_t, smaller_t))
            stats.failures.push_back("model " + std::to_string(i) + ": subsumption chain violated");
    }
    return stats;
}

// Without constraints: an LA is always a CLA, and when an LA exists at all
// (equivalently, the exhaustive array is one) the two verifiers agree.
inline PropertyStats la_equivalence_suite(int model_count, std::uint64_t seed) {
    PropertyStats stats;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < model_count; ++i) {
        SutModel m = random_model(rng);
        m.constraint = ConstraintExpr::const_true();
        ++stats.models;
        std::vector<Test> all = enumerate_valid_tests(m);
        TestArray exhaustive;
        exhaustive.rows = all;
        TestArray sub = random_subarray(all, rng);
        for (UniverseParams p : {UniverseParams{1, 1, false, false}, UniverseParams{1, 2, true, true},
                                 UniverseParams{2, 1, true, false}}) {
            if (p.t > m.factor_count()) continue;
            ++stats.checks;
            bool la_exists = verify_la(m, exhaustive, p).pass;
            bool as_cla = verify_cla(m, sub, p).pass;
            bool as_la = verify_la(m, sub, p).pass;
            if (as_la && !as_cla)
                stats.failures.push_back("model " + std::to_string(i) +
                                         ": an unconstrained LA failed CLA verification");
            if (la_exists && as_cla != as_la)
                stats.failures.push_back("model " + std::to_string(i) +
                                         ": CLA and LA verdicts disagree although an LA exists");
        }
    }
    return stats;
}

// The exhaustive array of all valid tests is a CLA for any parameters.
inline PropertyStats exhaustive_array_suite(int model_count, std::uint64_t seed) {
    PropertyStats stats;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < model_count; ++i) {
        SutModel m = random_model(rng);
        ++stats.models;
        TestArray exhaustive;
        exhaustive.rows = enumerate_valid_tests(m);
        int t = std::min(2, m.factor_count());
        for (UniverseParams p : {UniverseParams{1, t, false, false}, UniverseParams{1, t, true, true},
                                 UniverseParams{2, t, true, true}, UniverseParams{2, 1, true, false}}) {
            ++stats.checks;
            if (!verify_cla(m, exhaustive, p).pass)
                stats.failures.push_back("model " + std::to_string(i) +
                                         ": exhaustive array failed CLA verification");
        }
    }
    return stats;
}

struct SelftestResult {
    PropertyStats subsumption, la_equivalence, exhaustive_array, cca_to_cla, strength_mode;

    bool pass() const {
        return subsumption.pass() && la_equivalence.pass() && exhaustive_array.pass() && cca_to_cla.pass() &&
               strength_mode.pass();
    }

    std::string to_text() const {
        auto line = [](const char* name, const PropertyStats& s) {
            std::string out = std::string(name) + ": " + (s.pass() ? "PASS" : "FAIL") + " (" +
                              std::to_string(s.models) + " models, " + std::to_string(s.checks) +
                              " checks)\n";
            for (const auto& f : s.failures) out += "  " + f + "\n";
            return out;
        };
        return line("subsumption", subsumption) + line("LA equivalence", la_equivalence) +
               line("exhaustive array", exhaustive_array) + line("CCA to CLA", cca_to_cla) +
               line("exact/up-to strength", strength_mode);
    }
};

inline SelftestResult run_selftest(int model_count = 50, std::uint64_t seed = 0) {
    SelftestResult r;
    r.subsumption = subsumption_suite(model_count, seed + 1);
    r.la_equivalence = la_equivalence_suite(model_count, seed + 2);
    r.exhaustive_array = exhaustive_array_suite(model_count, seed + 3);
    r.cca_to_cla = cca_to_cla_suite(model_count, seed + 4);
    r.strength_mode = strength_mode_suite(model_count, seed + 5);
    return r;
}

}  // namespace cla
