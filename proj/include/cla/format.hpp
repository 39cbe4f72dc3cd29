#pragma once

#include <string>

#include "cla/model.hpp"

namespace cla {

inline std::string format_test(const SutModel& model, const Test& test) {
    std::string out = "(";
    for (int f = 0; f < model.factor_count(); ++f) {
        if (f) out += ",";
        out += model.factors[f].values[test[f]];
    }
    return out + ")";
}

inline std::string format_interaction(const SutModel& model, const Interaction& ia) {
    if (ia.is_empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (auto [f, v] : ia.pairs) {
        if (!first) out += ", ";
        first = false;
        out += model.factors[f].name + "=" + model.factors[f].values[v];
    }
    return out + "}";
}

inline std::string format_interaction_set(const SutModel& model, const InteractionSet& ts) {
    std::string out = "{";
    bool first = true;
    for (const auto& m : ts.members) {
        if (!first) out += ", ";
        first = false;
        out += format_interaction(model, m);
    }
    return out + "}";
}

}  // namespace cla
