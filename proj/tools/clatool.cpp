// clatool: generate, verify and apply constrained locating arrays.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cla/cca_gen.hpp"
#include "cla/cla_reduce.hpp"
#include "cla/distinguish.hpp"
#include "cla/enumeration.hpp"
#include "cla/errors.hpp"
#include "cla/format.hpp"
#include "cla/locate.hpp"
#include "cla/model.hpp"
#include "cla/parser.hpp"
#include "cla/selftest.hpp"
#include "cla/verify.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cla::InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cla::InputError("cannot open output file: " + path);
    out << text;
}

json report_to_json(const cla::Report& r) {
    return json{{"pass", r.pass},
                {"degenerate", r.degenerate},
                {"universe_size", r.universe_size},
                {"pairs_checked", r.pairs_checked},
                {"warnings", r.warnings},
                {"violations", r.witnesses}};
}

std::string report_summary(const cla::Report& r) {
    std::string out = r.pass ? "PASS" : "FAIL";
    if (!r.pass && !r.witnesses.empty()) out += ": " + r.witnesses.front();
    if (r.degenerate) out += " (degenerate)";
    out += "\n";
    out += "universe size: " + std::to_string(r.universe_size) + "\n";
    out += "pairs checked: " + std::to_string(r.pairs_checked) + "\n";
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    for (const auto& w : r.witnesses) out += "violation: " + w + "\n";
    return out;
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::uint64_t cap_tests = cla::kDefaultEnumerationCap;
    std::uint64_t cap_universe = cla::kDefaultUniverseCap;
    std::string format = "text";
    std::string output;

    bool is_json() const { return format == "json"; }
};

int cmd_validate(const GlobalOpts& g, const std::string& model_path) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    std::vector<cla::Test> valid = cla::enumerate_valid_tests(m, g.cap_tests);
    std::vector<cla::Interaction> invalid;
    if (m.factor_count() >= 2) invalid = cla::invalid_interactions(m, 2);

    if (g.is_json()) {
        json j{{"model", m.name},
               {"k", m.factor_count()},
               {"valid_tests", valid.size()},
               {"invalid_2way", json::array()}};
        for (const auto& ia : invalid) j["invalid_2way"].push_back(cla::format_interaction(m, ia));
        write_output(g.output, j.dump(2) + "\n");
        return 0;
    }
    std::string out = "model: " + m.name + "\n";
    out += "k = " + std::to_string(m.factor_count()) + "\n";
    out += "valid tests = " + std::to_string(valid.size()) + "\n";
    out += "invalid 2-way interactions = " + std::to_string(invalid.size()) + "\n";
    for (const auto& ia : invalid) out += "  " + cla::format_interaction(m, ia) + "\n";
    write_output(g.output, out);
    return 0;
}

int cmd_gen_cca(const GlobalOpts& g, const std::string& model_path, int t) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    cla::CcaGenOptions options;
    options.enum_cap = g.cap_tests;
    cla::TestArray array = cla::generate_cca(m, t, g.seed, options);
    write_output(g.output, cla::serialize_array(array, m));
    return 0;
}

int cmd_gen_cla(const GlobalOpts& g, const std::string& model_path, int t, int runs) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    cla::CcaGenOptions gen_options;
    gen_options.enum_cap = g.cap_tests;
    cla::TestArray cca = cla::generate_cca(m, t + 1, g.seed, gen_options);

    cla::ReduceOptions reduce_options;
    reduce_options.runs = runs;
    reduce_options.enum_cap = g.cap_tests;
    auto [array, report] = cla::reduce_to_cla(m, cca, t, g.seed, reduce_options);

    cla::Report check = cla::verify_cla(m, array, cla::UniverseParams{1, t, true, true},
                                        g.cap_universe, g.cap_tests);
    if (!check.pass) {
        std::cerr << "internal error: reduced array failed CLA verification\n"
                  << report_summary(check);
        return 1;
    }
    if (g.is_json()) {
        json j{{"input_rows", report.input_rows},
               {"output_rows", report.output_rows},
               {"seed", report.seed},
               {"deleted_rows", report.deleted_rows}};
        std::cerr << j.dump() << "\n";
    } else {
        std::cerr << report.to_text();
    }
    write_output(g.output, cla::serialize_array(array, m));
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& model_path, const std::string& array_path,
               const std::string& kind, const cla::UniverseParams& params) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    cla::TestArray array = cla::parse_array(read_file(array_path), m);
    cla::Report report;
    if (kind == "cca") {
        report = cla::verify_cca(m, array, params.t, cla::ValidityBackend::Auto, g.cap_tests);
    } else if (kind == "cla") {
        report = cla::verify_cla(m, array, params, g.cap_universe, g.cap_tests);
    } else {
        report = cla::verify_la(m, array, params, g.cap_universe, g.cap_tests);
    }
    if (g.is_json())
        write_output(g.output, report_to_json(report).dump(2) + "\n");
    else
        write_output(g.output, report_summary(report));
    return report.pass ? 0 : 1;
}

int cmd_distinguish(const GlobalOpts& g, const std::string& model_path,
                    const cla::UniverseParams& params) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    auto pairs = cla::indistinguishable_pairs(m, params, g.cap_universe, g.cap_tests);
    if (g.is_json()) {
        json j = json::array();
        for (const auto& [a, b] : pairs)
            j.push_back({cla::format_interaction_set(m, a), cla::format_interaction_set(m, b)});
        write_output(g.output, json{{"indistinguishable_pairs", j}}.dump(2) + "\n");
        return 0;
    }
    std::string out = "indistinguishable pairs = " + std::to_string(pairs.size()) + "\n";
    for (const auto& [a, b] : pairs)
        out += "  " + cla::format_interaction_set(m, a) + " / " + cla::format_interaction_set(m, b) +
               "\n";
    write_output(g.output, out);
    return 0;
}

int cmd_locate(const GlobalOpts& g, const std::string& model_path, const std::string& array_path,
               const std::string& outcome_path, const cla::UniverseParams& params) {
    cla::SutModel m = cla::parse_model(read_file(model_path));
    cla::TestArray array = cla::parse_array(read_file(array_path), m);
    cla::OutcomeVector outcomes = cla::parse_outcomes(read_file(outcome_path), array);
    cla::LocateResult result =
        cla::locate_faults(m, array, outcomes, params, g.cap_universe, g.cap_tests);
    if (g.is_json()) {
        json classes = json::array();
        for (const auto& c : result.classes) {
            json members = json::array();
            for (const auto& ts : c.members) members.push_back(cla::format_interaction_set(m, ts));
            classes.push_back(members);
        }
        json j{{"explained", result.explained},
               {"failing_rows", result.failing_rows.indices()},
               {"classes", classes}};
        write_output(g.output, j.dump(2) + "\n");
    } else {
        write_output(g.output, cla::locate_result_to_text(m, array, result));
    }
    return result.explained ? 0 : 1;
}

int cmd_selftest(const GlobalOpts& g, int models) {
    cla::SelftestResult result = cla::run_selftest(models, g.seed);
    if (g.is_json()) {
        auto stats = [](const cla::PropertyStats& s) {
            return json{{"pass", s.pass()},
                        {"models", s.models},
                        {"checks", s.checks},
                        {"failures", s.failures}};
        };
        json j{{"pass", result.pass()},          {"subsumption", stats(result.subsumption)},
               {"la_equivalence", stats(result.la_equivalence)}, {"exhaustive_array", stats(result.exhaustive_array)},
               {"cca_to_cla", stats(result.cca_to_cla)}, {"strength_mode", stats(result.strength_mode)}};
        write_output(g.output, j.dump(2) + "\n");
    } else {
        write_output(g.output, result.to_text() + (result.pass() ? "PASS\n" : "FAIL\n"));
    }
    return result.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained locating array toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // let subcommands use the global options below

    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--cap-tests", g.cap_tests, "valid-test enumeration cap")->capture_default_str();
    app.add_option("--cap-universe", g.cap_universe, "interaction-set universe cap")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("-o,--output", g.output, "write primary output to a file instead of stdout");

    std::string model_path, array_path, outcome_path, kind = "cla";
    cla::UniverseParams params;
    int t = 2;
    int runs = 10;
    int models = 50;

    CLI::App* validate = app.add_subcommand("validate", "parse a model and report basic facts");
    validate->add_option("model", model_path, "model file")->required();

    CLI::App* gen_cca = app.add_subcommand("gen-cca", "generate a t-CCA");
    gen_cca->add_option("model", model_path, "model file")->required();
    gen_cca->add_option("--t", t, "coverage strength")->required();

    CLI::App* gen_cla = app.add_subcommand("gen-cla", "generate a (1bar,tbar)-CLA by CCA reduction");
    gen_cla->add_option("model", model_path, "model file")->required();
    gen_cla->add_option("--t", t, "locating strength")->required();
    gen_cla->add_option("--runs", runs, "reduction permutations to try")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "verify an array against a model");
    verify->add_option("model", model_path, "model file")->required();
    verify->add_option("array", array_path, "array file")->required();
    verify->add_option("--kind", kind, "cca, cla or la")
        ->check(CLI::IsMember({"cca", "cla", "la"}))
        ->capture_default_str();
    verify->add_option("--d", params.d, "number of faulty interaction sets");
    verify->add_option("--t", params.t, "interaction strength")->required();
    verify->add_flag("--bar-d", params.bar_d, "set sizes up to d");
    verify->add_flag("--bar-t", params.bar_t, "strengths up to t");

    CLI::App* distinguish = app.add_subcommand("distinguish", "list indistinguishable pairs");
    distinguish->add_option("model", model_path, "model file")->required();
    distinguish->add_option("--d", params.d, "set size");
    distinguish->add_option("--t", params.t, "interaction strength")->required();
    distinguish->add_flag("--bar-d", params.bar_d, "set sizes up to d");
    distinguish->add_flag("--bar-t", params.bar_t, "strengths up to t");

    CLI::App* locate = app.add_subcommand("locate", "localize faults from test outcomes");
    locate->add_option("model", model_path, "model file")->required();
    locate->add_option("array", array_path, "array file")->required();
    locate->add_option("outcomes", outcome_path, "outcome file (pass/fail per row)")->required();
    locate->add_option("--d", params.d, "number of faulty interaction sets");
    locate->add_option("--t", params.t, "interaction strength")->required();
    locate->add_flag("--bar-d", params.bar_d, "set sizes up to d");
    locate->add_flag("--bar-t", params.bar_t, "strengths up to t");

    CLI::App* selftest = app.add_subcommand("selftest", "run the property self-test suites");
    selftest->add_option("--models", models, "random models per suite")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(g, model_path);
        if (gen_cca->parsed()) return cmd_gen_cca(g, model_path, t);
        if (gen_cla->parsed()) return cmd_gen_cla(g, model_path, t, runs);
        if (verify->parsed()) return cmd_verify(g, model_path, array_path, kind, params);
        if (distinguish->parsed()) return cmd_distinguish(g, model_path, params);
        if (locate->parsed()) return cmd_locate(g, model_path, array_path, outcome_path, params);
        if (selftest->parsed()) return cmd_selftest(g, models);
    } catch (const cla::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cla::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cla::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
