// itsp command line: solvers for LP and TSP instances with interval or
// probabilistic coefficient uncertainty.
//
// Subcommands: solve, check-maximal, enumerate-maximal, oracle, gen.
// Exit codes: 0 success, 1 infeasible (or oracle disagreement), 2 input
// error, 3 numeric failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "itsp/errors.hpp"
#include "itsp/io.hpp"

namespace {

using itsp::io::Criterion;
using itsp::io::MaximalVariant;
using itsp::io::OutputFormat;
using itsp::io::Report;
using itsp::io::RunConfig;

void emit(const Report& report, const RunConfig& cfg) {
    const std::string text = itsp::io::render_report(report, cfg.format);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw itsp::ValidationError("cannot open output file: " + cfg.out_path);
        out << text;
    }
}

void print_notes_on_error(const Report& report) {
    for (const auto& note : report.notes) std::cerr << note << "\n";
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--input,-i", cfg.input_path, "instance file (JSON)")->required();
    cmd->add_option("--seed", cfg.seed, "random seed for sampling paths");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo samples per estimate");
    std::map<std::string, OutputFormat> formats{{"human", OutputFormat::human},
                                                {"json", OutputFormat::json},
                                                {"csv", OutputFormat::csv}};
    cmd->add_option("--format", cfg.format, "report format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
    std::map<std::string, itsp::TspMethod> methods{{"bruteforce", itsp::TspMethod::bruteforce},
                                                   {"held_karp", itsp::TspMethod::held_karp}};
    cmd->add_option("--method", cfg.tsp_method, "crisp TSP method")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    cmd->add_option("--penalty", cfg.penalty_override, "override the instance penalty value");
}

int dispatch(const std::function<int(const RunConfig&, Report&)>& fn, const RunConfig& cfg) {
    Report report;
    const int code = fn(cfg, report);
    emit(report, cfg);
    if (code == itsp::io::kExitInfeasible) print_notes_on_error(report);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solvers for LP and TSP under interval or probabilistic uncertainty"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::map<std::string, Criterion> criteria{{"maximin", Criterion::maximin},
                                              {"maximal", Criterion::maximal},
                                              {"expected", Criterion::expected},
                                              {"all", Criterion::all}};
    std::map<std::string, MaximalVariant> variants{{"hypograph", MaximalVariant::hypograph},
                                                   {"edge", MaximalVariant::edge},
                                                   {"both", MaximalVariant::both}};

    auto* solve = app.add_subcommand("solve", "solve an instance under a chosen criterion");
    add_common_options(solve, cfg);
    solve->add_option("--criterion", cfg.criterion, "maximin | maximal | expected | all")
        ->transform(CLI::CheckedTransformer(criteria, CLI::ignore_case));
    solve->add_option("--maximal-variant", cfg.maximal_variant, "hypograph | edge | both")
        ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));

    auto* check = app.add_subcommand("check-maximal", "test one tour or decision for maximality");
    add_common_options(check, cfg);
    check->add_option("--tour", cfg.tour, "tour as comma-separated cities, e.g. 1,3,2,4")
        ->delimiter(',');
    check->add_option("--x", cfg.decision, "decision vector for lpuu instances")->delimiter(',');

    auto* enumerate = app.add_subcommand("enumerate-maximal", "list maximal tour sets");
    add_common_options(enumerate, cfg);
    enumerate->add_option("--maximal-variant", cfg.maximal_variant, "hypograph | edge | both")
        ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));

    auto* oracle_cmd = app.add_subcommand("oracle", "cross-check closed forms against brute force");
    add_common_options(oracle_cmd, cfg);

    itsp::io::GenConfig gen_cfg;
    auto* gen = app.add_subcommand("gen", "generate a random instance document");
    gen->add_option("--kind", gen_cfg.kind, "interval | dist | crisp");
    auto* opt_n = gen->add_option("--n", gen_cfg.n, "city count (utsp) or variable count (lpuu)");
    auto* opt_m = gen->add_option("--m", gen_cfg.m, "constraint count; selects an lpuu instance");
    gen->add_option("--seed", gen_cfg.seed, "generator seed");
    gen->add_option("--spread", gen_cfg.spread, "half-width cap for generated uncertainty");
    std::string gen_out;
    gen->add_option("--out", gen_out, "write the document to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints the message or requested help
        return code == 0 ? 0 : itsp::io::kExitInputError;
    }

    try {
        if (solve->parsed()) return dispatch(itsp::io::run_solve, cfg);
        if (check->parsed()) return dispatch(itsp::io::run_check_maximal, cfg);
        if (enumerate->parsed()) return dispatch(itsp::io::run_enumerate_maximal, cfg);
        if (oracle_cmd->parsed()) return dispatch(itsp::io::run_oracle, cfg);
        if (gen->parsed()) {
            if (!*opt_n && !*opt_m) throw itsp::ValidationError("gen: provide --n (and --m for lpuu)");
            gen_cfg.utsp = !*opt_m;
            const std::string doc = itsp::io::generate_instance(gen_cfg);
            if (gen_out.empty()) {
                std::cout << doc;
            } else {
                std::ofstream out(gen_out);
                if (!out) throw itsp::ValidationError("cannot open output file: " + gen_out);
                out << doc;
            }
            return itsp::io::kExitOk;
        }
    } catch (const itsp::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return itsp::io::kExitNumericFailure;
    } catch (const itsp::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return itsp::io::kExitInputError;
    } catch (const itsp::CapError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return itsp::io::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return itsp::io::kExitInputError;
    }
    return itsp::io::kExitOk;
}
