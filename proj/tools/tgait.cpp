// tgait: analyze and simulate max-plus gait models from the command line.
//
//   tgait analyze  --dsl "{1,4}<{2,3}" --tau-f 1 --tau-g 3 --tau-delta 2
//   tgait simulate --input plan.json --steps 10 --format csv --out run/
//   tgait matrices --input trot.json
//   tgait diagram  --dsl "{1}<{2}" --steps 8 --quantum 0.5
//
// Exit codes: 0 ok, 2 validation error, 3 constraint violation, 4 IO.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tropgait/cli.hpp"

namespace {

using tropgait::cli::CliConfig;
using tropgait::cli::Command;
using tropgait::cli::Format;

void add_common_options(CLI::App* sub, CliConfig& cfg) {
    auto* input = sub->add_option("--input", cfg.input, "Gait config or plan JSON (path, or - for stdin)");
    auto* dsl = sub->add_option("--dsl", cfg.dsl, "Gait DSL string, e.g. \"{1,4}<{2,3}\"");
    input->excludes(dsl);
    sub->add_option("--tau-f", cfg.params.tau_f, "Swing time for DSL input")->capture_default_str();
    sub->add_option("--tau-g", cfg.params.tau_g, "Stance time for DSL input")->capture_default_str();
    sub->add_option("--tau-delta", cfg.params.tau_delta, "Double-stance time for DSL input")->capture_default_str();
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}, {"ascii", Format::ascii}},
            CLI::ignore_case));
}

void add_simulation_options(CLI::App* sub, CliConfig& cfg) {
    sub->add_option("--steps", cfg.steps, "Steps for a single-gait simulation")->capture_default_str();
    sub->add_option("--quantum", cfg.quantum, "Diagram time quantum")->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "Directory for trajectory, schedule, report and diagram files");
    sub->add_option("--initial", cfg.initial, "Initial state: eigen, zeros or random")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for --initial random")->capture_default_str();
}

std::string analyze_text(const tropgait::json& r) {
    std::ostringstream os;
    os << "gait         " << r["gait"].get<std::string>() << "\n"
       << "lambda       " << r["eigenvalue"]["karp"].dump() << " (closed form " << r["eigenvalue"]["closed_form"].dump()
       << ")\n"
       << "eigenvector  " << r["eigenvector"].dump() << "\n"
       << "irreducible  " << r["irreducible"].dump() << "\n"
       << "A1, A2       " << r["assumptions"]["a1"].dump() << ", " << r["assumptions"]["a2"].dump() << "\n";
    if (!r["critical_graph"].is_null())
        os << "critical     " << r["critical_graph"]["critical_nodes"].dump() << " in "
           << r["critical_graph"]["scc_count"].dump() << " SCC(s)\n";
    if (!r["coupling"].is_null())
        os << "coupling     c=" << r["coupling"]["cyclicity"].dump() << " k0=" << r["coupling"]["coupling_time"].dump()
           << "\n";
    return os.str();
}

int run(const CliConfig& base) {
    CliConfig cfg = base;
    cfg.tolerance = tropgait::cli::tolerance_from_env(cfg.tolerance);
    switch (cfg.command) {
        case Command::analyze: {
            const auto report = tropgait::cli::run_analyze(cfg);
            std::cout << (cfg.format == Format::ascii ? analyze_text(report) : report.dump(2) + "\n");
            return tropgait::cli::ok;
        }
        case Command::matrices:
            std::cout << tropgait::cli::run_matrices(cfg).dump(2) << "\n";
            return tropgait::cli::ok;
        case Command::simulate: {
            const auto out = tropgait::cli::run_simulate(cfg);
            if (cfg.format == Format::csv) std::cout << tropgait::trajectory_csv(out.trajectory);
            else if (cfg.format == Format::ascii) std::cout << tropgait::render_diagram(out.schedule, cfg.quantum);
            else std::cout << out.summary.dump(2) << "\n";
            if (out.violation_count > 0) {
                std::cerr << "tgait: " << out.violation_count << " schedule constraint violation(s)\n";
                return tropgait::cli::constraint_violation;
            }
            return tropgait::cli::ok;
        }
        case Command::diagram:
            std::cout << tropgait::cli::run_diagram(cfg);
            return tropgait::cli::ok;
    }
    return tropgait::cli::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-plus gait analysis and simulation"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto* analyze = app.add_subcommand("analyze", "Eigenstructure, critical graph and coupling time of a gait");
    add_common_options(analyze, cfg);
    analyze->add_flag("--matrices", cfg.include_matrices, "Include matrix dumps in the report");
    analyze->callback([&] { cfg.command = Command::analyze; });

    auto* simulate = app.add_subcommand("simulate", "Simulate touchdown/liftoff events and verify the schedule");
    add_common_options(simulate, cfg);
    add_simulation_options(simulate, cfg);
    simulate->callback([&] { cfg.command = Command::simulate; });

    auto* matrices = app.add_subcommand("matrices", "Dump the system matrices of a gait");
    add_common_options(matrices, cfg);
    matrices->callback([&] { cfg.command = Command::matrices; });

    auto* diagram = app.add_subcommand("diagram", "Render the Hildebrand diagram of a simulated run");
    add_common_options(diagram, cfg);
    add_simulation_options(diagram, cfg);
    diagram->callback([&] { cfg.command = Command::diagram; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tropgait::cli::validation_error;
    }

    try {
        return run(cfg);
    } catch (const tropgait::error& e) {
        std::cerr << "tgait: " << e.what() << "\n";
        return tropgait::cli::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "tgait: " << e.what() << "\n";
        return tropgait::cli::validation_error;
    }
}
