#pragma once

/**
 * @file cli.hpp
 * @brief Command implementations behind the `tgait` executable.
 *
 * Kept in the library so the commands can be exercised without spawning a
 * process.  Every command takes a CliConfig and returns its result; writing
 * to stdout and mapping errors to exit codes is left to the executable.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tropgait/diagram.hpp"
#include "tropgait/io.hpp"

namespace tropgait::cli {

enum class Command { analyze, simulate, matrices, diagram };
enum class Format { json, csv, ascii };

struct CliConfig {
    Command command = Command::analyze;
    std::string input;  ///< path, "-" for stdin; empty when `dsl` is used
    std::string dsl;
    Format format = Format::json;
    std::uint64_t seed = 0;
    double quantum = default_quantum;
    std::size_t steps = 10;
    std::string out_dir;
    double tolerance = default_tolerance;
    GaitParams params{1.0, 3.0, 2.0};  ///< timing for DSL input
    std::string initial = "eigen";     ///< eigen | zeros | random
    bool include_matrices = false;
};

enum ExitCode : int { ok = 0, validation_error = 2, constraint_violation = 3, io_failure = 4 };

inline int exit_code_for(errc code) {
    switch (code) {
        case errc::io_error: return io_failure;
        case errc::consistency_failure: return constraint_violation;
        default: return validation_error;
    }
}

/// TG_TOLERANCE, when set to a non-negative number, replaces the comparison tolerance.
inline double tolerance_from_env(double fallback) {
    const char* raw = std::getenv("TG_TOLERANCE");
    if (raw == nullptr || *raw == '\0') return fallback;
    try {
        std::size_t used = 0;
        const double tol = std::stod(raw, &used);
        if (used != std::string(raw).size() || tol < 0.0) throw std::invalid_argument(raw);
        return tol;
    } catch (const std::exception&) {
        throw error(errc::parse_error, std::string("TG_TOLERANCE is not a non-negative number: ") + raw);
    }
}

inline std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out || !(out << content)) throw error(errc::io_error, "cannot write " + path.string());
}

/// Input resolved to either a single gait or a full simulation plan.
struct LoadedInput {
    GaitConfig gait;
    std::optional<PlanConfig> plan;
};

inline LoadedInput load_input(const CliConfig& cfg) {
    if (!cfg.dsl.empty()) return {parse_gait_spec(cfg.dsl, cfg.params), std::nullopt};
    if (cfg.input.empty()) throw error(errc::parse_error, "either --input or --dsl is required");
    const std::string text = read_input(cfg.input);
    if (detail::looks_like_json(text)) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& ex) {
            throw error(errc::parse_error, ex.what());
        }
        if (j.contains("segments")) {
            PlanConfig plan = plan_from_json(j);
            const auto& first = plan.plan.segments.front();
            return {{first.gait, first.params}, std::move(plan)};
        }
        return {gait_config_from_json(j, cfg.params), std::nullopt};
    }
    return {parse_gait_spec(text, cfg.params), std::nullopt};
}

inline json params_json(const GaitParams& p) {
    return json{{"tau_f", p.tau_f}, {"tau_g", p.tau_g}, {"tau_delta", p.tau_delta}};
}

inline json warnings_json(const std::vector<Warning>& warnings) {
    json out = json::array();
    for (auto w : warnings) out.push_back(to_string(w));
    return out;
}

inline json matrices_json(const GaitConfig& g) {
    const GaitMatrices mats = system_matrix(g.gait, g.params);
    json out{{"P", mats.P}, {"Q", mats.Q}, {"C_bar", mats.C_bar}, {"A0", mats.A0}, {"A1", mats.A1},
             {"A0_star", mats.A0_star}, {"A", mats.A}, {"A_bar", mats.A_bar}};
    const Gait normal = normal_form(g.gait);
    const auto blocks = structural_blocks(normal, g.params);
    out["normal_gait"] = to_dsl(normal);
    out["Delta"] = blocks.Delta;
    out["DeltaPrime"] = blocks.DeltaPrime;
    out["V"] = blocks.V;
    return out;
}

/**
 * Eigenvalue (closed form and Karp), eigenvector, irreducibility, assumption
 * flags, critical graph and coupling parameters of one gait.  A closed-form /
 * Karp mismatch under A1 raises consistency_failure.
 */
inline json run_analyze(const CliConfig& cfg) {
    const GaitConfig g = load_input(cfg).gait;
    const GaitMatrices mats = system_matrix(g.gait, g.params);
    const Assumptions assumptions = check_assumptions(g.gait, g.params);
    const bool irreducible = is_irreducible(mats.A);
    const Scalar karp = max_cycle_mean(mats.A);

    json report{{"gait", to_dsl(g.gait)},
                {"n", g.gait.leg_count()},
                {"m", g.gait.group_count()},
                {"params", params_json(g.params)},
                {"normal", is_normal(g.gait)},
                {"assumptions", {{"a1", assumptions.a1}, {"a2", assumptions.a2}}},
                {"warnings", warnings_json(mats.warnings)},
                {"irreducible", irreducible}};

    json eigen{{"karp", karp}, {"closed_form", nullptr}};
    if (assumptions.a1) {
        const Eigenpair pair = closed_form_eigenpair(g.gait, g.params);
        if (!approx_equal(pair.lambda, karp, cfg.tolerance))
            throw error(errc::consistency_failure,
                        "closed-form eigenvalue " + to_string(pair.lambda) + " differs from Karp " + to_string(karp));
        eigen["closed_form"] = pair.lambda;
        report["eigenvector"] = pair.v.entries();
        report["eigenpair_verified"] = verify_eigenpair(mats.A, pair.lambda, pair.v, cfg.tolerance);
    } else {
        report["eigenvector"] = nullptr;
        report["eigenpair_verified"] = nullptr;
    }
    report["eigenvalue"] = eigen;

    if (irreducible) {
        report["critical_graph"] = to_json(critical_graph(mats.A, cfg.tolerance));
        report["coupling"] = to_json(coupling_params(mats.A, std::nullopt, cfg.tolerance));
    } else {
        report["critical_graph"] = nullptr;
        report["coupling"] = nullptr;
    }
    if (cfg.include_matrices) report["matrices"] = matrices_json(g);
    return report;
}

inline json run_matrices(const CliConfig& cfg) { return matrices_json(load_input(cfg).gait); }

struct SimulationOutput {
    PlanConfig plan;
    Trajectory trajectory;
    LegSchedule schedule;
    json summary;
    std::size_t violation_count = 0;
};

inline EventState random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 20);
    EventState x{0, std::vector<double>(n), std::vector<double>(n)};
    // touchdown never precedes its own liftoff
    for (std::size_t i = 0; i < n; ++i) {
        x.l[i] = dist(rng);
        x.t[i] = x.l[i] + dist(rng) / 4;
    }
    return x;
}

inline SimulationOutput simulate_from_config(const CliConfig& cfg) {
    LoadedInput input = load_input(cfg);
    SimulationOutput out;
    if (input.plan) {
        out.plan = std::move(*input.plan);
    } else {
        out.plan.plan.segments.push_back({input.gait.gait, input.gait.params, cfg.steps});
    }
    if (cfg.initial == "zeros") out.plan.initial = InitialState::zeros;
    else if (cfg.initial == "random") out.plan.initial = random_state(out.plan.plan.leg_count(), cfg.seed);
    else if (cfg.initial != "eigen") throw error(errc::parse_error, "--initial must be eigen, zeros or random");

    const SimulationPlan& plan = out.plan.plan;
    const EventState x0 = std::holds_alternative<EventState>(out.plan.initial)
                              ? std::get<EventState>(out.plan.initial)
                              : initial_state(plan, std::get<InitialState>(out.plan.initial));
    out.trajectory = simulate(plan, x0);
    out.schedule = extract_schedule(out.trajectory);

    json segments = json::array();
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
        const Segment& seg = plan.segments[s];
        const std::size_t start = plan.segment_start(s);
        const std::span<const EventState> span(out.trajectory.data() + start, seg.steps + 1);
        std::vector<Disturbance> local;
        for (const auto& d : plan.disturbances)
            if (d.step > start && d.step <= start + seg.steps) local.push_back({d.step - start, d.index, d.delay});
        const ScheduleReport verification = verify_schedule(span, seg.gait, seg.params, local, cfg.tolerance);
        out.violation_count += verification.violations.size();

        const Scalar lambda = check_assumptions(seg.gait, seg.params).a1
                                  ? closed_form_eigenpair(seg.gait, seg.params).lambda
                                  : max_cycle_mean(system_matrix(seg.gait, seg.params).A);
        const auto steady = detect_steady_state(span, lambda, cfg.tolerance);
        segments.push_back(json{{"index", s},
                                {"gait", to_dsl(seg.gait)},
                                {"params", params_json(seg.params)},
                                {"first_state", start},
                                {"steps", seg.steps},
                                {"lambda", lambda},
                                {"steady_after", steady ? json(*steady) : json(nullptr)},
                                {"verification", to_json(verification)}});
    }
    out.summary = json{{"n", plan.leg_count()},
                       {"total_steps", plan.total_steps()},
                       {"segments", segments},
                       {"violation_count", out.violation_count}};
    return out;
}

inline SimulationOutput run_simulate(const CliConfig& cfg) {
    SimulationOutput out = simulate_from_config(cfg);
    if (!cfg.out_dir.empty()) {
        const std::filesystem::path dir(cfg.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw error(errc::io_error, "cannot create " + dir.string());
        write_file(dir / "trajectory.csv", trajectory_csv(out.trajectory));
        write_file(dir / "trajectory.json", to_json(out.trajectory).dump(2) + "\n");
        write_file(dir / "schedule.json", to_json(out.schedule).dump(2) + "\n");
        write_file(dir / "report.json", out.summary.dump(2) + "\n");
        write_file(dir / "diagram.txt", render_diagram(out.schedule, cfg.quantum));
    }
    return out;
}

inline std::string run_diagram(const CliConfig& cfg) {
    return render_diagram(simulate_from_config(cfg).schedule, cfg.quantum);
}

}  // namespace tropgait::cli
