#pragma once

/**
 * @file io.hpp
 * @brief JSON / CSV encodings of matrices, gait configs, plans, reports and trajectories.
 *
 * Matrix:       {"rows":R,"cols":C,"entries":[...]}   row-major, eps as "-inf"
 * Gait config:  {"n":4,"gait":[[1,4],[2,3]],"tau_f":1.0,"tau_g":3.0,"tau_delta":2.0}
 * Plan:         {"n":4,"segments":[{"gait":..,"tau_f":..,"tau_g":..,"tau_delta":..,"steps":5}],
 *                "disturbances":[{"step":3,"event":"touchdown","leg":1,"delay":10.0}],
 *                "initial":"eigen" | "zeros" | [x_1, ..., x_2n]}
 *
 * Node indices in graph reports are 0-based positions in x = [t; l]; leg
 * numbers are 1-based everywhere.
 */

#include <cctype>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tropgait/dsl.hpp"
#include "tropgait/gait.hpp"
#include "tropgait/maxplus.hpp"
#include "tropgait/simulation.hpp"
#include "tropgait/spectral.hpp"

namespace tropgait {

using json = nlohmann::json;

inline void to_json(json& j, const Scalar& s) {
    if (s.is_epsilon()) j = "-inf";
    else j = s.value();
}

inline void from_json(const json& j, Scalar& s) {
    if (j.is_string()) {
        if (j.get<std::string>() != "-inf") throw error(errc::parse_error, "scalar strings must be \"-inf\"");
        s = eps;
    } else if (j.is_number()) {
        s = Scalar{j.get<double>()};
    } else {
        throw error(errc::parse_error, "scalar must be a number or \"-inf\"");
    }
}

inline void to_json(json& j, const Matrix& m) {
    j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

inline void from_json(const json& j, Matrix& m) {
    try {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        m = Matrix(rows, cols, j.at("entries").get<std::vector<Scalar>>());
    } catch (const json::exception& ex) {
        throw error(errc::parse_error, std::string("matrix: ") + ex.what());
    }
}

struct GaitConfig {
    Gait gait;
    GaitParams params;
};

inline json gait_config_to_json(const GaitConfig& cfg) {
    return json{{"n", cfg.gait.leg_count()},
                {"gait", cfg.gait.groups()},
                {"tau_f", cfg.params.tau_f},
                {"tau_g", cfg.params.tau_g},
                {"tau_delta", cfg.params.tau_delta}};
}

namespace detail {

inline GaitParams params_from_json(const json& j, const GaitParams& fallback) {
    GaitParams p = fallback;
    if (j.contains("tau_f")) p.tau_f = j.at("tau_f").get<double>();
    if (j.contains("tau_g")) p.tau_g = j.at("tau_g").get<double>();
    if (j.contains("tau_delta")) p.tau_delta = j.at("tau_delta").get<double>();
    return p;
}

inline Gait gait_from_json(const json& j, std::size_t fallback_n = 0) {
    const json& groups = j.at("gait");
    if (groups.is_string()) return parse_gait_dsl(groups.get<std::string>());
    auto legs = groups.get<std::vector<LegGroup>>();
    const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : fallback_n;
    return n ? Gait(n, std::move(legs)) : Gait(std::move(legs));
}

template <typename F>
auto with_json_errors(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& ex) {
        throw error(errc::parse_error, ex.what());
    }
}

inline bool looks_like_json(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size() || text[i] != '{') return false;
    ++i;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    return i < text.size() && (text[i] == '"' || text[i] == '}');
}

}  // namespace detail

inline GaitConfig gait_config_from_json(const json& j, const GaitParams& fallback = {}) {
    return detail::with_json_errors([&] {
        return GaitConfig{detail::gait_from_json(j), detail::params_from_json(j, fallback)};
    });
}

/// Accepts either a gait config JSON document or a DSL string; DSL input takes
/// its timing from `params`.
inline GaitConfig parse_gait_spec(std::string_view text, const GaitParams& params = {}) {
    if (detail::looks_like_json(text)) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& ex) {
            throw error(errc::parse_error, ex.what());
        }
        return gait_config_from_json(j, params);
    }
    return {parse_gait_dsl(text), params};
}

struct PlanConfig {
    SimulationPlan plan;
    /// "eigen", "zeros" or an explicit state
    std::variant<InitialState, EventState> initial = InitialState::eigenvector;
};

inline PlanConfig plan_from_json(const json& j) {
    return detail::with_json_errors([&] {
        PlanConfig out;
        const std::size_t n = j.value("n", std::size_t{0});
        for (const auto& seg : j.at("segments")) {
            out.plan.segments.push_back(
                {detail::gait_from_json(seg, n), detail::params_from_json(seg, {}), seg.at("steps").get<std::size_t>()});
        }
        const std::size_t legs = out.plan.leg_count();
        if (j.contains("disturbances")) {
            for (const auto& d : j.at("disturbances")) {
                const auto event = d.value("event", std::string("touchdown"));
                if (event != "touchdown" && event != "liftoff")
                    throw error(errc::parse_error, "disturbance event must be touchdown or liftoff");
                const auto leg = d.at("leg").get<std::size_t>();
                if (leg < 1 || leg > legs) throw error(errc::bad_index, "disturbance leg out of range");
                out.plan.disturbances.push_back(
                    {d.at("step").get<std::size_t>(), leg - 1 + (event == "liftoff" ? legs : 0),
                     d.at("delay").get<double>()});
            }
        }
        if (j.contains("initial")) {
            const json& init = j.at("initial");
            if (init.is_string()) {
                const auto kind = init.get<std::string>();
                if (kind == "eigen") out.initial = InitialState::eigenvector;
                else if (kind == "zeros") out.initial = InitialState::zeros;
                else throw error(errc::parse_error, "initial must be \"eigen\", \"zeros\" or a state vector");
            } else {
                out.initial = EventState::from_stacked(Matrix::column(init.get<std::vector<double>>()), 0);
            }
        }
        validate_plan(out.plan);
        return out;
    });
}

inline json to_json(const Arc& a) {
    return json{{"source", a.source}, {"target", a.target}, {"weight", a.weight}};
}

inline json to_json(const CriticalGraphReport& r) {
    json arcs = json::array();
    for (const auto& a : r.critical_arcs) arcs.push_back(to_json(a));
    json membership = json::array();
    for (const auto& m : r.scc_membership) membership.push_back(m ? json(*m) : json(nullptr));
    return json{{"eigenvalue", r.eigenvalue},
                {"critical_nodes", r.critical_nodes},
                {"critical_arcs", arcs},
                {"scc_count", r.scc_count},
                {"scc_membership", membership}};
}

inline json to_json(const CouplingReport& r) {
    return json{{"eigenvalue", r.eigenvalue},
                {"cyclicity", r.cyclicity},
                {"coupling_time", r.coupling_time},
                {"power_cap_hit", r.power_cap_hit}};
}

inline json to_json(const Trajectory& traj) {
    json out = json::array();
    for (const auto& x : traj) out.push_back(json{{"k", x.k}, {"t", x.t}, {"l", x.l}});
    return out;
}

inline json to_json(const LegSchedule& s) {
    json legs = json::array();
    for (std::size_t i = 0; i < s.legs.size(); ++i) {
        json phases = json::array();
        for (const auto& p : s.legs[i])
            phases.push_back(json{{"phase", p.phase == Phase::swing ? "swing" : "stance"},
                                  {"begin", p.span.begin},
                                  {"end", p.span.end}});
        legs.push_back(json{{"leg", i + 1}, {"phases", phases}});
    }
    return json{{"legs", legs}};
}

inline json to_json(const ScheduleReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back(json{{"constraint", to_string(v.constraint)},
                                  {"step", v.step},
                                  {"leg", v.leg},
                                  {"expected", v.expected},
                                  {"actual", v.actual}});
    return json{{"steps_checked", r.steps_checked}, {"violation_count", r.violations.size()},
                {"violations", violations}};
}

/// Header k,t1..tn,l1..ln, one row per state.
inline std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    const std::size_t n = traj.empty() ? 0 : traj.front().leg_count();
    os << 'k';
    for (std::size_t i = 1; i <= n; ++i) os << ",t" << i;
    for (std::size_t i = 1; i <= n; ++i) os << ",l" << i;
    os << '\n';
    for (const auto& x : traj) {
        os << x.k;
        for (double v : x.t) os << ',' << v;
        for (double v : x.l) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

}  // namespace tropgait
