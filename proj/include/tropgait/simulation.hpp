#pragma once

/**
 * @file simulation.hpp
 * @brief Discrete-event trajectories x(k) = A (x) x(k-1), gait switching,
 *        disturbances and leg schedules.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropgait/gait.hpp"
#include "tropgait/maxplus.hpp"
#include "tropgait/spectral.hpp"

namespace tropgait {

struct EventState {
    std::size_t k = 0;
    std::vector<double> t;  ///< touchdown times, one per leg
    std::vector<double> l;  ///< liftoff times, one per leg

    std::size_t leg_count() const noexcept { return t.size(); }

    /// x = [t; l]
    Matrix stacked() const {
        std::vector<Scalar> x;
        x.reserve(t.size() + l.size());
        x.insert(x.end(), t.begin(), t.end());
        x.insert(x.end(), l.begin(), l.end());
        return Matrix::column(x);
    }

    static EventState from_stacked(const Matrix& x, std::size_t k) {
        if (x.cols() != 1 || x.rows() % 2 != 0) throw error(errc::dimension_mismatch, "state must be 2n x 1");
        if (!x.all_finite()) throw error(errc::dimension_mismatch, "state must be finite");
        const std::size_t n = x.rows() / 2;
        EventState s{k, std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            s.t[i] = x[i].value();
            s.l[i] = x[i + n].value();
        }
        return s;
    }

    friend bool operator==(const EventState&, const EventState&) = default;
};

using Trajectory = std::vector<EventState>;

/// x(k) = A (x) x(k-1)
inline EventState step(const Matrix& a, const EventState& x) {
    if (!a.is_square() || a.rows() != 2 * x.leg_count() || x.l.size() != x.t.size())
        throw error(errc::dimension_mismatch, "system matrix must be 2n x 2n for n legs");
    return EventState::from_stacked(a * x.stacked(), x.k + 1);
}

struct Segment {
    Gait gait;
    GaitParams params;
    std::size_t steps = 0;
};

/// Postpones one event computed at global step `step` by `delay` time units.
struct Disturbance {
    std::size_t step = 0;
    std::size_t index = 0;  ///< 0-based position in x = [t; l]
    double delay = 0.0;
};

struct SimulationPlan {
    std::vector<Segment> segments;
    std::vector<Disturbance> disturbances;

    std::size_t leg_count() const { return segments.empty() ? 0 : segments.front().gait.leg_count(); }

    std::size_t total_steps() const {
        std::size_t total = 0;
        for (const auto& s : segments) total += s.steps;
        return total;
    }

    /// Index of the state a segment starts from; the segment's states are
    /// [segment_start(s), segment_start(s) + steps] in the trajectory.
    std::size_t segment_start(std::size_t s) const {
        std::size_t start = 0;
        for (std::size_t i = 0; i < s; ++i) start += segments.at(i).steps;
        return start;
    }
};

inline void validate_plan(const SimulationPlan& plan) {
    if (plan.segments.empty()) throw error(errc::invalid_plan, "plan has no segments");
    const std::size_t n = plan.leg_count();
    for (const auto& s : plan.segments)
        if (s.gait.leg_count() != n) throw error(errc::invalid_plan, "segments disagree on leg count");
    for (const auto& d : plan.disturbances) {
        if (d.delay < 0.0)
            throw error(errc::advancing_disturbance, "events can be postponed, never advanced");
        if (d.index >= 2 * n) throw error(errc::invalid_plan, "disturbance index out of range");
        if (d.step < 1 || d.step > plan.total_steps())
            throw error(errc::invalid_plan, "disturbance step outside the plan");
    }
}

enum class InitialState { eigenvector, zeros };

/// Closed-form eigenvector of the first segment, or all zeros.
inline EventState initial_state(const SimulationPlan& plan, InitialState kind = InitialState::eigenvector) {
    validate_plan(plan);
    const std::size_t n = plan.leg_count();
    if (kind == InitialState::zeros) return {0, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    const auto& first = plan.segments.front();
    return EventState::from_stacked(closed_form_eigenpair(first.gait, first.params).v, 0);
}

namespace detail {

/// Delay vector u for step k: u_i = [A x(k-1)]_i + delay for each disturbed i.
inline Matrix disturbance_input(const std::vector<Disturbance>& disturbances, std::size_t k,
                                const Matrix& nominal) {
    Matrix u(nominal.rows(), 1);
    for (const auto& d : disturbances)
        if (d.step == k) u(d.index, 0) = oplus(u(d.index, 0), otimes(nominal[d.index], Scalar{d.delay}));
    return u;
}

}  // namespace detail

/**
 * Runs every segment with its own system matrix; a gait switch takes effect at
 * the step boundary.  A disturbance enters the implicit recursion as an extra
 * lower bound, x(k) = A0 x(k) (+) A1 x(k-1) (+) u(k), so it propagates to
 * events synchronized within the same step.
 */
inline Trajectory simulate(const SimulationPlan& plan, const EventState& x0) {
    validate_plan(plan);
    if (x0.leg_count() != plan.leg_count() || x0.l.size() != x0.t.size())
        throw error(errc::dimension_mismatch, "initial state leg count");

    Trajectory traj{x0};
    traj.front().k = 0;
    std::size_t k = 0;
    for (const auto& segment : plan.segments) {
        const GaitMatrices mats = system_matrix(segment.gait, segment.params);
        for (std::size_t s = 0; s < segment.steps; ++s) {
            ++k;
            Matrix x = mats.A * traj.back().stacked();
            const Matrix u = detail::disturbance_input(plan.disturbances, k, x);
            if (!u.all_epsilon()) x = x + mats.A0_star * u;
            traj.push_back(EventState::from_stacked(x, k));
        }
    }
    return traj;
}

/// Smallest index k (relative to the span) with x(j+1) = lambda (x) x(j) for
/// every j >= k in the span.
inline std::optional<std::size_t> detect_steady_state(std::span<const EventState> traj, Scalar lambda,
                                                      double tol = 0.0) {
    if (traj.empty()) return std::nullopt;
    std::size_t k = traj.size() - 1;
    while (k > 0 && approx_equal(traj[k].stacked(), lambda * traj[k - 1].stacked(), tol)) --k;
    return k == traj.size() - 1 && traj.size() > 1 ? std::optional<std::size_t>{} : std::optional{k};
}

struct Interval {
    double begin = 0.0;
    double end = 0.0;

    double length() const noexcept { return end - begin; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Phase { swing, stance };

struct PhaseInterval {
    Phase phase;
    Interval span;
    friend bool operator==(const PhaseInterval&, const PhaseInterval&) = default;
};

/// Alternating swing/stance intervals per leg, in time order.
struct LegSchedule {
    std::vector<std::vector<PhaseInterval>> legs;

    std::vector<Interval> intervals(std::size_t leg, Phase phase) const {
        std::vector<Interval> out;
        for (const auto& p : legs.at(leg))
            if (p.phase == phase) out.push_back(p.span);
        return out;
    }
};

/// swing [l(k), t(k)] then stance [t(k), l(k+1)] for every step in the span.
inline LegSchedule extract_schedule(std::span<const EventState> traj) {
    if (traj.empty()) throw error(errc::invalid_plan, "empty trajectory");
    const std::size_t n = traj.front().leg_count();
    LegSchedule schedule{std::vector<std::vector<PhaseInterval>>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto& x = traj[k];
            if (k + 1 < traj.size() && (traj[k + 1].t[i] < x.t[i] || traj[k + 1].l[i] < x.l[i]))
                throw error(errc::non_monotone_trajectory,
                            "leg " + std::to_string(i + 1) + " moves back in time at step " +
                                std::to_string(x.k + 1));
            if (x.t[i] < x.l[i])
                throw error(errc::non_monotone_trajectory,
                            "leg " + std::to_string(i + 1) + " touches down before lifting off");
            schedule.legs[i].push_back({Phase::swing, {x.l[i], x.t[i]}});
            if (k + 1 < traj.size()) {
                if (traj[k + 1].l[i] < x.t[i])
                    throw error(errc::non_monotone_trajectory,
                                "leg " + std::to_string(i + 1) + " lifts off before its touchdown");
                schedule.legs[i].push_back({Phase::stance, {x.t[i], traj[k + 1].l[i]}});
            }
        }
    }
    return schedule;
}

enum class Constraint {
    touchdown,            ///< t(k) = tau_f (x) l(k)
    liftoff,              ///< l(k) = tau_g t(k-1) (+) P t(k) (+) Q t(k-1) (+) l(k-1)
    double_stance,        ///< l_{l_{j+1}}(k) >= tau_delta (x) t_{l_j}(k)
    double_stance_cycle,  ///< l_{l_1}(k) >= tau_delta (x) t_{l_m}(k-1)
};

inline std::string to_string(Constraint c) {
    switch (c) {
        case Constraint::touchdown: return "touchdown";
        case Constraint::liftoff: return "liftoff";
        case Constraint::double_stance: return "double_stance";
        case Constraint::double_stance_cycle: return "double_stance_cycle";
    }
    return "unknown";
}

struct Violation {
    Constraint constraint;
    std::size_t step;  ///< state index k of the violated equation
    std::size_t leg;   ///< 1-based
    double expected;   ///< right-hand side (lower bound for the double-stance checks)
    double actual;
};

struct ScheduleReport {
    std::size_t steps_checked = 0;
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/**
 * Re-checks every step of a constant-gait trajectory against the event
 * equations.  `disturbances` uses step numbers relative to the span (the
 * span's first state is step 0); the disturbed events then satisfy the
 * equations with the injected lower bound included.
 */
inline ScheduleReport verify_schedule(std::span<const EventState> traj, const Gait& g, const GaitParams& params,
                                      const std::vector<Disturbance>& disturbances = {},
                                      double tol = 0.0) {
    const std::size_t n = g.leg_count();
    const GaitMatrices mats = system_matrix(g, params);
    const Scalar tf{params.tau_f}, tg{params.tau_g}, td{params.tau_delta};
    ScheduleReport report;

    auto check_equal = [&](Constraint c, std::size_t k, std::size_t leg, Scalar expected, double actual) {
        if (!approx_equal(expected, Scalar{actual}, tol))
            report.violations.push_back({c, k, leg + 1, expected.value(), actual});
    };
    auto check_at_least = [&](Constraint c, std::size_t k, std::size_t leg, double bound, double actual) {
        if (actual + tol < bound) report.violations.push_back({c, k, leg + 1, bound, actual});
    };

    for (std::size_t k = 1; k < traj.size(); ++k) {
        const auto& prev = traj[k - 1];
        const auto& cur = traj[k];
        if (cur.leg_count() != n || prev.leg_count() != n)
            throw error(errc::dimension_mismatch, "trajectory leg count differs from gait");
        const Matrix u = detail::disturbance_input(disturbances, k, mats.A * prev.stacked());
        const Matrix t_prev = Matrix::column(prev.t), t_cur = Matrix::column(cur.t);
        const Matrix p_t = mats.P * t_cur, q_t = mats.Q * t_prev;
        for (std::size_t i = 0; i < n; ++i) {
            const Scalar touch = tf * Scalar{cur.l[i]} + Scalar{prev.t[i]} + u[i];
            check_equal(Constraint::touchdown, k, i, touch, cur.t[i]);
            const Scalar lift = tg * Scalar{prev.t[i]} + p_t[i] + q_t[i] + Scalar{prev.l[i]} + u[i + n];
            check_equal(Constraint::liftoff, k, i, lift, cur.l[i]);
        }
        const std::size_t m = g.group_count();
        for (std::size_t j = 0; j + 1 < m; ++j)
            for (std::size_t waiting : g.group(j + 1))
                for (std::size_t landed : g.group(j))
                    check_at_least(Constraint::double_stance, k, waiting - 1,
                                   (td * Scalar{cur.t[landed - 1]}).value(), cur.l[waiting - 1]);
        for (std::size_t waiting : g.group(0))
            for (std::size_t landed : g.group(m - 1))
                check_at_least(Constraint::double_stance_cycle, k, waiting - 1,
                               (td * Scalar{prev.t[landed - 1]}).value(), cur.l[waiting - 1]);
        ++report.steps_checked;
    }
    return report;
}

}  // namespace tropgait
