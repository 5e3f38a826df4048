#pragma once

/**
 * @file gait.hpp
 * @brief Gaits as ordered partitions of legs, and the max-plus system they induce.
 *
 * A gait l_1 < l_2 < ... < l_m says: the legs of group l_{j+1} may lift off
 * only after every leg of l_j has touched down (and l_1 waits on l_m of the
 * previous step).  With touchdown vector t(k) and liftoff vector l(k):
 *
 *   t(k) = tau_f (x) l(k)
 *   l(k) = tau_g (x) t(k-1) (+) P (x) t(k) (+) Q (x) t(k-1)
 *
 * which in state form x = [t; l] reads x(k) = A0 (x) x(k) (+) A1 (x) x(k-1),
 * solved explicitly as x(k) = A (x) x(k-1) with A = A0* (x) A1.
 *
 * Leg indices are 1-based in the public Gait interface (matching the usual
 * robot leg numbering) and 0-based in matrices.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tropgait/maxplus.hpp"

namespace tropgait {

using LegGroup = std::vector<std::size_t>;

/// Throws not_partition / bad_index unless `groups` is an ordered partition of {1..n}.
inline void validate_gait(std::size_t n, const std::vector<LegGroup>& groups) {
    if (groups.empty()) throw error(errc::not_partition, "a gait needs at least one group");
    std::vector<bool> seen(n + 1, false);
    std::size_t total = 0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        if (groups[j].empty())
            throw error(errc::not_partition, "group " + std::to_string(j + 1) + " is empty");
        for (std::size_t leg : groups[j]) {
            if (leg < 1 || leg > n)
                throw error(errc::bad_index, "leg " + std::to_string(leg) + " outside 1.." + std::to_string(n));
            if (seen[leg]) throw error(errc::not_partition, "leg " + std::to_string(leg) + " appears twice");
            seen[leg] = true;
            ++total;
        }
    }
    if (total != n) throw error(errc::not_partition, "not every leg in 1.." + std::to_string(n) + " is assigned");
}

class Gait {
public:
    Gait(std::size_t n, std::vector<LegGroup> groups) : n_(n), groups_(std::move(groups)) {
        validate_gait(n_, groups_);
    }

    /// Leg count inferred from the groups.
    explicit Gait(std::vector<LegGroup> groups) : n_(count_legs(groups)), groups_(std::move(groups)) {
        validate_gait(n_, groups_);
    }

    std::size_t leg_count() const noexcept { return n_; }
    std::size_t group_count() const noexcept { return groups_.size(); }
    const std::vector<LegGroup>& groups() const noexcept { return groups_; }
    const LegGroup& group(std::size_t j) const { return groups_.at(j); }

    /// 0-based index of the group containing 1-based `leg`.
    std::size_t group_of(std::size_t leg) const {
        for (std::size_t j = 0; j < groups_.size(); ++j)
            if (std::find(groups_[j].begin(), groups_[j].end(), leg) != groups_[j].end()) return j;
        throw error(errc::bad_index, "leg " + std::to_string(leg) + " not in gait");
    }

    friend bool operator==(const Gait&, const Gait&) = default;

private:
    static std::size_t count_legs(const std::vector<LegGroup>& groups) {
        return std::accumulate(groups.begin(), groups.end(), std::size_t{0},
                               [](std::size_t acc, const LegGroup& g) { return acc + g.size(); });
    }

    std::size_t n_;
    std::vector<LegGroup> groups_;
};

struct GaitParams {
    double tau_f = 0.0;      ///< swing time
    double tau_g = 0.0;      ///< stance time
    double tau_delta = 0.0;  ///< double-stance time

    /// Tz = tau_f (x) tau_delta
    double swing_delta() const noexcept { return tau_f + tau_delta; }
    /// tau_gamma = tau_f (x) tau_g
    double swing_stance() const noexcept { return tau_f + tau_g; }

    friend bool operator==(const GaitParams&, const GaitParams&) = default;
};

/// Concatenation of the groups in order.
inline std::vector<std::size_t> flat(const Gait& g) {
    std::vector<std::size_t> out;
    out.reserve(g.leg_count());
    for (const auto& group : g.groups()) out.insert(out.end(), group.begin(), group.end());
    return out;
}

inline bool is_normal(const Gait& g) {
    const auto f = flat(g);
    return std::adjacent_find(f.begin(), f.end(), std::greater_equal<>{}) == f.end();
}

/// The normal gait with the same group sizes: l_1 = {1..#l_1}, l_2 = {#l_1+1..}, ...
inline Gait normal_form(const Gait& g) {
    std::vector<LegGroup> groups;
    std::size_t next = 1;
    for (const auto& group : g.groups()) {
        LegGroup relabeled(group.size());
        std::iota(relabeled.begin(), relabeled.end(), next);
        next += group.size();
        groups.push_back(std::move(relabeled));
    }
    return Gait(g.leg_count(), std::move(groups));
}

struct Similarity {
    Matrix C_bar;  ///< n x n permutation, [C_bar]_ij = e iff flat(g)_i = j
    Matrix C;      ///< blockdiag(C_bar, C_bar)
};

inline Similarity similarity_matrix(const Gait& g) {
    const std::size_t n = g.leg_count();
    const auto f = flat(g);
    Matrix c_bar(n, n);
    for (std::size_t i = 0; i < n; ++i) c_bar(i, f[i] - 1) = e;
    const Matrix z = Matrix::zeros(n);
    return {c_bar, Matrix::from_blocks({{c_bar, z}, {z, c_bar}})};
}

struct SyncMatrices {
    Matrix P;  ///< liftoff of l_{j+1} waits on touchdown of l_j in the same step
    Matrix Q;  ///< liftoff of l_1 waits on touchdown of l_m in the previous step
};

inline SyncMatrices build_P_Q(const Gait& g, const GaitParams& params) {
    const std::size_t n = g.leg_count(), m = g.group_count();
    Matrix p(n, n), q(n, n);
    for (std::size_t j = 0; j + 1 < m; ++j)
        for (std::size_t row : g.group(j + 1))
            for (std::size_t col : g.group(j)) p(row - 1, col - 1) = Scalar{params.tau_delta};
    for (std::size_t row : g.group(0))
        for (std::size_t col : g.group(m - 1)) q(row - 1, col - 1) = Scalar{params.tau_delta};
    return {p, q};
}

struct Assumptions {
    bool a1 = false;  ///< tau_f > 0 and tau_g > 0
    bool a2 = false;  ///< tau_gamma <= Tz^(m)
};

inline Assumptions check_assumptions(const Gait& g, const GaitParams& params) {
    const double m = static_cast<double>(g.group_count());
    return {params.tau_f > 0.0 && params.tau_g > 0.0, params.swing_stance() <= m * params.swing_delta()};
}

enum class Warning {
    running_gait,         ///< tau_delta < 0: legs of consecutive groups may be airborne together
    assumption_a1_unmet,  ///< tau_f or tau_g not positive
};

inline std::string to_string(Warning w) {
    switch (w) {
        case Warning::running_gait: return "RunningGaitWarning";
        case Warning::assumption_a1_unmet: return "AssumptionA1Warning";
    }
    return "Warning";
}

inline std::vector<Warning> gait_warnings(const Gait& g, const GaitParams& params) {
    std::vector<Warning> out;
    if (params.tau_delta < 0.0) out.push_back(Warning::running_gait);
    if (!check_assumptions(g, params).a1) out.push_back(Warning::assumption_a1_unmet);
    return out;
}

struct ImplicitSystem {
    Matrix A0;  ///< [[Z, tau_f I], [P, Z]]
    Matrix A1;  ///< [[I, Z], [tau_g I (+) Q, I]]
};

inline ImplicitSystem build_A0_A1(const Gait& g, const GaitParams& params) {
    const std::size_t n = g.leg_count();
    const auto [p, q] = build_P_Q(g, params);
    const Matrix z = Matrix::zeros(n), id = Matrix::identity(n);
    return {Matrix::from_blocks({{z, Scalar{params.tau_f} * id}, {p, z}}),
            Matrix::from_blocks({{id, z}, {Scalar{params.tau_g} * id + q, id}})};
}

struct GaitMatrices {
    Matrix P, Q;
    Matrix C_bar, C;
    Matrix A0, A1;
    Matrix A0_star;
    Matrix A;      ///< system matrix A0* (x) A1
    Matrix A_bar;  ///< C (x) A (x) C^T, the system matrix of the normal gait
    std::vector<Warning> warnings;
};

/// A0* exists for every valid gait because P is nilpotent, so the star
/// cannot hit a positive circuit here.
inline GaitMatrices system_matrix(const Gait& g, const GaitParams& params) {
    GaitMatrices out;
    auto [p, q] = build_P_Q(g, params);
    auto [c_bar, c] = similarity_matrix(g);
    auto [a0, a1] = build_A0_A1(g, params);
    out.P = std::move(p);
    out.Q = std::move(q);
    out.C_bar = std::move(c_bar);
    out.C = std::move(c);
    out.A0 = std::move(a0);
    out.A1 = std::move(a1);
    out.A0_star = kleene_star(out.A0);
    out.A = out.A0_star * out.A1;
    out.A_bar = out.C * out.A * out.C.transpose();
    out.warnings = gait_warnings(g, params);
    return out;
}

namespace detail {

inline void require_normal(const Gait& g) {
    if (!is_normal(g)) throw error(errc::not_normal_gait, "closed forms are stated for normal gaits");
}

/// Row/column offset of every group block, plus the total at the end.
inline std::vector<std::size_t> group_offsets(const Gait& g) {
    std::vector<std::size_t> off{0};
    for (const auto& group : g.groups()) off.push_back(off.back() + group.size());
    return off;
}

}  // namespace detail

/// Delta, Delta' and V of a normal gait, built block by block.
struct StructuralBlocks {
    Matrix Delta;       ///< (tau_f (x) P_bar)*
    Matrix DeltaPrime;  ///< lower-left block of A0_bar*
    Matrix V;           ///< Delta (x) Q_bar
};

inline StructuralBlocks structural_blocks(const Gait& g_normal, const GaitParams& params) {
    detail::require_normal(g_normal);
    const std::size_t n = g_normal.leg_count(), m = g_normal.group_count();
    const auto off = detail::group_offsets(g_normal);
    const double tdf = params.swing_delta();
    const double td = params.tau_delta;

    StructuralBlocks s{Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t rows = off[i + 1] - off[i];
        for (std::size_t j = 0; j < i; ++j) {
            const std::size_t cols = off[j + 1] - off[j];
            const double gap = static_cast<double>(i - j);
            s.Delta.set_block(off[i], off[j], Scalar{gap * tdf} * Matrix::ones(rows, cols));
            s.DeltaPrime.set_block(off[i], off[j], Scalar{td + (gap - 1.0) * tdf} * Matrix::ones(rows, cols));
        }
        s.Delta.set_block(off[i], off[i], Matrix::identity(rows));
        const std::size_t last = off[m] - off[m - 1];
        s.V.set_block(off[i], off[m - 1],
                      Scalar{td + static_cast<double>(i) * tdf} * Matrix::ones(rows, last));
    }
    return s;
}

/// [[Delta, tau_f Delta], [Delta', Delta]]
inline Matrix closed_form_A0_star(const Gait& g_normal, const GaitParams& params) {
    const auto s = structural_blocks(g_normal, params);
    return Matrix::from_blocks({{s.Delta, Scalar{params.tau_f} * s.Delta}, {s.DeltaPrime, s.Delta}});
}

/// A_bar = [[tau_f (tau_g Delta (+) V), tau_f Delta], [tau_g Delta (+) V, Delta]]
inline Matrix closed_form_system_matrix(const Gait& g_normal, const GaitParams& params) {
    const auto s = structural_blocks(g_normal, params);
    const Scalar tf{params.tau_f}, tg{params.tau_g};
    const Matrix left = tg * s.Delta + s.V;
    return Matrix::from_blocks({{tf * left, tf * s.Delta}, {left, s.Delta}});
}

struct Eigenpair {
    Scalar lambda;
    Matrix v;  ///< 2n x 1, touchdowns then liftoffs
};

/// lambda = Tz^(m) (+) tau_gamma;  for q in l_j: v_q = tau_f (x) Tz^(j-1), v_{q+n} = Tz^(j-1).
inline Eigenpair closed_form_eigenpair(const Gait& g, const GaitParams& params) {
    if (!check_assumptions(g, params).a1)
        throw error(errc::assumption_a1_violated, "tau_f and tau_g must be positive");
    const std::size_t n = g.leg_count(), m = g.group_count();
    const double tz = params.swing_delta();
    std::vector<Scalar> v(2 * n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t leg : g.group(j)) {
            const double lift = static_cast<double>(j) * tz;
            v[leg - 1] = Scalar{params.tau_f + lift};
            v[leg - 1 + n] = Scalar{lift};
        }
    }
    return {oplus(Scalar{static_cast<double>(m) * tz}, Scalar{params.swing_stance()}), Matrix::column(v)};
}

/**
 * A_bar^(r) for r >= 2 under A2.  With lambda = Tz^(m):
 *
 *   X = lambda^(r-2) tau_f tau_g (V Delta) (+) lambda^(r-1) V
 *   Y = lambda^(r-2) tau_f (V Delta)
 *   A_bar^(r) = [[tau_f X, tau_f Y], [X, Y]]
 */
inline Matrix closed_form_power(const Gait& g_normal, const GaitParams& params, std::size_t r) {
    detail::require_normal(g_normal);
    if (r < 2) throw error(errc::bad_exponent, "closed-form power needs r >= 2");
    const auto assumptions = check_assumptions(g_normal, params);
    if (!assumptions.a1) throw error(errc::assumption_a1_violated, "tau_f and tau_g must be positive");
    if (!assumptions.a2) throw error(errc::assumption_a2_violated, "tau_gamma exceeds Tz^m");

    const auto s = structural_blocks(g_normal, params);
    const Scalar lambda = closed_form_eigenpair(g_normal, params).lambda;
    const Scalar tf{params.tau_f}, tg{params.tau_g};
    const Scalar lam_r2 = mpow_scalar(lambda, static_cast<double>(r - 2));
    const Scalar lam_r1 = mpow_scalar(lambda, static_cast<double>(r - 1));
    const Matrix vd = s.V * s.Delta;
    const Matrix x = (lam_r2 * tf * tg) * vd + lam_r1 * s.V;
    const Matrix y = (lam_r2 * tf) * vd;
    return Matrix::from_blocks({{tf * x, tf * y}, {x, y}});
}

}  // namespace tropgait
