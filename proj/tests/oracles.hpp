#pragma once

// Test-only oracles.  They work on plain doubles with -inf for eps and never
// call into the library's matrix product, star or graph routines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "tropgait/tropgait.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;
inline constexpr double ninf = -std::numeric_limits<double>::infinity();

inline Dense dense(const tropgait::Matrix& m) {
    Dense d(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j).value();
    return d;
}

inline tropgait::Matrix matrix(const Dense& d) {
    tropgait::Matrix m(d.size(), d.empty() ? 0 : d.front().size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = tropgait::Scalar{d[i][j]};
    return m;
}

inline Dense product(const Dense& a, const Dense& b) {
    Dense c(a.size(), std::vector<double>(b.front().size(), ninf));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.front().size(); ++j)
            for (std::size_t p = 0; p < b.size(); ++p)
                if (a[i][p] != ninf && b[p][j] != ninf) c[i][j] = std::max(c[i][j], a[i][p] + b[p][j]);
    return c;
}

inline Dense identity(std::size_t n) {
    Dense d(n, std::vector<double>(n, ninf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    return d;
}

inline Dense elementwise_max(const Dense& a, const Dense& b) {
    Dense c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] = std::max(a[i][j], b[i][j]);
    return c;
}

/// I (+) A (+) ... (+) A^(count-1), by repeated multiplication.
inline Dense power_sum(const Dense& a, std::size_t count) {
    Dense sum = identity(a.size()), term = identity(a.size());
    for (std::size_t p = 1; p < count; ++p) {
        term = product(term, a);
        sum = elementwise_max(sum, term);
    }
    return sum;
}

inline Dense power(const Dense& a, std::size_t p) {
    Dense out = identity(a.size());
    for (std::size_t i = 0; i < p; ++i) out = product(out, a);
    return out;
}

/// Maximal mean over all elementary circuits, by DFS from each smallest node.
/// Arc j -> i has weight a[i][j].  Returns -inf when acyclic.
inline double max_circuit_mean(const Dense& a) {
    const std::size_t n = a.size();
    double best = ninf;
    std::vector<bool> visited(n, false);
    std::function<void(std::size_t, std::size_t, double, std::size_t)> dfs =
        [&](std::size_t start, std::size_t v, double weight, std::size_t length) {
            for (std::size_t w = start; w < n; ++w) {
                const double arc = a[w][v];
                if (arc == ninf) continue;
                if (w == start) {
                    best = std::max(best, (weight + arc) / static_cast<double>(length + 1));
                } else if (!visited[w]) {
                    visited[w] = true;
                    dfs(start, w, weight + arc, length + 1);
                    visited[w] = false;
                }
            }
        };
    for (std::size_t s = 0; s < n; ++s) {
        visited[s] = true;
        dfs(s, s, 0.0, 0);
        visited[s] = false;
    }
    return best;
}

/// Every ordered partition of {1..n} into non-empty groups, groups sorted.
inline std::vector<std::vector<tropgait::LegGroup>> ordered_set_partitions(std::size_t n) {
    std::vector<std::vector<tropgait::LegGroup>> out;
    // assign each leg a group label 0..m-1 with all labels used
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::size_t> label(n, 0);
        while (true) {
            std::vector<tropgait::LegGroup> groups(m);
            for (std::size_t leg = 0; leg < n; ++leg) groups[label[leg]].push_back(leg + 1);
            if (std::none_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); }))
                out.push_back(std::move(groups));
            std::size_t pos = 0;
            while (pos < n && ++label[pos] == m) label[pos++] = 0;
            if (pos == n) break;
        }
    }
    return out;
}

inline std::size_t fubini(std::size_t n) {
    // a(n) = sum_k C(n,k) a(n-k)
    std::vector<std::size_t> a(n + 1, 0);
    a[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t binom = 1;
        for (std::size_t k = 1; k <= i; ++k) {
            binom = binom * (i - k + 1) / k;
            a[i] += binom * a[i - k];
        }
    }
    return a[n];
}

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Integer timing with tau_f, tau_g >= 1 and tau_delta >= 0.
inline tropgait::GaitParams random_a1_params(Rng& rng) {
    return {static_cast<double>(uniform(rng, 1, 5)), static_cast<double>(uniform(rng, 1, 10)),
            static_cast<double>(uniform(rng, 0, 5))};
}

/// Rejection-sampled A1 timing that also satisfies tau_f + tau_g <= m (tau_f + tau_delta).
inline tropgait::GaitParams random_a2_params(Rng& rng, std::size_t m) {
    while (true) {
        auto p = random_a1_params(rng);
        if (p.tau_f + p.tau_g <= static_cast<double>(m) * (p.tau_f + p.tau_delta)) return p;
    }
}

/// Random gait with a random leg order inside groups.
inline tropgait::Gait random_gait(Rng& rng, std::size_t n) {
    std::vector<std::size_t> legs(n);
    std::iota(legs.begin(), legs.end(), 1);
    std::shuffle(legs.begin(), legs.end(), rng);
    std::vector<tropgait::LegGroup> groups(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && uniform(rng, 0, 1) == 1) groups.emplace_back();
        groups.back().push_back(legs[i]);
    }
    return tropgait::Gait(n, groups);
}

/// Random square matrix with integer entries in [lo, hi], eps with probability p_eps.
inline tropgait::Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi,
                                      double p_eps) {
    tropgait::Matrix m(rows, cols);
    std::bernoulli_distribution is_eps(p_eps);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!is_eps(rng)) m(i, j) = tropgait::Scalar{static_cast<double>(uniform(rng, lo, hi))};
    return m;
}

/// True iff x - y is the same finite constant in every coordinate.
inline bool constant_difference(const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] - y[i] != x[0] - y[0]) return false;
    return true;
}

inline std::vector<double> stacked(const tropgait::EventState& s) {
    std::vector<double> x = s.t;
    x.insert(x.end(), s.l.begin(), s.l.end());
    return x;
}

inline std::vector<double> values(const tropgait::Matrix& column) {
    std::vector<double> out;
    for (const auto& s : column.entries()) out.push_back(s.value());
    return out;
}

/// Two-leg walk {1}<{2} by its scalar recursion:
///   l1(k) = max(t1(k-1) + tg, t2(k-1) + td, l1(k-1)),  t1(k) = l1(k) + tf
///   l2(k) = max(t2(k-1) + tg, t1(k) + td, l2(k-1)),    t2(k) = l2(k) + tf
/// `delay_t1` postpones t1 at step `delay_step`.
struct BipedState {
    double t1, t2, l1, l2;
};

inline std::vector<BipedState> biped_recursion(BipedState x0, double tf, double tg, double td, std::size_t steps,
                                               std::size_t delay_step = 0, double delay_t1 = 0.0) {
    std::vector<BipedState> out{x0};
    for (std::size_t k = 1; k <= steps; ++k) {
        const BipedState& p = out.back();
        BipedState x{};
        x.l1 = std::max({p.t1 + tg, p.t2 + td, p.l1});
        x.t1 = std::max(x.l1 + tf, p.t1);
        if (k == delay_step) x.t1 += delay_t1;
        x.l2 = std::max({p.t2 + tg, x.t1 + td, p.l2});
        x.t2 = std::max(x.l2 + tf, p.t2);
        out.push_back(x);
    }
    return out;
}

}  // namespace oracle
