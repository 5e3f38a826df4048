#pragma once

/**
 * @file spectral.hpp
 * @brief Graph view of a square max-plus matrix and its spectral quantities.
 *
 * The precedence graph of A has an arc j -> i with weight A_ij for every
 * finite entry.  For an irreducible matrix the eigenvalue is the maximal
 * cycle mean; eigenvectors are columns of (A - lambda)* indexed by critical
 * nodes, and the sequence of powers becomes periodic after the coupling time.
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "tropgait/maxplus.hpp"

namespace tropgait {

struct Arc {
    std::size_t source;
    std::size_t target;
    double weight;

    friend bool operator==(const Arc&, const Arc&) = default;
};

struct PrecedenceGraph {
    std::size_t node_count = 0;
    std::vector<Arc> arcs;
};

/// Arcs in row-major entry order: entry (i, j) yields arc j -> i.
inline PrecedenceGraph precedence_graph(const Matrix& a) {
    detail::require_square(a, "precedence graph needs a square matrix");
    PrecedenceGraph g{a.rows(), {}};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).is_finite()) g.arcs.push_back({j, i, a(i, j).value()});
    return g;
}

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> membership;  ///< node -> component id
};

/// Tarjan's algorithm restricted to the nodes flagged in `active`.  Inactive
/// nodes get membership npos and are not counted.
inline Components strongly_connected_components(std::size_t node_count, const std::vector<Arc>& arcs,
                                                const std::vector<bool>& active) {
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> out(node_count);
    for (const Arc& arc : arcs)
        if (active[arc.source] && active[arc.target]) out[arc.source].push_back(arc.target);

    Components result{0, std::vector<std::size_t>(node_count, npos)};
    std::vector<std::size_t> index(node_count, npos), low(node_count, 0);
    std::vector<bool> on_stack(node_count, false);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0;

    // iterative DFS: frames of (node, next child position)
    for (std::size_t root = 0; root < node_count; ++root) {
        if (!active[root] || index[root] != npos) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < out[v].size()) {
                const std::size_t w = out[v][child++];
                if (index[w] == npos) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t finished = v;
            if (low[finished] == index[finished]) {
                std::size_t w = npos;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    result.membership[w] = result.count;
                } while (w != finished);
                ++result.count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                const std::size_t parent = frames.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }
    return result;
}

inline Components strongly_connected_components(const PrecedenceGraph& g) {
    return strongly_connected_components(g.node_count, g.arcs, std::vector<bool>(g.node_count, true));
}

/// Irreducible iff every node reaches every node by a path of length >= 1,
/// so a 1 x 1 matrix needs a finite self-loop.
inline bool is_irreducible(const Matrix& a) {
    const PrecedenceGraph g = precedence_graph(a);
    if (g.node_count == 0) return false;
    if (g.node_count == 1) return a(0, 0).is_finite();
    return strongly_connected_components(g).count == 1;
}

/// Maximal cycle mean via Karp's recursion run inside every strongly
/// connected component; eps for an acyclic graph.
inline Scalar max_cycle_mean(const Matrix& a) {
    const PrecedenceGraph g = precedence_graph(a);
    const Components scc = strongly_connected_components(g);
    Scalar best = eps;

    for (std::size_t c = 0; c < scc.count; ++c) {
        std::vector<std::size_t> nodes;
        for (std::size_t v = 0; v < g.node_count; ++v)
            if (scc.membership[v] == c) nodes.push_back(v);
        std::vector<std::size_t> local(g.node_count, nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = k;

        std::vector<Arc> inner;
        for (const Arc& arc : g.arcs)
            if (scc.membership[arc.source] == c && scc.membership[arc.target] == c)
                inner.push_back({local[arc.source], local[arc.target], arc.weight});
        if (inner.empty()) continue;

        // walk[k][v]: heaviest walk of exactly k arcs from the root (local node 0) to v
        const std::size_t s = nodes.size();
        std::vector<std::vector<Scalar>> walk(s + 1, std::vector<Scalar>(s, eps));
        walk[0][0] = e;
        for (std::size_t k = 0; k < s; ++k)
            for (const Arc& arc : inner)
                walk[k + 1][arc.target] =
                    oplus(walk[k + 1][arc.target], otimes(walk[k][arc.source], Scalar{arc.weight}));

        for (std::size_t v = 0; v < s; ++v) {
            if (walk[s][v].is_epsilon()) continue;
            Scalar worst = eps;
            for (std::size_t k = 0; k < s; ++k) {
                if (walk[k][v].is_epsilon()) continue;
                const double mean =
                    (walk[s][v].value() - walk[k][v].value()) / static_cast<double>(s - k);
                if (worst.is_epsilon() || mean < worst.value()) worst = Scalar{mean};
            }
            best = oplus(best, worst);
        }
    }
    return best;
}

struct CriticalGraphReport {
    Scalar eigenvalue;
    std::vector<std::size_t> critical_nodes;
    std::vector<Arc> critical_arcs;
    std::size_t scc_count = 0;
    /// node -> SCC id of the critical subgraph, nullopt for non-critical nodes
    std::vector<std::optional<std::size_t>> scc_membership;
};

namespace detail {

/// A with lambda subtracted from every finite entry.
inline Matrix normalized(const Matrix& a, Scalar lambda) {
    return otimes(Scalar{-lambda.value()}, a);
}

inline Scalar require_eigenvalue(const Matrix& a) {
    if (!is_irreducible(a)) throw error(errc::not_irreducible, "matrix is reducible");
    return max_cycle_mean(a);
}

}  // namespace detail

/// Critical nodes satisfy [A_lambda+]_ii = 0; a critical arc (j, i) closes a
/// zero-weight circuit: [A_lambda]_ij (x) [A_lambda*]_ji = 0.
inline CriticalGraphReport critical_graph(const Matrix& a, double tol = default_tolerance) {
    const Scalar lambda = detail::require_eigenvalue(a);
    const Matrix a_lambda = detail::normalized(a, lambda);
    const Matrix star = star_partial_sum(a_lambda);
    const Matrix plus = a_lambda * star;
    const std::size_t n = a.rows();

    CriticalGraphReport report;
    report.eigenvalue = lambda;
    std::vector<bool> critical(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (approx_equal(plus(i, i), e, tol)) {
            critical[i] = true;
            report.critical_nodes.push_back(i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!critical[i] || !critical[j] || a(i, j).is_epsilon()) continue;
            if (approx_equal(otimes(a_lambda(i, j), star(j, i)), e, tol))
                report.critical_arcs.push_back({j, i, a(i, j).value()});
        }
    }
    const Components scc = strongly_connected_components(n, report.critical_arcs, critical);
    report.scc_count = scc.count;
    report.scc_membership.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        if (critical[i]) report.scc_membership[i] = scc.membership[i];
    return report;
}

/// Column of (A - lambda)* at the first critical node.
inline Matrix eigenvector_from_critical(const Matrix& a, double tol = default_tolerance) {
    const CriticalGraphReport report = critical_graph(a, tol);
    const Matrix star = star_partial_sum(detail::normalized(a, report.eigenvalue));
    return star.col(report.critical_nodes.front());
}

/// A (x) v = lambda (x) v entrywise within `tol`.
inline bool verify_eigenpair(const Matrix& a, Scalar lambda, const Matrix& v, double tol = default_tolerance) {
    if (!a.is_square() || v.cols() != 1 || v.rows() != a.cols())
        throw error(errc::dimension_mismatch, "eigenpair dimensions");
    if (v.all_epsilon()) throw error(errc::all_epsilon_vector, "eigenvector must not be all eps");
    return approx_equal(a * v, lambda * v, tol);
}

struct CouplingReport {
    Scalar eigenvalue;
    std::size_t cyclicity = 0;      ///< 0 when power_cap_hit
    std::size_t coupling_time = 0;  ///< k0
    bool power_cap_hit = false;
};

inline std::size_t default_power_cap(std::size_t n) { return 4 * n * n; }

/**
 * Smallest cyclicity c in 1..n, then smallest k0, such that
 * A^(p+c) = lambda^c (x) A^(p) for every p in [k0, p_max - c].
 *
 * Once the identity holds for some p it holds for all larger p, so the scan
 * only needs the first p at which each c holds.  Only the last n+1 powers
 * are kept in memory.  When a c is found at p, smaller c can only appear up
 * to p + c, after which the scan stops.
 */
inline CouplingReport coupling_params(const Matrix& a, std::optional<std::size_t> p_max = std::nullopt,
                                      double tol = 0.0) {
    const Scalar lambda = detail::require_eigenvalue(a);
    const std::size_t n = a.rows();
    const std::size_t cap = p_max.value_or(default_power_cap(n));

    std::vector<std::optional<std::size_t>> first_hold(n + 1);
    std::deque<Matrix> window{Matrix::identity(n)};  // window.back() = A^(q)
    std::optional<std::size_t> stop_after;

    for (std::size_t q = 1; q <= cap; ++q) {
        window.push_back(window.back() * a);
        if (window.size() > n + 1) window.pop_front();
        const Matrix& current = window.back();
        for (std::size_t c = 1; c <= n && c <= q; ++c) {
            if (first_hold[c]) continue;
            const Matrix& earlier = window[window.size() - 1 - c];
            if (approx_equal(current, mpow_scalar(lambda, static_cast<double>(c)) * earlier, tol)) {
                first_hold[c] = q - c;
                if (!stop_after) stop_after = q + c;
            }
        }
        if (first_hold[1] || (stop_after && q >= *stop_after)) break;
    }

    CouplingReport report{lambda, 0, cap, true};
    for (std::size_t c = 1; c <= n; ++c) {
        if (first_hold[c]) {
            report.cyclicity = c;
            report.coupling_time = *first_hold[c];
            report.power_cap_hit = false;
            break;
        }
    }
    return report;
}

}  // namespace tropgait
