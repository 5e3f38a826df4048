#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "tropgait/tropgait.hpp"

using namespace tropgait;

namespace {

Matrix trot_matrix(GaitParams p = {1, 3, 2}) { return system_matrix(Gait(4, {{1, 4}, {2, 3}}), p).A; }

bool throws_code(errc code, const std::function<void()>& f) {
    try {
        f();
    } catch (const error& ex) {
        return ex.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("precedence graph arcs", "[spectral]") {
    const auto g = precedence_graph(Matrix{{eps, 3}, {2, eps}});
    REQUIRE(g.node_count == 2);
    REQUIRE(g.arcs.size() == 2);
    CHECK(g.arcs[0] == Arc{1, 0, 3});
    CHECK(g.arcs[1] == Arc{0, 1, 2});
    CHECK(throws_code(errc::not_square, [] { precedence_graph(Matrix::zeros(2, 3)); }));
}

TEST_CASE("strongly connected components", "[spectral]") {
    // 0 <-> 1, 2 -> 0, 3 alone with self loop
    const Matrix a{{eps, 1, 1, eps}, {1, eps, eps, eps}, {eps, eps, eps, eps}, {eps, eps, eps, 0}};
    const auto c = strongly_connected_components(precedence_graph(a));
    CHECK(c.count == 3);
    CHECK(c.membership[0] == c.membership[1]);
    CHECK(c.membership[2] != c.membership[0]);
    CHECK(c.membership[3] != c.membership[0]);

    // long chain exercises the iterative traversal
    const std::size_t n = 3000;
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1, 0});
    arcs.push_back({n - 1, 0, 0});
    CHECK(strongly_connected_components(n, arcs, std::vector<bool>(n, true)).count == 1);
    arcs.pop_back();
    CHECK(strongly_connected_components(n, arcs, std::vector<bool>(n, true)).count == n);
}

TEST_CASE("irreducibility", "[spectral]") {
    CHECK(is_irreducible(Matrix{{eps, 3}, {2, eps}}));
    CHECK_FALSE(is_irreducible(Matrix{{1, eps}, {2, 1}}));
    CHECK(is_irreducible(Matrix{{0}}));
    CHECK_FALSE(is_irreducible(Matrix{{eps}}));
    CHECK(is_irreducible(trot_matrix()));
}

TEST_CASE("max cycle mean on small cases", "[spectral][karp]") {
    CHECK(max_cycle_mean(Matrix{{eps, 3}, {2, eps}}) == Scalar{2.5});
    CHECK(max_cycle_mean(Matrix{{4}}) == Scalar{4});
    CHECK(max_cycle_mean(Matrix{{eps, eps}, {1, eps}}) == eps);
    // reducible: two separate loops, the larger wins
    CHECK(max_cycle_mean(Matrix{{1, eps}, {5, 3}}) == Scalar{3});
    CHECK(max_cycle_mean(trot_matrix()) == Scalar{6});
}

TEST_CASE("max cycle mean agrees with circuit enumeration", "[spectral][karp][property]") {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::uniform(rng, 1, 7));
        const Matrix a = oracle::random_matrix(rng, n, n, -10, 10, 0.55);
        const double expected = oracle::max_circuit_mean(oracle::dense(a));
        const Scalar got = max_cycle_mean(a);
        if (expected == oracle::ninf) {
            REQUIRE(got == eps);
        } else {
            REQUIRE(got.is_finite());
            REQUIRE(got.value() == Catch::Approx(expected).margin(1e-12));
        }
    }
}

TEST_CASE("critical graph of a two-cycle", "[spectral][critical]") {
    const auto r = critical_graph(Matrix{{eps, 3}, {2, eps}});
    CHECK(r.eigenvalue == Scalar{2.5});
    CHECK(r.critical_nodes == std::vector<std::size_t>{0, 1});
    CHECK(r.critical_arcs.size() == 2);
    CHECK(r.scc_count == 1);
    CHECK(throws_code(errc::not_irreducible, [] { critical_graph(Matrix{{1, eps}, {2, 1}}); }));
}

TEST_CASE("critical graph of the trot", "[spectral][critical]") {
    const auto r = critical_graph(trot_matrix());
    CHECK(r.eigenvalue == Scalar{6});
    // touchdowns of the legs in the last group {2,3}
    CHECK(r.critical_nodes == std::vector<std::size_t>{1, 2});
    CHECK(r.scc_count == 1);
    for (const Arc& arc : r.critical_arcs) {
        CHECK(arc.weight == 6.0);
        CHECK(r.scc_membership[arc.source].has_value());
    }
    CHECK_FALSE(r.scc_membership[0].has_value());

    // stance dominates: every leg's own touchdown loop is critical on its own
    const auto slow = critical_graph(trot_matrix({1, 8, 2}));
    CHECK(slow.eigenvalue == Scalar{9});
    CHECK(slow.critical_nodes == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(slow.scc_count == 4);
}

TEST_CASE("eigenvector from critical column", "[spectral]") {
    const Matrix a = trot_matrix();
    const Matrix v = eigenvector_from_critical(a);
    CHECK(verify_eigenpair(a, Scalar{6}, v));
    CHECK(v.all_finite());

    const Matrix two{{eps, 3}, {2, eps}};
    CHECK(verify_eigenpair(two, Scalar{2.5}, eigenvector_from_critical(two)));
}

TEST_CASE("eigenpair verification", "[spectral]") {
    const Matrix a{{eps, 3}, {2, eps}};
    CHECK(verify_eigenpair(a, Scalar{2.5}, Matrix::column(std::vector<double>{0, -0.5})));
    CHECK_FALSE(verify_eigenpair(a, Scalar{2.5}, Matrix::column(std::vector<double>{0, 0})));
    CHECK(throws_code(errc::all_epsilon_vector, [&] { verify_eigenpair(a, Scalar{2.5}, Matrix::zeros(2, 1)); }));
    CHECK(throws_code(errc::dimension_mismatch, [&] { verify_eigenpair(a, Scalar{2.5}, Matrix::zeros(3, 1)); }));
}

TEST_CASE("spectral quantities are invariant under relabeling", "[spectral][property]") {
    oracle::Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::uniform(rng, 1, 7));
        const Matrix a = oracle::random_matrix(rng, n, n, -6, 6, 0.3);
        if (!is_irreducible(a)) continue;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix c(n, n);
        for (std::size_t i = 0; i < n; ++i) c(i, perm[i]) = e;
        const Matrix b = c * a * c.transpose();

        const auto ra = critical_graph(a);
        const auto rb = critical_graph(b);
        REQUIRE(ra.eigenvalue == rb.eigenvalue);
        REQUIRE(ra.scc_count == rb.scc_count);
        REQUIRE(ra.critical_nodes.size() == rb.critical_nodes.size());
        std::set<std::size_t> mapped;
        for (auto i : rb.critical_nodes) mapped.insert(perm[i]);
        REQUIRE(mapped == std::set<std::size_t>(ra.critical_nodes.begin(), ra.critical_nodes.end()));

        const auto ca = coupling_params(a);
        const auto cb = coupling_params(b);
        REQUIRE(ca.cyclicity == cb.cyclicity);
        REQUIRE(ca.coupling_time == cb.coupling_time);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("coupling parameters", "[spectral][coupling]") {
    const auto one = coupling_params(Matrix{{0}});
    CHECK(one.cyclicity == 1);
    CHECK(one.coupling_time == 0);
    CHECK_FALSE(one.power_cap_hit);

    const auto two = coupling_params(Matrix{{eps, 3}, {2, eps}});
    CHECK(two.eigenvalue == Scalar{2.5});
    CHECK(two.cyclicity == 2);
    CHECK(two.coupling_time == 0);

    const auto trot = coupling_params(trot_matrix());
    CHECK(trot.cyclicity == 1);
    CHECK(trot.coupling_time <= 2);

    // slow transient: a small loop of mean 0 and a critical loop of mean 1
    const Matrix slow{{0, -20}, {-20, 1}};
    const auto r = coupling_params(slow, 200);
    CHECK(r.cyclicity == 1);
    CHECK(r.coupling_time > 16);
    CHECK(coupling_params(slow).power_cap_hit);
    const auto capped = coupling_params(slow, 5);
    CHECK(capped.power_cap_hit);
    CHECK(capped.cyclicity == 0);
    CHECK(capped.coupling_time == 5);
}

TEST_CASE("coupling parameters match a direct power scan", "[spectral][coupling][property]") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const auto n = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
        const Matrix a = oracle::random_matrix(rng, n, n, -4, 4, 0.4);
        if (!is_irreducible(a)) continue;
        const auto r = coupling_params(a);
        if (r.power_cap_hit) continue;
        const double lambda = oracle::max_circuit_mean(oracle::dense(a));
        const std::size_t horizon = r.coupling_time + 3 * n + 4;
        std::vector<oracle::Dense> pw{oracle::identity(n)};
        for (std::size_t p = 1; p <= horizon + n; ++p) pw.push_back(oracle::product(pw.back(), oracle::dense(a)));
        auto holds = [&](std::size_t c, std::size_t p) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double lhs = pw[p + c][i][j];
                    const double rhs = pw[p][i][j] == oracle::ninf ? oracle::ninf
                                                                   : pw[p][i][j] + static_cast<double>(c) * lambda;
                    if (lhs != rhs) return false;
                }
            return true;
        };
        for (std::size_t p = r.coupling_time; p <= horizon; ++p) REQUIRE(holds(r.cyclicity, p));
        if (r.coupling_time > 0) REQUIRE_FALSE(holds(r.cyclicity, r.coupling_time - 1));
        for (std::size_t c = 1; c < r.cyclicity; ++c) REQUIRE_FALSE(holds(c, horizon));
    }
}
