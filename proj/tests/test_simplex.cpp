#include <doctest.h>

#include <cmath>
#include <random>

#include "itsp/oracle.hpp"
#include "itsp/simplex.hpp"

using namespace itsp;

namespace {

Polyhedron random_lp(std::mt19937_64& rng, int m, int n) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> rhs(-5, 10);
    Polyhedron poly;
    for (int i = 0; i < m; ++i) {
        std::vector<double> row;
        for (int j = 0; j < n; ++j) row.push_back(coeff(rng));
        poly.A.push_back(std::move(row));
        poly.b.push_back(rhs(rng));
    }
    return poly;
}

} // namespace

TEST_SUITE("simplex") {

TEST_CASE("box-constrained optimum") {
    const Polyhedron poly{{{1.0, 0.0}, {0.0, 1.0}}, {1.0, 1.0}};
    const LpOutcome out = lp_solve(poly, {1.0, 1.0}, Sense::maximize);
    REQUIRE(out.status == LpStatus::optimal);
    CHECK(out.value == doctest::Approx(2.0));
    CHECK(out.x[0] == doctest::Approx(1.0));
    CHECK(out.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible with nonnegativity") {
    const Polyhedron poly{{{1.0}}, {-1.0}};
    CHECK(lp_solve(poly, {1.0}, Sense::maximize).status == LpStatus::infeasible);
}

TEST_CASE("unbounded direction") {
    const Polyhedron poly{{{0.0, 1.0}}, {1.0}};
    CHECK(lp_solve(poly, {1.0, 0.0}, Sense::maximize).status == LpStatus::unbounded);
}

TEST_CASE("minimize sense reports in the original sense") {
    // min x1 + x2 subject to x1 + x2 >= 1.
    const Polyhedron poly{{{-1.0, -1.0}}, {-1.0}};
    const LpOutcome out = lp_solve(poly, {1.0, 1.0}, Sense::minimize);
    REQUIRE(out.status == LpStatus::optimal);
    CHECK(out.value == doctest::Approx(1.0));
}

TEST_CASE("no constraints at all") {
    const Polyhedron poly;
    CHECK(lp_solve(poly, {-1.0, -2.0}, Sense::maximize).value == doctest::Approx(0.0));
    CHECK(lp_solve(poly, {1.0, 0.0}, Sense::maximize).status == LpStatus::unbounded);
}

TEST_CASE("degenerate instance known to cycle under naive pivoting") {
    // Beale's example; Bland's rule must terminate and match the oracle.
    const Polyhedron poly{{{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}},
                          {0.0, 0.0, 1.0}};
    const std::vector<double> c{0.75, -150.0, 0.02, -6.0};
    const LpOutcome fast = lp_solve(poly, c, Sense::maximize);
    const LpOutcome slow = oracle::lp_vertex_oracle(poly, c, Sense::maximize);
    REQUIRE(fast.status == LpStatus::optimal);
    REQUIRE(slow.status == LpStatus::optimal);
    CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-9));
    CHECK(poly.contains(fast.x));
}

TEST_CASE("agreement with the vertex-enumeration oracle on random instances") {
    std::mt19937_64 rng(20240812);
    std::uniform_int_distribution<int> m_of(1, 6), n_of(1, 6);
    int optimal_seen = 0, infeasible_seen = 0, unbounded_seen = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const int m = m_of(rng), n = n_of(rng);
        const Polyhedron poly = random_lp(rng, m, n);
        std::vector<double> c;
        std::uniform_int_distribution<int> coeff(-5, 5);
        for (int j = 0; j < n; ++j) c.push_back(coeff(rng));

        const LpOutcome fast = lp_solve(poly, c, Sense::maximize);
        const LpOutcome slow = oracle::lp_vertex_oracle(poly, c, Sense::maximize);
        REQUIRE(fast.status == slow.status);
        if (fast.status == LpStatus::optimal) {
            REQUIRE(std::abs(fast.value - slow.value) <= 1e-6);
            REQUIRE(poly.contains(fast.x)); // feasible => phase-1 artificials at zero
            ++optimal_seen;
        } else if (fast.status == LpStatus::infeasible) {
            ++infeasible_seen;
        } else {
            ++unbounded_seen;
        }
    }
    // The batch must actually exercise all three outcomes.
    CHECK(optimal_seen > 50);
    CHECK(infeasible_seen > 10);
    CHECK(unbounded_seen > 10);
}

TEST_CASE("deterministic output for a fixed input") {
    std::mt19937_64 rng(5);
    const Polyhedron poly = random_lp(rng, 4, 4);
    const std::vector<double> c{3.0, -1.0, 2.0, 0.0};
    const LpOutcome a = lp_solve(poly, c, Sense::maximize);
    const LpOutcome b = lp_solve(poly, c, Sense::maximize);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::optimal) {
        CHECK(a.value == b.value);
        CHECK(a.x == b.x);
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const Polyhedron poly{{{1.0, 2.0}}, {1.0}};
    CHECK_THROWS_AS(lp_solve(poly, {1.0}, Sense::maximize), ValidationError);
}

} // TEST_SUITE
