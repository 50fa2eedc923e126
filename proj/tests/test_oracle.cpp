#include <doctest.h>

#include <cmath>
#include <random>

#include "itsp/oracle.hpp"

using namespace itsp;

namespace {

UtspInstance make_utsp(int n, const std::vector<std::tuple<int, int, double, double>>& edges) {
    UtspInstance inst;
    inst.n = n;
    inst.speed = 1.0;
    inst.durations.assign(static_cast<std::size_t>(n),
                          std::vector<UncertainScalar>(static_cast<std::size_t>(n)));
    for (const auto& [i, j, lo, hi] : edges) {
        inst.durations[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
            UncertainScalar::interval(lo, hi);
        inst.durations[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] =
            UncertainScalar::interval(lo, hi);
    }
    return inst;
}

UtspInstance instance_e1() {
    return make_utsp(4, {{1, 2, 1, 2}, {1, 3, 4, 6}, {1, 4, 2, 3}, {2, 3, 2, 3}, {2, 4, 5, 7}, {3, 4, 1, 2}});
}

UtspInstance instance_e2() {
    return make_utsp(4, {{1, 2, 1, 5}, {3, 4, 1, 5}, {1, 3, 2, 3}, {2, 4, 2, 3}, {1, 4, 2, 3}, {2, 3, 2, 3}});
}

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

// Deliberately broken simplex: same tableau mechanics, but the leaving row is
// the first positive entry instead of the ratio-test winner, so intermediate
// bases go infeasible and reported optima drift. The vertex oracle has to
// catch this on some instance of the batch; if it never does, the oracle is
// rubber-stamping.
LpOutcome broken_simplex(const Polyhedron& poly, const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    const int m = poly.m();
    const int cols = n + m;
    std::vector<std::vector<double>> t(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(cols) + 1, 0.0));
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            poly.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1.0;
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] = poly.b[static_cast<std::size_t>(i)];
        basis[static_cast<std::size_t>(i)] = n + i;
    }
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<double> y(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            const int b = basis[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(i)] = b < n ? c[static_cast<std::size_t>(b)] : 0.0;
        }
        int entering = -1;
        for (int j = 0; j < cols && entering < 0; ++j) {
            double cbar = j < n ? c[static_cast<std::size_t>(j)] : 0.0;
            for (int i = 0; i < m; ++i)
                cbar -= y[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (cbar > 1e-9) entering = j;
        }
        if (entering < 0) break;
        int leaving = -1;
        for (int i = 0; i < m && leaving < 0; ++i)
            if (t[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)] > 1e-9) leaving = i;
        if (leaving < 0) return LpOutcome{LpStatus::unbounded, {}, 0.0};
        auto& pr = t[static_cast<std::size_t>(leaving)];
        const double p = pr[static_cast<std::size_t>(entering)];
        for (double& v : pr) v /= p;
        for (int i = 0; i < m; ++i) {
            if (i == leaving) continue;
            auto& ri = t[static_cast<std::size_t>(i)];
            const double f = ri[static_cast<std::size_t>(entering)];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) ri[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n)
            x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
                t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)];
    return LpOutcome{LpStatus::optimal, x, dot(c, x)};
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("vertex oracle on closed-form examples") {
    const Polyhedron box{{{1.0, 0.0}, {0.0, 1.0}}, {1.0, 1.0}};
    const LpOutcome unit = oracle::lp_vertex_oracle(box, {1.0, 1.0}, Sense::maximize);
    REQUIRE(unit.status == LpStatus::optimal);
    CHECK(unit.value == doctest::Approx(2.0));
    CHECK(unit.x[0] == doctest::Approx(1.0));

    // Inner region of c=[1], Y=[[1,2]], Z=[[2,4]] is 2x <= 2.
    const Polyhedron inner{{{2.0}}, {2.0}};
    const LpOutcome band = oracle::lp_vertex_oracle(inner, {1.0}, Sense::maximize);
    REQUIRE(band.status == LpStatus::optimal);
    CHECK(band.value == doctest::Approx(1.0));
    CHECK(band.x[0] == doctest::Approx(1.0));

    const Polyhedron empty{{{1.0}}, {-1.0}};
    CHECK(oracle::lp_vertex_oracle(empty, {1.0}, Sense::maximize).status == LpStatus::infeasible);

    const Polyhedron ray{{{0.0, 1.0}}, {1.0}};
    CHECK(oracle::lp_vertex_oracle(ray, {1.0, 0.0}, Sense::maximize).status == LpStatus::unbounded);

    const Polyhedron big{std::vector<std::vector<double>>(10, std::vector<double>(5, 1.0)),
                         std::vector<double>(10, 1.0)};
    CHECK_THROWS_AS(oracle::lp_vertex_oracle(big, std::vector<double>(5, 1.0), Sense::maximize),
                    CapError);
}

TEST_CASE("vertex oracle handles minimize sense") {
    const Polyhedron poly{{{-1.0, -1.0}}, {-1.0}};
    const LpOutcome out = oracle::lp_vertex_oracle(poly, {1.0, 1.0}, Sense::minimize);
    REQUIRE(out.status == LpStatus::optimal);
    CHECK(out.value == doctest::Approx(1.0));
}

TEST_CASE("tour enumeration oracle reproduces the reference tables") {
    const oracle::TourTable t1 = oracle::tour_enumeration_oracle(instance_e1());
    REQUIRE(t1.rows.size() == 3);
    CHECK(t1.maximin_tour == make_tour({1, 2, 3, 4}));
    CHECK(t1.v_star == doctest::Approx(10.0));
    CHECK(t1.hypograph_maximal == std::vector<Tour>{make_tour({1, 2, 3, 4})});
    CHECK(t1.edge_level_maximal == std::vector<Tour>{make_tour({1, 2, 3, 4})});

    const oracle::TourTable t2 = oracle::tour_enumeration_oracle(instance_e2());
    CHECK(t2.v_star == doctest::Approx(12.0));
    CHECK(t2.hypograph_maximal.size() == 3);
    CHECK(t2.edge_level_maximal == t2.hypograph_maximal);

    const oracle::TourTable t3 =
        oracle::tour_enumeration_oracle(make_utsp(3, {{1, 2, 1, 2}, {1, 3, 1, 2}, {2, 3, 1, 2}}));
    REQUIRE(t3.rows.size() == 1);
    CHECK(t3.hypograph_maximal == std::vector<Tour>{make_tour({1, 2, 3})});
    CHECK(t3.edge_level_maximal == t3.hypograph_maximal);
}

TEST_CASE("oracle table agrees with the solver stack on random instances") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> center(4, 36);
    std::uniform_int_distribution<int> half(0, 4);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 4 + static_cast<int>(rng() % 5); // 4..8
        UtspInstance inst;
        inst.n = n;
        inst.speed = 1.0;
        inst.durations.assign(static_cast<std::size_t>(n),
                              std::vector<UncertainScalar>(static_cast<std::size_t>(n)));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const double mid = center(rng) / 4.0;
                const double h = half(rng) / 4.0;
                const UncertainScalar u = UncertainScalar::interval(std::max(0.0, mid - h), mid + h);
                inst.durations[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = u;
                inst.durations[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = u;
            }

        const oracle::TourTable table = oracle::tour_enumeration_oracle(inst);
        const MaximalTourReport solved = solve_utsp_interval(inst);
        REQUIRE(solved.maximin_tour == table.maximin_tour);
        REQUIRE(std::abs(solved.maximin_value - table.v_star) <= 1e-9);
        REQUIRE(solved.hypograph_maximal == table.hypograph_maximal);
        REQUIRE(solved.edge_level_maximal == table.edge_level_maximal);
    }
}

TEST_CASE("proposition 1 checks") {
    CHECK(oracle::prop1_check(instance_e1()).agreement);
    CHECK(oracle::prop1_check(instance_e2()).agreement);

    LpuuInstance lp;
    lp.c = {1.0};
    lp.Y = {{UncertainScalar::interval(1, 2)}};
    lp.Z = {UncertainScalar::interval(2, 4)};
    lp.penalty_L = -10.0;
    const oracle::OracleReport r = oracle::prop1_check(lp);
    CHECK(r.agreement);
    CHECK(r.cases_checked == 1);

    // Infeasible inner region: vacuous agreement, nothing checked.
    lp.Z = {UncertainScalar::interval(-4, -2)};
    const oracle::OracleReport empty = oracle::prop1_check(lp);
    CHECK(empty.agreement);
    CHECK(empty.cases_checked == 0);
}

TEST_CASE("oracle reports are deterministic") {
    const UtspInstance inst = instance_e2();
    const oracle::TourTable a = oracle::tour_enumeration_oracle(inst);
    const oracle::TourTable b = oracle::tour_enumeration_oracle(inst);
    CHECK(a.v_star == b.v_star);
    CHECK(a.hypograph_maximal == b.hypograph_maximal);
    CHECK(a.edge_level_maximal == b.edge_level_maximal);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].length_bounds == b.rows[i].length_bounds);
        CHECK(a.rows[i].tour == b.rows[i].tour);
    }
}

TEST_CASE("mutated pivoting trips the vertex oracle") {
    std::mt19937_64 rng(31337);
    int disagreements = 0;
    int compared = 0;
    for (int rep = 0; rep < 120; ++rep) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % 4);
        const Polyhedron poly = random_lp(rng, m, n);
        bool nonneg_rhs = true;
        for (double b : poly.b) nonneg_rhs = nonneg_rhs && b >= 0.0;
        if (!nonneg_rhs) continue; // the mutant has no phase 1; keep it on its turf

        std::vector<double> c;
        std::uniform_int_distribution<int> coeff(-5, 5);
        for (int j = 0; j < n; ++j) c.push_back(coeff(rng));

        const LpOutcome mutant = broken_simplex(poly, c);
        const LpOutcome truth = oracle::lp_vertex_oracle(poly, c, Sense::maximize);
        ++compared;
        if (mutant.status != truth.status ||
            (truth.status == LpStatus::optimal && std::abs(mutant.value - truth.value) > 1e-6))
            ++disagreements;
    }
    CHECK(compared > 40);
    CHECK(disagreements > 0); // the oracle must not rubber-stamp broken pivoting
}

} // TEST_SUITE
