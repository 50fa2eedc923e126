#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "itsp/lpuu.hpp"
#include "itsp/oracle.hpp"

using namespace itsp;

namespace {

// c = [1], Y = [[1,2]], Z = [[2,4]]: inner 2x <= 2, outer x <= 4.
LpuuInstance band_instance(double L = -10.0) {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::interval(1, 2)}};
    inst.Z = {UncertainScalar::interval(2, 4)};
    inst.penalty_L = L;
    return inst;
}

// Dense grid search for the upper prevision of G_x - G_w over the box; the
// independent route for the five-case expression. Gridded coordinates are
// the nondegenerate entries of Y and Z.
double grid_upper_gain_difference(const LpuuInstance& inst, const std::vector<double>& x,
                                  const std::vector<double>& w, int points) {
    const int m = inst.m();
    const int n = inst.n();
    std::vector<Interval> bounds;
    for (const auto& row : inst.Y)
        for (const auto& u : row) bounds.push_back(interval_bounds(u));
    for (const auto& u : inst.Z) bounds.push_back(interval_bounds(u));

    const std::vector<double> c = normalized_objective(inst);
    const double cx = dot(c, x);
    const double cw = dot(c, w);

    std::vector<double> v(bounds.size());
    double best = -1e300;
    auto eval = [&]() {
        bool x_ok = true, w_ok = true;
        for (int k = 0; k < m; ++k) {
            double yx = 0.0, yw = 0.0;
            for (int l = 0; l < n; ++l) {
                const double ykl = v[static_cast<std::size_t>(k * n + l)];
                yx += ykl * x[static_cast<std::size_t>(l)];
                yw += ykl * w[static_cast<std::size_t>(l)];
            }
            const double zk = v[static_cast<std::size_t>(m * n + k)];
            if (yx > zk + 1e-9) x_ok = false;
            if (yw > zk + 1e-9) w_ok = false;
        }
        const double gx = x_ok ? cx : inst.penalty_L;
        const double gw = w_ok ? cw : inst.penalty_L;
        best = std::max(best, gx - gw);
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == bounds.size()) {
            eval();
            return;
        }
        const Interval b = bounds[i];
        if (b.width() == 0.0) {
            v[i] = b.lo;
            self(self, i + 1);
            return;
        }
        for (int p = 0; p < points; ++p) {
            v[i] = b.lo + b.width() * p / (points - 1);
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return best;
}

LpuuInstance random_interval_lpuu(std::mt19937_64& rng, int m, int n) {
    std::uniform_int_distribution<int> center(1, 12);  // quarters
    std::uniform_int_distribution<int> half(0, 3);     // quarters
    std::uniform_int_distribution<int> zcenter(2, 24); // quarters
    std::uniform_int_distribution<int> csign(-4, 12);
    LpuuInstance inst;
    for (int j = 0; j < n; ++j) inst.c.push_back(csign(rng) / 4.0);
    for (int i = 0; i < m; ++i) {
        std::vector<UncertainScalar> row;
        for (int j = 0; j < n; ++j) {
            const double mid = center(rng) / 4.0;
            const double h = half(rng) / 4.0;
            row.push_back(UncertainScalar::interval(std::max(0.25, mid - h), mid + h));
        }
        inst.Y.push_back(std::move(row));
    }
    for (int k = 0; k < m; ++k) {
        const double mid = zcenter(rng) / 4.0;
        const double h = half(rng) / 4.0;
        inst.Z.push_back(UncertainScalar::interval(mid - h, mid + h));
    }
    inst.penalty_L = -1000.0;
    return inst;
}

} // namespace

TEST_SUITE("lpuu") {

TEST_CASE("gain function examples") {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::crisp(1)}};
    inst.Z = {UncertainScalar::crisp(3)};
    inst.penalty_L = -10.0;
    CHECK(gain({2.0}, {{1.0}}, {3.0}, inst) == 2.0);
    CHECK(gain({4.0}, {{1.0}}, {3.0}, inst) == -10.0);

    LpuuInstance origin;
    origin.c = {1.0, 1.0};
    origin.Y = {{UncertainScalar::crisp(2), UncertainScalar::crisp(5)}};
    origin.Z = {UncertainScalar::crisp(0)};
    origin.penalty_L = -10.0;
    CHECK(gain({0.0, 0.0}, {{2.0, 5.0}}, {0.0}, origin) == 0.0);
}

TEST_CASE("inner and outer polyhedra take the right bounds") {
    const LpuuInstance inst = band_instance();
    const Polyhedron inner = inner_polyhedron(inst);
    CHECK(inner.A == std::vector<std::vector<double>>{{2.0}});
    CHECK(inner.b == std::vector<double>{2.0});
    const Polyhedron outer = outer_polyhedron(inst);
    CHECK(outer.A == std::vector<std::vector<double>>{{1.0}});
    CHECK(outer.b == std::vector<double>{4.0});

    LpuuInstance crisp;
    crisp.c = {1.0};
    crisp.Y = {{UncertainScalar::crisp(1)}};
    crisp.Z = {UncertainScalar::crisp(3)};
    crisp.penalty_L = -10.0;
    const FeasibilityRegions regions = feasibility_regions(crisp);
    CHECK(regions.inner.A == regions.outer.A);
    CHECK(regions.inner.b == regions.outer.b);

    LpuuInstance two;
    two.c = {1.0, 1.0};
    two.Y = {{UncertainScalar::interval(1, 2), UncertainScalar::interval(0, 1)}};
    two.Z = {UncertainScalar::interval(3, 5)};
    two.penalty_L = -10.0;
    CHECK(inner_polyhedron(two).A == std::vector<std::vector<double>>{{2.0, 1.0}});
    CHECK(inner_polyhedron(two).b == std::vector<double>{3.0});
    CHECK(outer_polyhedron(two).A == std::vector<std::vector<double>>{{1.0, 0.0}});
    CHECK(outer_polyhedron(two).b == std::vector<double>{5.0});
}

TEST_CASE("interval maximin agrees with the vertex oracle") {
    const LpuuInstance inst = band_instance();
    const MaximinResult r = maximin_interval(inst);
    REQUIRE(r.outcome.status == LpStatus::optimal);
    CHECK(r.outcome.value == doctest::Approx(1.0));
    CHECK(r.outcome.x[0] == doctest::Approx(1.0));
    const LpOutcome check =
        oracle::lp_vertex_oracle(inner_polyhedron(inst), inst.c, Sense::maximize);
    CHECK(check.value == doctest::Approx(r.outcome.value));

    LpuuInstance infeasible = band_instance();
    infeasible.Z = {UncertainScalar::interval(-4, -2)};
    CHECK(maximin_interval(infeasible).outcome.status == LpStatus::infeasible);

    LpuuInstance crisp;
    crisp.c = {3.0, 2.0};
    crisp.Y = {{UncertainScalar::crisp(1), UncertainScalar::crisp(0)},
               {UncertainScalar::crisp(0), UncertainScalar::crisp(1)}};
    crisp.Z = {UncertainScalar::crisp(2), UncertainScalar::crisp(3)};
    crisp.penalty_L = -1e7;
    const MaximinResult rc = maximin_interval(crisp);
    REQUIRE(rc.outcome.status == LpStatus::optimal);
    CHECK(rc.outcome.value == doctest::Approx(12.0));
    CHECK(rc.outcome.x == std::vector<double>{2.0, 3.0});
    const LpOutcome oc = oracle::lp_vertex_oracle(inner_polyhedron(crisp), crisp.c, Sense::maximize);
    CHECK(oc.value == doctest::Approx(12.0));
}

TEST_CASE("maximal membership closed form") {
    const LpuuInstance inst = band_instance();
    CHECK(maximal_membership_interval(inst, {2.5}).is_maximal);
    CHECK_FALSE(maximal_membership_interval(inst, {0.5}).is_maximal);
    CHECK_FALSE(maximal_membership_interval(inst, {5.0}).is_maximal);
    CHECK_FALSE(maximal_membership_interval(inst, {2.5}).degenerate_inner_empty);

    LpuuInstance empty = band_instance();
    empty.Z = {UncertainScalar::interval(-4, -2)};
    for (double v : {0.0, 1.0, 100.0}) {
        const MaximalVerdict verdict = maximal_membership_interval(empty, {v});
        CHECK(verdict.degenerate_inner_empty);
        CHECK(verdict.is_maximal); // degenerate_inner_empty implies maximal
    }
}

TEST_CASE("maximin sense normalization round-trips") {
    LpuuInstance inst;
    inst.sense = Sense::minimize;
    inst.c = {-1.0}; // minimize -x == maximize x
    inst.Y = {{UncertainScalar::interval(1, 2)}};
    inst.Z = {UncertainScalar::interval(2, 4)};
    inst.penalty_L = -1e7;
    const MaximinResult r = maximin_interval(inst);
    REQUIRE(r.outcome.status == LpStatus::optimal);
    CHECK(r.outcome.x[0] == doctest::Approx(1.0));
    CHECK(r.outcome.value == doctest::Approx(-1.0)); // reported in the minimize sense
    CHECK(maximal_membership_interval(inst, {2.5}).is_maximal);
    CHECK_FALSE(maximal_membership_interval(inst, {0.5}).is_maximal);
}

TEST_CASE("upper gain difference: published examples") {
    const LpuuInstance inst = band_instance(-10.0);
    const UpperGainDifference r = upper_gain_difference_detailed(inst, {0.5}, {2.0});
    CHECK(r.case_id == 1);
    CHECK(r.value == doctest::Approx(10.5));
    CHECK(grid_upper_gain_difference(inst, {0.5}, {2.0}, 51) == doctest::Approx(10.5));

    CHECK(upper_gain_difference(inst, {1.5}, {1.5}) == doctest::Approx(0.0));

    LpuuInstance crisp;
    crisp.c = {2.0};
    crisp.Y = {{UncertainScalar::crisp(1)}};
    crisp.Z = {UncertainScalar::crisp(10)};
    crisp.penalty_L = -50.0;
    const UpperGainDifference rc = upper_gain_difference_detailed(crisp, {1.0}, {3.0});
    CHECK(rc.case_id == 4);
    CHECK(rc.value == doctest::Approx(2.0 - 6.0));
}

TEST_CASE("quadrant witnesses off the box corners are still found") {
    // With x = 2.05 and w = 2.15 on y in [1,2], z in [2,4], the set
    // { (y,z) : 2.05 y <= z < 2.15 y } contains no corner of the box (the
    // witness is e.g. y = 1, z = 2.1), so corner enumeration would misfile
    // this pair as case 3; the feasibility LPs must land in case 1.
    const LpuuInstance inst = band_instance(-10.0);
    const UpperGainDifference r = upper_gain_difference_detailed(inst, {2.05}, {2.15});
    CHECK(r.case_id == 1);
    CHECK(r.value == doctest::Approx(2.05 + 10.0));
    CHECK(grid_upper_gain_difference(inst, {2.05}, {2.15}, 201) == doctest::Approx(12.05));
}

TEST_CASE("upper gain difference matches the dense grid oracle") {
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<int> quarter(0, 10);
    int case_seen[6] = {0, 0, 0, 0, 0, 0};
    for (int rep = 0; rep < 60; ++rep) {
        // m, n in {1, 2} with at most 4 nondegenerate coordinates.
        const int m = 1 + static_cast<int>(rng() % 2);
        const int n = 1 + static_cast<int>(rng() % 2);
        LpuuInstance inst = random_interval_lpuu(rng, m, n);
        int wide = 0;
        for (auto& row : inst.Y)
            for (auto& u : row) {
                const Interval b = interval_bounds(u);
                if (b.width() > 0 && ++wide > 2) u = UncertainScalar::crisp(b.mid());
            }
        for (auto& u : inst.Z) {
            const Interval b = interval_bounds(u);
            if (b.width() > 0 && ++wide > 4) u = UncertainScalar::crisp(b.mid());
        }

        std::vector<double> x, w;
        for (int j = 0; j < n; ++j) x.push_back(quarter(rng) / 4.0);
        for (int j = 0; j < n; ++j) w.push_back(quarter(rng) / 4.0);

        const UpperGainDifference r = upper_gain_difference_detailed(inst, x, w);
        const double grid = grid_upper_gain_difference(inst, x, w, 41);
        REQUIRE(std::abs(r.value - grid) <= 1e-6);
        REQUIRE(r.case_id >= 1);
        REQUIRE(r.case_id <= 5);
        if (r.case_id <= 3) REQUIRE(r.value >= -1e-9);
        if (r.case_id == 5) REQUIRE(r.value <= 1e-9);
        ++case_seen[r.case_id];
    }
    CHECK(case_seen[1] > 0); // the batch exercises multiple branches
    CHECK(case_seen[3] + case_seen[4] > 0);
}

TEST_CASE("maximality closed form is consistent with the pairwise definition") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const LpuuInstance inst = random_interval_lpuu(rng, 1 + static_cast<int>(rng() % 2), n);
        const MaximinResult mm = maximin_interval(inst);
        if (mm.outcome.status != LpStatus::optimal) continue;

        // w-grid over [0, 4]^n plus the maximin point itself.
        std::vector<std::vector<double>> w_grid;
        if (n == 1) {
            for (int a = 0; a <= 16; ++a) w_grid.push_back({a / 4.0});
        } else {
            for (int a = 0; a <= 8; ++a)
                for (int b = 0; b <= 8; ++b) w_grid.push_back({a / 2.0, b / 2.0});
        }
        w_grid.push_back(mm.outcome.x);

        for (int xi = 0; xi < 8; ++xi) {
            std::vector<double> x;
            for (int j = 0; j < n; ++j) x.push_back(static_cast<double>(rng() % 17) / 4.0);
            const bool closed_form = maximal_membership_interval(inst, x).is_maximal;
            double worst = 1e300;
            for (const auto& w : w_grid) worst = std::min(worst, upper_gain_difference(inst, x, w));
            const bool by_definition = worst >= -1e-6;
            REQUIRE(closed_form == by_definition);
        }
    }
}

TEST_CASE("interval results do not depend on the penalty value") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 3);
        LpuuInstance inst = random_interval_lpuu(rng, m, n);
        std::vector<double> probe;
        for (int j = 0; j < n; ++j) probe.push_back(static_cast<double>(rng() % 9) / 2.0);

        LpOutcome base;
        MaximalVerdict base_verdict;
        bool first = true;
        for (double L : {-1.0, -1e3, -1e6}) {
            inst.penalty_L = L;
            const MaximinResult r = maximin_interval(inst);
            const MaximalVerdict v = maximal_membership_interval(inst, probe);
            if (first) {
                base = r.outcome;
                base_verdict = v;
                first = false;
            } else {
                REQUIRE(r.outcome.status == base.status);
                if (base.status == LpStatus::optimal) {
                    REQUIRE(r.outcome.value == base.value);
                    REQUIRE(r.outcome.x == base.x);
                }
                REQUIRE(v.is_maximal == base_verdict.is_maximal);
                REQUIRE(v.degenerate_inner_empty == base_verdict.degenerate_inner_empty);
            }
        }
    }
}

TEST_CASE("inner region is nested in the outer region") {
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 30; ++rep) {
        const LpuuInstance inst = random_interval_lpuu(rng, 1 + static_cast<int>(rng() % 3),
                                                       1 + static_cast<int>(rng() % 3));
        const FeasibilityRegions regions = feasibility_regions(inst);
        for (int s = 0; s < 40; ++s) {
            std::vector<double> x;
            for (int j = 0; j < inst.n(); ++j) x.push_back(static_cast<double>(rng() % 33) / 4.0);
            if (regions.inner.contains(x)) REQUIRE(regions.outer.contains(x));
        }
    }
}

TEST_CASE("maximin solutions are maximal (proposition 1, lpuu)") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const LpuuInstance inst = random_interval_lpuu(rng, 1 + static_cast<int>(rng() % 3),
                                                       1 + static_cast<int>(rng() % 3));
        const MaximinResult mm = maximin_interval(inst);
        if (mm.outcome.status != LpStatus::optimal) continue;
        REQUIRE(maximal_membership_interval(inst, mm.outcome.x).is_maximal);
        ++checked;
    }
    CHECK(checked > 25);
}

TEST_CASE("monte carlo feasibility estimates") {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::crisp(1)}};
    inst.Z = {UncertainScalar::uniform(0, 1)};
    inst.penalty_L = -10.0;

    const McEstimate mid = feasibility_probability_mc(inst, {0.5}, 10000, 7);
    CHECK(std::abs(mid.estimate - 0.5) <= 3.0 * mid.stderr_est);

    CHECK(feasibility_probability_mc(inst, {0.0}, 1000, 7).estimate == 1.0);
    CHECK(feasibility_probability_mc(inst, {2.0}, 1000, 7).estimate == 0.0);

    // Bit-for-bit determinism per seed.
    const McEstimate a = feasibility_probability_mc(inst, {0.5}, 5000, 42);
    const McEstimate b = feasibility_probability_mc(inst, {0.5}, 5000, 42);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_est == b.stderr_est);

    CHECK_THROWS_AS(feasibility_probability_mc(inst, {0.5}, 50, 1), ValidationError);
}

TEST_CASE("monte carlo estimator calibration across seeds") {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::crisp(1)}};
    inst.Z = {UncertainScalar::uniform(0, 1)};
    inst.penalty_L = -10.0;

    double mean = 0.0;
    std::vector<double> estimates;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const McEstimate e = feasibility_probability_mc(inst, {0.5}, 10000, seed);
        estimates.push_back(e.estimate);
        mean += e.estimate;
    }
    mean /= 30.0;
    CHECK(std::abs(mean - 0.5) <= 0.01);

    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    const double empirical_sd = std::sqrt(var / 29.0);
    const double formula_sd = std::sqrt(0.5 * 0.5 / 10000.0);
    CHECK(empirical_sd <= 2.0 * formula_sd);
    CHECK(empirical_sd >= 0.5 * formula_sd);
}

TEST_CASE("probabilistic maximin scores candidates") {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::crisp(1)}};
    inst.Z = {UncertainScalar::uniform(0, 1)};
    inst.penalty_L = -10.0;

    const ScoredCandidate best = maximin_probabilistic(inst, {{0.0}, {0.5}, {1.0}}, 20000, 11);
    CHECK(best.x == std::vector<double>{0.0});
    CHECK(best.score == doctest::Approx(10.0).epsilon(0.02));

    // Same master seed, same candidate order: identical result.
    const ScoredCandidate rerun = maximin_probabilistic(inst, {{0.0}, {0.5}, {1.0}}, 20000, 11);
    CHECK(rerun.score == best.score);
    CHECK(rerun.feas_prob == best.feas_prob);

    // All candidates infeasible with probability 1: lexicographically
    // smallest wins with score 0.
    const ScoredCandidate zero = maximin_probabilistic(inst, {{9.0}, {3.0}, {5.0}}, 1000, 3);
    CHECK(zero.score == 0.0);
    CHECK(zero.x == std::vector<double>{3.0});

    CHECK_THROWS_AS(maximin_probabilistic(inst, {}, 1000, 1), ValidationError);
}

TEST_CASE("probabilistic maximin on point masses matches the crisp LP") {
    LpuuInstance inst;
    inst.c = {2.0, 1.0};
    inst.Y = {{UncertainScalar::discrete({1.0}, {1.0}), UncertainScalar::discrete({1.0}, {1.0})}};
    inst.Z = {UncertainScalar::discrete({2.0}, {1.0})};
    inst.penalty_L = -100.0;

    std::vector<std::vector<double>> candidates;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) candidates.push_back({a / 2.0, b / 2.0});

    const ScoredCandidate best = maximin_probabilistic(inst, candidates, 500, 5);

    // Exhaustive scoring by hand: feasible candidates keep c.x - L, others 0.
    std::vector<double> best_x;
    double best_score = -1.0;
    for (const auto& x : candidates) {
        const double score = (x[0] + x[1] <= 2.0 + 1e-9) ? (2 * x[0] + x[1] + 100.0) : 0.0;
        if (score > best_score) {
            best_score = score;
            best_x = x;
        }
    }
    CHECK(best.x == best_x);
    CHECK(best.score == doctest::Approx(best_score));
}

TEST_CASE("minimize instances mirror their maximize twins") {
    LpuuInstance min_inst = band_instance(-10.0);
    min_inst.sense = Sense::minimize;
    min_inst.c = {-1.0};
    const LpuuInstance max_inst = band_instance(-10.0);
    for (double x : {0.5, 1.5, 2.5}) {
        for (double w : {0.0, 2.0, 4.5}) {
            const UpperGainDifference a = upper_gain_difference_detailed(min_inst, {x}, {w});
            const UpperGainDifference b = upper_gain_difference_detailed(max_inst, {x}, {w});
            REQUIRE(a.case_id == b.case_id);
            REQUIRE(a.value == b.value);
        }
        REQUIRE(maximal_membership_interval(min_inst, {x}).is_maximal ==
                maximal_membership_interval(max_inst, {x}).is_maximal);
    }
}

TEST_CASE("unbounded inner objective leaves nothing maximal") {
    LpuuInstance inst;
    inst.c = {1.0};
    inst.Y = {{UncertainScalar::crisp(0)}}; // constraint never binds x
    inst.Z = {UncertainScalar::crisp(1)};
    inst.penalty_L = -10.0;
    REQUIRE(maximin_interval(inst).outcome.status == LpStatus::unbounded);
    for (double v : {0.0, 1.0, 1e6}) {
        const MaximalVerdict verdict = maximal_membership_interval(inst, {v});
        CHECK_FALSE(verdict.is_maximal);
        CHECK_FALSE(verdict.degenerate_inner_empty);
    }
}

TEST_CASE("kind preconditions are enforced") {
    const LpuuInstance interval = band_instance(-1e7);
    CHECK_THROWS_AS(feasibility_probability_mc(interval, {0.5}, 1000, 1), ValidationError);

    LpuuInstance dist;
    dist.c = {1.0};
    dist.Y = {{UncertainScalar::uniform(1, 2)}};
    dist.Z = {UncertainScalar::uniform(2, 4)};
    dist.penalty_L = -10.0;
    CHECK_THROWS_AS(maximin_interval(dist), ValidationError);
    CHECK_THROWS_AS(upper_gain_difference(dist, {0.0}, {0.0}), ValidationError);
}

} // TEST_SUITE
