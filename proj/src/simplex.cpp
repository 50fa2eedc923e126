#include "itsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

// Dense two-phase primal simplex.
//
// The tableau keeps the m constraint rows only; reduced costs are recomputed
// from the cost vector and the basis each iteration. Bland's smallest-index
// rule picks both the entering column and the leaving row, so cycling cannot
// occur and results are deterministic. Rows whose artificial variable cannot
// be driven out after phase 1 are redundant and get dropped.

namespace itsp {

namespace {

constexpr double kPivotTol = 1e-9;   // entries below this are not pivots
constexpr double kPivotFloor = 1e-11; // executing a pivot below this is a numeric failure
constexpr double kReducedCostTol = 1e-9;
constexpr double kPhase1FeasTol = 1e-7;
constexpr long kMaxIterations = 200000;

struct Tableau {
    int m = 0;      // constraint rows
    int ncols = 0;  // variables (structural + slack + artificial)
    std::vector<std::vector<double>> t; // m rows, ncols + 1 (rhs last)
    std::vector<int> basis;             // basic variable per row

    double& rhs(int i) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncols)]; }
    double rhs(int i) const { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncols)]; }

    void pivot(int row, int col) {
        auto& pr = t[static_cast<std::size_t>(row)];
        const double p = pr[static_cast<std::size_t>(col)];
        if (std::abs(p) < kPivotFloor) throw NumericError("numeric failure: vanishing pivot");
        for (double& v : pr) v /= p;
        pr[static_cast<std::size_t>(col)] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            auto& ri = t[static_cast<std::size_t>(i)];
            const double f = ri[static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j)
                ri[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
            ri[static_cast<std::size_t>(col)] = 0.0;
        }
        basis[static_cast<std::size_t>(row)] = col;
    }
};

enum class IterateResult { optimal, unbounded };

// Maximises cost over the tableau. `last_entering` bounds the columns allowed
// to enter (artificials are excluded in phase 2 by passing a smaller bound).
IterateResult iterate(Tableau& tb, const std::vector<double>& cost, int last_entering,
                      long& iterations) {
    while (true) {
        if (++iterations > kMaxIterations)
            throw NumericError("numeric failure: iteration cap exceeded, cycling suspected");

        // Reduced costs from scratch: cbar_j = c_j - y . column_j.
        std::vector<double> y(static_cast<std::size_t>(tb.m));
        for (int i = 0; i < tb.m; ++i)
            y[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(tb.basis[static_cast<std::size_t>(i)])];

        int entering = -1;
        for (int j = 0; j < last_entering; ++j) {
            double cbar = cost[static_cast<std::size_t>(j)];
            for (int i = 0; i < tb.m; ++i)
                cbar -= y[static_cast<std::size_t>(i)] * tb.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (cbar > kReducedCostTol) {
                entering = j; // Bland: first improving index
                break;
            }
        }
        if (entering < 0) return IterateResult::optimal;

        int leaving = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < tb.m; ++i) {
            const double a = tb.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
            if (a <= kPivotTol) continue;
            const double ratio = tb.rhs(i) / a;
            if (leaving < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 tb.basis[static_cast<std::size_t>(i)] < tb.basis[static_cast<std::size_t>(leaving)])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving < 0) return IterateResult::unbounded;
        tb.pivot(leaving, entering);
    }
}

} // namespace

std::string to_string(LpStatus s) {
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

LpOutcome lp_solve(const Polyhedron& poly, const std::vector<double>& c, Sense sense) {
    const int n = static_cast<int>(c.size());
    const int m = poly.m();
    for (int i = 0; i < m; ++i)
        if (static_cast<int>(poly.A[static_cast<std::size_t>(i)].size()) != n) {
            std::ostringstream os;
            os << "lp_solve: row " << i << " has " << poly.A[static_cast<std::size_t>(i)].size()
               << " coefficients, objective has " << n;
            throw ValidationError(os.str());
        }

    std::vector<double> obj = c;
    if (sense == Sense::minimize)
        for (double& v : obj) v = -v;

    // Rows with negative rhs are negated and receive an artificial variable.
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i)
        if (poly.b[static_cast<std::size_t>(i)] < 0.0) art_rows.push_back(i);
    const int p = static_cast<int>(art_rows.size());

    Tableau tb;
    tb.m = m;
    tb.ncols = n + m + p;
    tb.t.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(tb.ncols) + 1, 0.0));
    tb.basis.assign(static_cast<std::size_t>(m), -1);

    int next_art = 0;
    for (int i = 0; i < m; ++i) {
        auto& row = tb.t[static_cast<std::size_t>(i)];
        const bool flip = poly.b[static_cast<std::size_t>(i)] < 0.0;
        const double sgn = flip ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j)
            row[static_cast<std::size_t>(j)] = sgn * poly.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n + i)] = sgn; // slack
        tb.rhs(i) = sgn * poly.b[static_cast<std::size_t>(i)];
        if (flip) {
            const int art_col = n + m + next_art++;
            row[static_cast<std::size_t>(art_col)] = 1.0;
            tb.basis[static_cast<std::size_t>(i)] = art_col;
        } else {
            tb.basis[static_cast<std::size_t>(i)] = n + i;
        }
    }

    long iterations = 0;

    if (p > 0) {
        // Phase 1: maximise -(sum of artificials).
        std::vector<double> phase1(static_cast<std::size_t>(tb.ncols), 0.0);
        for (int k = 0; k < p; ++k) phase1[static_cast<std::size_t>(n + m + k)] = -1.0;
        iterate(tb, phase1, tb.ncols, iterations); // cannot be unbounded: objective <= 0

        double art_sum = 0.0;
        for (int i = 0; i < tb.m; ++i)
            if (tb.basis[static_cast<std::size_t>(i)] >= n + m) art_sum += tb.rhs(i);
        if (art_sum > kPhase1FeasTol) return LpOutcome{LpStatus::infeasible, {}, 0.0};

        // Drive leftover zero-valued artificials out of the basis on the
        // largest structural/slack entry; rows with none are redundant.
        for (int i = tb.m - 1; i >= 0; --i) {
            if (tb.basis[static_cast<std::size_t>(i)] < n + m) continue;
            int col = -1;
            double best = kPivotTol;
            for (int j = 0; j < n + m; ++j) {
                const double mag = std::abs(tb.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                if (mag > best) {
                    best = mag;
                    col = j;
                }
            }
            if (col >= 0) {
                tb.pivot(i, col);
            } else {
                tb.t.erase(tb.t.begin() + i);
                tb.basis.erase(tb.basis.begin() + i);
                --tb.m;
            }
        }
    }

    // Phase 2: artificial columns may not re-enter.
    std::vector<double> phase2(static_cast<std::size_t>(tb.ncols), 0.0);
    std::copy(obj.begin(), obj.end(), phase2.begin());
    if (iterate(tb, phase2, n + m, iterations) == IterateResult::unbounded)
        return LpOutcome{LpStatus::unbounded, {}, 0.0};

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < tb.m; ++i)
        if (tb.basis[static_cast<std::size_t>(i)] < n)
            x[static_cast<std::size_t>(tb.basis[static_cast<std::size_t>(i)])] = tb.rhs(i);

    const double value = dot(c, x);
    return LpOutcome{LpStatus::optimal, std::move(x), value};
}

} // namespace itsp
