#include "itsp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace itsp::oracle {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kRayTol = 1e-7;

using Matrix = std::vector<std::vector<double>>;

// Solves the square system M x = rhs by Gaussian elimination with partial
// pivoting; returns false when singular.
bool solve_square(Matrix M, std::vector<double> rhs, std::vector<double>& x) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        if (std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-10) return false;
        std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(col)]);
        std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                             M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int c2 = col; c2 < n; ++c2)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -=
                    f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)] /
                                          M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return true;
}

// One-dimensional null direction of a (n-1) x n system of full row rank;
// returns false when the rows are dependent.
bool null_direction(Matrix M, std::vector<double>& d) {
    const int rows = static_cast<int>(M.size());
    const int n = rows + 1;
    std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
    int row = 0;
    std::vector<bool> used_col(static_cast<std::size_t>(n), false);
    for (int col = 0; col < n && row < rows; ++col) {
        int piv = -1;
        double best = 1e-10;
        for (int r = row; r < rows; ++r)
            if (std::abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > best) {
                best = std::abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(row)]);
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            const double f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                             M[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int c2 = 0; c2 < n; ++c2)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -=
                    f * M[static_cast<std::size_t>(row)][static_cast<std::size_t>(c2)];
        }
        pivot_col[static_cast<std::size_t>(row)] = col;
        used_col[static_cast<std::size_t>(col)] = true;
        ++row;
    }
    if (row < rows) return false; // rank deficient
    int free_col = -1;
    for (int col = 0; col < n; ++col)
        if (!used_col[static_cast<std::size_t>(col)]) {
            free_col = col;
            break;
        }
    d.assign(static_cast<std::size_t>(n), 0.0);
    d[static_cast<std::size_t>(free_col)] = 1.0;
    for (int r = 0; r < rows; ++r) {
        const int pc = pivot_col[static_cast<std::size_t>(r)];
        d[static_cast<std::size_t>(pc)] = -M[static_cast<std::size_t>(r)][static_cast<std::size_t>(free_col)] /
                                           M[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)];
    }
    double norm = 0.0;
    for (double v : d) norm = std::max(norm, std::abs(v));
    for (double& v : d) v /= norm;
    return true;
}

void subsets_rec(int from, int count, int total, std::vector<int>& pick,
                 const std::function<void(const std::vector<int>&)>& fn) {
    if (count == 0) {
        fn(pick);
        return;
    }
    for (int i = from; i <= total - count; ++i) {
        pick.push_back(i);
        subsets_rec(i + 1, count - 1, total, pick, fn);
        pick.pop_back();
    }
}

void for_each_subset(int total, int count, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    subsets_rec(0, count, total, pick, fn);
}

} // namespace

LpOutcome lp_vertex_oracle(const Polyhedron& poly, const std::vector<double>& c, Sense sense) {
    const int n = static_cast<int>(c.size());
    const int m = poly.m();
    if (m + n > 14) {
        std::ostringstream os;
        os << "lp_vertex_oracle: m + n = " << m + n << " exceeds cap 14";
        throw CapError(os.str());
    }

    std::vector<double> obj = c;
    if (sense == Sense::minimize)
        for (double& v : obj) v = -v;

    // Constraint normals: the m rows of A, then -e_j for x_j >= 0.
    const int total = m + n;
    auto normal = [&](int i, int j) -> double {
        if (i < m) return poly.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return i - m == j ? -1.0 : 0.0;
    };
    auto offset = [&](int i) -> double { return i < m ? poly.b[static_cast<std::size_t>(i)] : 0.0; };

    bool found = false;
    std::vector<double> best_x;
    double best_value = -std::numeric_limits<double>::infinity();

    for_each_subset(total, n, [&](const std::vector<int>& pick) {
        Matrix M(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
        std::vector<double> rhs(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            for (int j = 0; j < n; ++j)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    normal(pick[static_cast<std::size_t>(r)], j);
            rhs[static_cast<std::size_t>(r)] = offset(pick[static_cast<std::size_t>(r)]);
        }
        std::vector<double> x;
        if (!solve_square(std::move(M), std::move(rhs), x)) return;
        if (!poly.contains(x, kFeasTol)) return;
        const double value = dot(obj, x);
        if (!found || value > best_value) {
            found = true;
            best_value = value;
            best_x = std::move(x);
        }
    });

    if (!found) return LpOutcome{LpStatus::infeasible, {}, 0.0};

    // Recession scan: every extreme ray has n-1 linearly independent active
    // constraints among the normals; test both signs of each null direction.
    bool unbounded = false;
    for_each_subset(total, n - 1, [&](const std::vector<int>& pick) {
        if (unbounded) return;
        Matrix M;
        M.reserve(pick.size());
        for (int idx : pick) {
            std::vector<double> row(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = normal(idx, j);
            M.push_back(std::move(row));
        }
        std::vector<double> d;
        if (!null_direction(std::move(M), d)) return;
        for (int s = 0; s < 2; ++s) {
            bool recession = true;
            for (int i = 0; i < total && recession; ++i) {
                double gd = 0.0;
                for (int j = 0; j < n; ++j) gd += normal(i, j) * d[static_cast<std::size_t>(j)];
                if (gd > kFeasTol) recession = false;
            }
            if (recession && dot(obj, d) > kRayTol) {
                unbounded = true;
                return;
            }
            for (double& v : d) v = -v;
        }
    });
    if (unbounded) return LpOutcome{LpStatus::unbounded, {}, 0.0};

    const double reported = sense == Sense::minimize ? -best_value : best_value;
    return LpOutcome{LpStatus::optimal, std::move(best_x), reported};
}

TourTable tour_enumeration_oracle(const UtspInstance& inst, const TspCaps& caps) {
    const int n = inst.n;
    const int cap = std::min(caps.oracle, 10);
    if (n > cap) {
        std::ostringstream os;
        os << "tour_enumeration_oracle: n = " << n << " exceeds cap " << cap;
        throw CapError(os.str());
    }
    const UncertaintyKind kind = uncertainty_kind(inst);
    const bool probabilistic = kind != UncertaintyKind::interval;

    // Per-edge bounds computed here from the raw durations; the tsp module's
    // helpers are what this table is checked against.
    std::vector<std::vector<Interval>> edge_bounds(
        static_cast<std::size_t>(n), std::vector<Interval>(static_cast<std::size_t>(n)));
    std::vector<std::vector<double>> edge_mean(
        static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const UncertainScalar& u = inst.duration(i, j);
            if (kind != UncertaintyKind::dist) {
                const Interval b = interval_bounds(u);
                edge_bounds[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    edge_bounds[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] =
                        Interval{b.lo / inst.speed, b.hi / inst.speed};
            }
            if (probabilistic) {
                const double mu = u.mean() / inst.speed;
                edge_mean[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = mu;
                edge_mean[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = mu;
            }
        }

    TourTable table;
    for_each_canonical_tour(n, [&](const Tour& t) {
        TourEvaluation ev;
        ev.tour = t;
        double lo = 0.0, hi = 0.0, mean = 0.0;
        for (const auto& [a, b] : t.edges()) {
            if (kind != UncertaintyKind::dist) {
                lo += edge_bounds[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)].lo;
                hi += edge_bounds[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)].hi;
            }
            if (probabilistic) mean += edge_mean[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
        }
        ev.length_bounds = {lo, hi};
        if (probabilistic) ev.expected_length = mean;
        table.rows.push_back(std::move(ev));
    });

    if (kind != UncertaintyKind::dist) {
        // Maximin by definition: smallest worst case, lexicographic first on ties.
        const TourEvaluation* best = &table.rows.front();
        for (const auto& row : table.rows)
            if (row.length_bounds.hi < best->length_bounds.hi - kFeasTol) best = &row;
        table.maximin_tour = best->tour;
        table.v_star = best->length_bounds.hi;

        for (const auto& row : table.rows)
            if (row.length_bounds.lo <= table.v_star + kFeasTol)
                table.hypograph_maximal.push_back(row.tour);

        // Edge-level maximality by pairwise dominance over the whole table.
        const std::size_t count = table.rows.size();
        std::vector<std::uint64_t> masks(count);
        std::vector<double> edge_lo, edge_hi;
        std::vector<std::vector<int>> edge_id(static_cast<std::size_t>(n),
                                              std::vector<int>(static_cast<std::size_t>(n), -1));
        int next_id = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                edge_id[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = next_id++;
                edge_lo.push_back(edge_bounds[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)].lo);
                edge_hi.push_back(edge_bounds[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)].hi);
            }
        for (std::size_t r = 0; r < count; ++r) {
            std::uint64_t mask = 0;
            for (const auto& [a, b] : table.rows[r].tour.edges())
                mask |= std::uint64_t{1}
                        << edge_id[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
            masks[r] = mask;
        }
        auto dominates = [&](std::size_t w, std::size_t x) {
            double margin = 0.0;
            std::uint64_t x_only = masks[x] & ~masks[w];
            while (x_only) {
                const int e = std::countr_zero(x_only);
                margin += edge_lo[static_cast<std::size_t>(e)];
                x_only &= x_only - 1;
            }
            std::uint64_t w_only = masks[w] & ~masks[x];
            while (w_only) {
                const int e = std::countr_zero(w_only);
                margin -= edge_hi[static_cast<std::size_t>(e)];
                w_only &= w_only - 1;
            }
            return margin > kFeasTol;
        };
        for (std::size_t x = 0; x < count; ++x) {
            bool dominated = false;
            for (std::size_t w = 0; w < count && !dominated; ++w)
                if (w != x && dominates(w, x)) dominated = true;
            if (!dominated) table.edge_level_maximal.push_back(table.rows[x].tour);
        }
    }

    if (probabilistic) {
        const TourEvaluation* best = &table.rows.front();
        for (const auto& row : table.rows)
            if (*row.expected_length < *best->expected_length - kFeasTol) best = &row;
        table.expected_tour = best->tour;
        table.expected_length = best->expected_length;
    }
    return table;
}

OracleReport prop1_check(const LpuuInstance& inst) {
    OracleReport report;
    report.subject = "prop1_lpuu";
    const MaximinResult mm = maximin_interval(inst);
    if (!mm.outcome.optimal()) {
        report.agreement = true; // no maximin solution to place in the maximal set
        report.cases_checked = 0;
        return report;
    }
    const MaximalVerdict verdict = maximal_membership_interval(inst, mm.outcome.x);
    report.agreement = verdict.is_maximal;
    report.max_discrepancy = verdict.is_maximal ? 0.0 : 1.0;
    report.cases_checked = 1;
    return report;
}

OracleReport prop1_check(const UtspInstance& inst, const TspCaps& caps) {
    OracleReport report;
    report.subject = "prop1_utsp";
    const TspMethod method =
        inst.n <= caps.bruteforce ? TspMethod::bruteforce : TspMethod::held_karp;
    const Tour mm = maximin_tour(inst, method, caps).tour;
    const auto hypo = maximal_tours_hypograph(inst, caps);
    const auto edge = maximal_tours_edge_level(inst, caps);
    const bool in_hypo = std::find(hypo.begin(), hypo.end(), mm) != hypo.end();
    const bool in_edge = std::find(edge.begin(), edge.end(), mm) != edge.end();
    report.agreement = in_hypo && in_edge;
    report.max_discrepancy = report.agreement ? 0.0 : 1.0;
    report.cases_checked = 2;
    return report;
}

} // namespace itsp::oracle
