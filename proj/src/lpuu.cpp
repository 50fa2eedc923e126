#include "itsp/lpuu.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "itsp/rng.hpp"

namespace itsp {

namespace {

constexpr double kStrictMargin = 1e-9; // violation margin standing in for strict inequality

void require_interval_model(const LpuuInstance& inst, const char* op) {
    if (uncertainty_kind(inst) == UncertaintyKind::dist) {
        std::ostringstream os;
        os << op << ": requires interval or crisp uncertainty";
        throw ValidationError(os.str());
    }
}

void require_probabilistic_model(const LpuuInstance& inst, const char* op) {
    if (uncertainty_kind(inst) == UncertaintyKind::interval) {
        std::ostringstream os;
        os << op << ": requires probabilistic (or crisp) uncertainty";
        throw ValidationError(os.str());
    }
}

void require_nonnegative(const std::vector<double>& x, const char* name) {
    for (double v : x)
        if (v < -kTol) throw ValidationError(std::string(name) + ": decision vector must be nonnegative");
}

void require_dim(const std::vector<double>& x, int n, const char* name) {
    if (static_cast<int>(x.size()) != n)
        throw ValidationError(std::string(name) + ": dimension does not match instance");
}

} // namespace

std::vector<double> normalized_objective(const LpuuInstance& inst) {
    std::vector<double> c = inst.c;
    if (inst.sense == Sense::minimize)
        for (double& v : c) v = -v;
    return c;
}

// ---------------------------------------------------------------------------
// Interval model: feasibility regions and closed forms
// ---------------------------------------------------------------------------

Polyhedron inner_polyhedron(const LpuuInstance& inst) {
    require_interval_model(inst, "inner_polyhedron");
    Polyhedron poly;
    poly.A.reserve(inst.Y.size());
    for (const auto& row : inst.Y) {
        std::vector<double> a;
        a.reserve(row.size());
        for (const auto& u : row) a.push_back(interval_bounds(u).hi);
        poly.A.push_back(std::move(a));
    }
    for (const auto& u : inst.Z) poly.b.push_back(interval_bounds(u).lo);
    return poly;
}

Polyhedron outer_polyhedron(const LpuuInstance& inst) {
    require_interval_model(inst, "outer_polyhedron");
    Polyhedron poly;
    poly.A.reserve(inst.Y.size());
    for (const auto& row : inst.Y) {
        std::vector<double> a;
        a.reserve(row.size());
        for (const auto& u : row) a.push_back(interval_bounds(u).lo);
        poly.A.push_back(std::move(a));
    }
    for (const auto& u : inst.Z) poly.b.push_back(interval_bounds(u).hi);
    return poly;
}

FeasibilityRegions feasibility_regions(const LpuuInstance& inst) {
    return {inner_polyhedron(inst), outer_polyhedron(inst)};
}

MaximinResult maximin_interval(const LpuuInstance& inst) {
    const Polyhedron inner = inner_polyhedron(inst);
    LpOutcome out = lp_solve(inner, normalized_objective(inst), Sense::maximize);
    if (out.optimal() && inst.sense == Sense::minimize) out.value = -out.value;
    return MaximinResult{std::move(out)};
}

MaximalVerdict maximal_membership_interval(const LpuuInstance& inst, const std::vector<double>& x) {
    require_dim(x, inst.n(), "x");
    require_nonnegative(x, "x");
    const MaximinResult maximin = maximin_interval(inst);
    if (maximin.outcome.status == LpStatus::infeasible)
        return MaximalVerdict{true, true}; // empty inner region: every x >= 0 is maximal
    if (maximin.outcome.status == LpStatus::unbounded)
        return MaximalVerdict{false, false}; // no decision is undominated

    const std::vector<double> c = normalized_objective(inst);
    const double best = dot(c, maximin.outcome.x);
    const bool in_outer = outer_polyhedron(inst).contains(x);
    const bool good_enough = dot(c, x) >= best - kTol;
    return MaximalVerdict{in_outer && good_enough, false};
}

// ---------------------------------------------------------------------------
// Gain function and the five-case upper prevision of a gain difference
// ---------------------------------------------------------------------------

double gain(const std::vector<double>& x, const std::vector<std::vector<double>>& y,
            const std::vector<double>& z, const LpuuInstance& inst) {
    require_dim(x, inst.n(), "x");
    require_nonnegative(x, "x");
    if (static_cast<int>(y.size()) != inst.m() || static_cast<int>(z.size()) != inst.m())
        throw ValidationError("realization: dimension does not match instance");
    for (int k = 0; k < inst.m(); ++k) {
        if (static_cast<int>(y[static_cast<std::size_t>(k)].size()) != inst.n())
            throw ValidationError("realization: dimension does not match instance");
        if (dot(y[static_cast<std::size_t>(k)], x) > z[static_cast<std::size_t>(k)] + kTol)
            return inst.penalty_L;
    }
    return dot(normalized_objective(inst), x);
}

namespace {

// Feasibility work over the coefficient box. Box variables are the m*n
// entries of Y followed by the m entries of Z, shifted so each lives in
// [0, width]; widths become explicit upper-bound rows. The set x+ adds, for
// each constraint row k, the halfspace sum_l x_l y_kl - z_k <= 0.
struct QuadrantLp {
    const LpuuInstance& inst;
    int m, n;
    std::vector<Interval> y_bounds; // row-major
    std::vector<Interval> z_bounds;

    explicit QuadrantLp(const LpuuInstance& instance)
        : inst(instance), m(instance.m()), n(instance.n()) {
        y_bounds.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
        for (const auto& row : inst.Y)
            for (const auto& u : row) y_bounds.push_back(interval_bounds(u));
        z_bounds.reserve(static_cast<std::size_t>(m));
        for (const auto& u : inst.Z) z_bounds.push_back(interval_bounds(u));
    }

    int y_var(int k, int l) const { return k * n + l; }
    int z_var(int k) const { return m * n + k; }
    int num_vars() const { return m * n + m; }

    Interval var_bounds(int v) const {
        return v < m * n ? y_bounds[static_cast<std::size_t>(v)]
                         : z_bounds[static_cast<std::size_t>(v - m * n)];
    }

    // Polyhedron over shifted variables: width rows, plus x+ rows when asked.
    Polyhedron build(const std::vector<double>* x_plus_of) const {
        Polyhedron poly;
        const int nv = num_vars();
        for (int v = 0; v < nv; ++v) {
            std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
            row[static_cast<std::size_t>(v)] = 1.0;
            poly.A.push_back(std::move(row));
            poly.b.push_back(var_bounds(v).width());
        }
        if (x_plus_of != nullptr) {
            const std::vector<double>& x = *x_plus_of;
            for (int k = 0; k < m; ++k) {
                std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
                double shift = 0.0;
                for (int l = 0; l < n; ++l) {
                    row[static_cast<std::size_t>(y_var(k, l))] = x[static_cast<std::size_t>(l)];
                    shift += x[static_cast<std::size_t>(l)] * y_bounds[static_cast<std::size_t>(y_var(k, l))].lo;
                }
                row[static_cast<std::size_t>(z_var(k))] = -1.0;
                poly.A.push_back(std::move(row));
                poly.b.push_back(z_bounds[static_cast<std::size_t>(k)].lo - shift);
            }
        }
        return poly;
    }

    // Is { (y,z) in box : yx <= z } nonempty?
    bool x_plus_nonempty(const std::vector<double>& x) const {
        const Polyhedron poly = build(&x);
        const std::vector<double> zero(static_cast<std::size_t>(num_vars()), 0.0);
        return lp_solve(poly, zero, Sense::maximize).optimal();
    }

    // Largest violation of row k of yw <= z over the region; NaN if the
    // region itself is empty.
    double max_violation(const std::vector<double>& w, int k,
                         const std::vector<double>* x_plus_of) const {
        const Polyhedron poly = build(x_plus_of);
        std::vector<double> obj(static_cast<std::size_t>(num_vars()), 0.0);
        double shift = 0.0;
        for (int l = 0; l < n; ++l) {
            obj[static_cast<std::size_t>(y_var(k, l))] = w[static_cast<std::size_t>(l)];
            shift += w[static_cast<std::size_t>(l)] * y_bounds[static_cast<std::size_t>(y_var(k, l))].lo;
        }
        obj[static_cast<std::size_t>(z_var(k))] = -1.0;
        shift -= z_bounds[static_cast<std::size_t>(k)].lo;
        const LpOutcome out = lp_solve(poly, obj, Sense::maximize);
        if (!out.optimal()) return std::nan("");
        return out.value + shift;
    }

    // Does some realization in the region violate yw <= z? Strictness is a
    // violation margin > 1e-9.
    bool w_minus_meets(const std::vector<double>& w, const std::vector<double>* x_plus_of) const {
        for (int k = 0; k < m; ++k) {
            const double v = max_violation(w, k, x_plus_of);
            if (std::isnan(v)) return false; // region empty
            if (v > kStrictMargin) return true;
        }
        return false;
    }
};

} // namespace

UpperGainDifference upper_gain_difference_detailed(const LpuuInstance& inst,
                                                   const std::vector<double>& x,
                                                   const std::vector<double>& w) {
    require_interval_model(inst, "upper_gain_difference");
    require_dim(x, inst.n(), "x");
    require_dim(w, inst.n(), "w");
    require_nonnegative(x, "x");
    require_nonnegative(w, "w");

    const std::vector<double> c = normalized_objective(inst);
    const double cx = dot(c, x);
    const double cw = dot(c, w);
    const double L = inst.penalty_L;

    const QuadrantLp lp(inst);
    if (lp.w_minus_meets(w, &x)) return {cx - L, 1};

    const bool xp = lp.x_plus_nonempty(x);
    const bool wm = lp.w_minus_meets(w, nullptr);
    if (!xp && wm) return {0.0, 2};
    if (xp && wm) return {std::max(0.0, cx - cw), 3};
    if (xp && !wm) return {cx - cw, 4};
    return {L - cw, 5};
}

double upper_gain_difference(const LpuuInstance& inst, const std::vector<double>& x,
                             const std::vector<double>& w) {
    return upper_gain_difference_detailed(inst, x, w).value;
}

// ---------------------------------------------------------------------------
// Probabilistic model
// ---------------------------------------------------------------------------

McEstimate feasibility_probability_mc(const LpuuInstance& inst, const std::vector<double>& x,
                                      long n_samples, std::uint64_t seed) {
    require_probabilistic_model(inst, "feasibility_probability_mc");
    require_dim(x, inst.n(), "x");
    require_nonnegative(x, "x");
    if (n_samples < 100) throw ValidationError("n_samples: must be >= 100");

    std::mt19937_64 rng(seed);
    const int m = inst.m();
    const int n = inst.n();
    long hits = 0;
    std::vector<double> yrow(static_cast<std::size_t>(n));
    for (long s = 0; s < n_samples; ++s) {
        bool feasible = true;
        // Draw the full realization even after a violated row so the stream
        // position stays independent of x.
        std::vector<double> z(static_cast<std::size_t>(m));
        std::vector<double> lhs(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < n; ++l)
                yrow[static_cast<std::size_t>(l)] =
                    sample(inst.Y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)], rng);
            lhs[static_cast<std::size_t>(k)] = dot(yrow, x);
        }
        for (int k = 0; k < m; ++k) z[static_cast<std::size_t>(k)] = sample(inst.Z[static_cast<std::size_t>(k)], rng);
        for (int k = 0; k < m; ++k)
            if (lhs[static_cast<std::size_t>(k)] > z[static_cast<std::size_t>(k)] + kTol) {
                feasible = false;
                break;
            }
        if (feasible) ++hits;
    }

    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return McEstimate{p, se, n_samples};
}

ScoredCandidate maximin_probabilistic(const LpuuInstance& inst,
                                      const std::vector<std::vector<double>>& candidates,
                                      long n_samples, std::uint64_t seed) {
    require_probabilistic_model(inst, "maximin_probabilistic");
    if (candidates.empty()) throw ValidationError("candidates: empty candidate list");

    const std::vector<double> c = normalized_objective(inst);
    const double L = inst.penalty_L;

    ScoredCandidate best;
    bool have_best = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& x = candidates[i];
        const McEstimate mc = feasibility_probability_mc(inst, x, n_samples, child_seed(seed, i));
        ScoredCandidate cand{x, (dot(c, x) - L) * mc.estimate, mc.estimate};
        if (!have_best || cand.score > best.score ||
            (cand.score == best.score &&
             std::lexicographical_compare(cand.x.begin(), cand.x.end(), best.x.begin(), best.x.end()))) {
            best = std::move(cand);
            have_best = true;
        }
    }
    return best;
}

} // namespace itsp
