#ifndef ITSP_LPUU_HPP
#define ITSP_LPUU_HPP

#include <cstdint>
#include <vector>

#include "itsp/model.hpp"
#include "itsp/simplex.hpp"

namespace itsp {

// ---------------------------------------------------------------------------
// Interval (vacuous) model
// ---------------------------------------------------------------------------

/// Inner region: feasible under every realisation (upper Y bounds vs lower Z
/// bounds). Outer region: feasible under at least one realisation. Inner is
/// always contained in outer.
struct FeasibilityRegions {
    Polyhedron inner;
    Polyhedron outer;
};

Polyhedron inner_polyhedron(const LpuuInstance& inst);
Polyhedron outer_polyhedron(const LpuuInstance& inst);
FeasibilityRegions feasibility_regions(const LpuuInstance& inst);

/// Worst-case-optimal solution: LP over the inner region. Values are reported
/// in the instance's own sense; the result never depends on penalty_L.
struct MaximinResult {
    LpOutcome outcome;
};

MaximinResult maximin_interval(const LpuuInstance& inst);

/// Maximality verdict for one decision. When the inner region is empty every
/// x >= 0 is maximal and degenerate_inner_empty is set.
struct MaximalVerdict {
    bool is_maximal = false;
    bool degenerate_inner_empty = false;
};

MaximalVerdict maximal_membership_interval(const LpuuInstance& inst, const std::vector<double>& x);

/// Penalised utility of decision x under a crisp realisation (y, z): the
/// objective value when yx <= z (tol 1e-9), penalty_L otherwise. Minimise
/// instances are scored with the negated objective.
double gain(const std::vector<double>& x, const std::vector<std::vector<double>>& y,
            const std::vector<double>& z, const LpuuInstance& inst);

/// Upper prevision of the gain difference G_x - G_w over the coefficient box,
/// by case analysis on how the box meets the feasibility sets of x and w.
/// Case numbering follows the return table:
///   1  box ^ x+ ^ w- nonempty            -> c.x - L
///   2  box ^ x+ empty, box ^ w- nonempty -> 0
///   3  x+ ^ w- empty, both nonempty      -> max(0, c.x - c.w)
///   4  box ^ x+ nonempty, box ^ w- empty -> c.x - c.w
///   5  both empty                        -> L - c.w
/// Nonemptiness of each set is decided by small LPs over the box variables
/// with strictness relaxed to a violation margin of 1e-9.
struct UpperGainDifference {
    double value = 0.0;
    int case_id = 0;
};

UpperGainDifference upper_gain_difference_detailed(const LpuuInstance& inst,
                                                   const std::vector<double>& x,
                                                   const std::vector<double>& w);

double upper_gain_difference(const LpuuInstance& inst, const std::vector<double>& x,
                             const std::vector<double>& w);

// ---------------------------------------------------------------------------
// Probabilistic (linear prevision) model
// ---------------------------------------------------------------------------

/// Monte Carlo estimate of P(Yx <= Z) with binomial standard error.
/// Deterministic for a fixed seed; requires n_samples >= 100.
struct McEstimate {
    double estimate = 0.0;
    double stderr_est = 0.0;
    long n_samples = 0;
};

McEstimate feasibility_probability_mc(const LpuuInstance& inst, const std::vector<double>& x,
                                      long n_samples, std::uint64_t seed);

/// One scored candidate of the probabilistic maximin search.
struct ScoredCandidate {
    std::vector<double> x;
    double score = 0.0;     // (c.x - L) * p_hat
    double feas_prob = 0.0; // p_hat
};

/// Scores every candidate by (c.x - L) * p_hat with per-candidate RNG streams
/// derived from the master seed, and returns the best; ties are broken by the
/// lexicographically smallest candidate. Candidates are scored in the order
/// given; the caller supplies the grid or vertex set.
ScoredCandidate maximin_probabilistic(const LpuuInstance& inst,
                                      const std::vector<std::vector<double>>& candidates,
                                      long n_samples, std::uint64_t seed);

/// Objective vector in maximisation form (negated for minimise instances).
std::vector<double> normalized_objective(const LpuuInstance& inst);

} // namespace itsp

#endif // ITSP_LPUU_HPP
