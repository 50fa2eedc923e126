#ifndef ITSP_TSP_HPP
#define ITSP_TSP_HPP

#include <optional>
#include <vector>

#include "itsp/model.hpp"

namespace itsp {

enum class TspMethod { bruteforce, held_karp };

/// Enumeration caps. Exceeding a cap raises CapError; there is no silent
/// fallback. ITSP_MAX_N (clamped to 18) overrides the enumeration caps.
struct TspCaps {
    int bruteforce = 10;
    int held_karp = 18;
    int maximal_enum = 12; // hypograph enumeration
    int edge_level = 10;   // edge-level maximal set
    int oracle = 8;        // full-table oracle

    /// Defaults with any ITSP_MAX_N override applied.
    static TspCaps from_env();
};

/// One evaluated tour: interval of possible lengths (the upper bound is the
/// worst-case certificate) and, for probabilistic instances, the expected
/// length.
struct TourEvaluation {
    Tour tour;
    Interval length_bounds;
    std::optional<double> expected_length;
};

/// Sum of travel-time bounds over the tour's edges.
Interval tour_length_bounds(const UtspInstance& inst, const Tour& t);

/// Expected tour length under the instance's per-edge distributions.
double tour_expected_length(const UtspInstance& inst, const Tour& t);

/// Exact crisp TSP. Both methods return the same tour: the lexicographically
/// smallest canonical optimal tour. weights is n x n, symmetric, >= 0.
struct CrispTourResult {
    Tour tour;
    double length = 0.0;
};

CrispTourResult crisp_tsp(const std::vector<std::vector<double>>& weights, TspMethod method,
                          const TspCaps& caps = TspCaps::from_env());

/// Worst-case optimal tour: crisp TSP on the matrix of upper travel-time
/// bounds. Returns the tour and v*, the smallest worst-case length.
struct MaximinTourResult {
    Tour tour;
    double v_star = 0.0;
};

MaximinTourResult maximin_tour(const UtspInstance& inst, TspMethod method = TspMethod::held_karp,
                               const TspCaps& caps = TspCaps::from_env());

/// Every canonical tour whose best-case length does not exceed v* + 1e-9,
/// enumerated with prefix pruning. Sorted lexicographically.
std::vector<Tour> maximal_tours_hypograph(const UtspInstance& inst,
                                          const TspCaps& caps = TspCaps::from_env());

/// True iff w strictly dominates x: the minimum over the coefficient box of
/// cost(x) - cost(w) is positive. Shared edges cancel, so only the symmetric
/// difference of the edge sets enters.
bool edge_level_dominance(const UtspInstance& inst, const Tour& x, const Tour& w);

/// Canonical tours that no canonical tour strictly dominates at edge level.
/// Sorted lexicographically; always a subset of the hypograph maximal set.
std::vector<Tour> maximal_tours_edge_level(const UtspInstance& inst,
                                           const TspCaps& caps = TspCaps::from_env());

/// Probabilistic criterion: crisp TSP on the matrix of expected travel times.
/// Maximin and maximality coincide for this model.
struct ExpectedTourResult {
    Tour tour;
    double expected_length = 0.0;
};

ExpectedTourResult expected_optimal_tour(const UtspInstance& inst,
                                         TspMethod method = TspMethod::held_karp,
                                         const TspCaps& caps = TspCaps::from_env());

/// Combined interval-criteria report for one instance.
struct MaximalTourReport {
    Tour maximin_tour;
    double maximin_value = 0.0;
    std::vector<Tour> hypograph_maximal;
    std::vector<Tour> edge_level_maximal;
};

MaximalTourReport solve_utsp_interval(const UtspInstance& inst,
                                      const TspCaps& caps = TspCaps::from_env());

/// Matrices of travel-time bounds/means, indexed [i-1][j-1].
std::vector<std::vector<double>> upper_time_matrix(const UtspInstance& inst);
std::vector<std::vector<double>> lower_time_matrix(const UtspInstance& inst);
std::vector<std::vector<double>> expected_time_matrix(const UtspInstance& inst);

} // namespace itsp

#endif // ITSP_TSP_HPP
