#ifndef ITSP_ORACLE_HPP
#define ITSP_ORACLE_HPP

#include <string>
#include <variant>
#include <vector>

#include "itsp/lpuu.hpp"
#include "itsp/model.hpp"
#include "itsp/simplex.hpp"
#include "itsp/tsp.hpp"

// Independent brute-force verifiers. Nothing in this namespace may call the
// solver it checks: the LP oracle enumerates basic solutions instead of
// pivoting, and the tour oracle recomputes every set from a full evaluation
// table.

namespace itsp::oracle {

struct OracleReport {
    std::string subject;
    bool agreement = false;
    double max_discrepancy = 0.0;
    long cases_checked = 0;
};

/// LP by exhaustive basic-solution enumeration over all n-subsets of the
/// constraint normals (rows of A plus nonnegativity), with unboundedness
/// detected by scanning recession directions spanned by (n-1)-subsets.
/// Requires m + n <= 14.
LpOutcome lp_vertex_oracle(const Polyhedron& poly, const std::vector<double>& c, Sense sense);

/// Full evaluation of every canonical tour plus the sets recomputed from the
/// table by definition. Requires n <= oracle cap (default 8).
struct TourTable {
    std::vector<TourEvaluation> rows; // lexicographic tour order
    Tour maximin_tour;
    double v_star = 0.0;
    std::vector<Tour> hypograph_maximal;
    std::vector<Tour> edge_level_maximal; // pairwise dominance over the table
    std::optional<Tour> expected_tour;
    std::optional<double> expected_length;
};

TourTable tour_enumeration_oracle(const UtspInstance& inst,
                                  const TspCaps& caps = TspCaps::from_env());

/// Checks that the maximin solution passes the corresponding maximality test.
OracleReport prop1_check(const LpuuInstance& inst);
OracleReport prop1_check(const UtspInstance& inst, const TspCaps& caps = TspCaps::from_env());

} // namespace itsp::oracle

#endif // ITSP_ORACLE_HPP
