#ifndef ITSP_SIMPLEX_HPP
#define ITSP_SIMPLEX_HPP

#include <string>
#include <vector>

#include "itsp/model.hpp"

namespace itsp {

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus s);

/// Result of an LP solve. x and value are meaningful only when optimal; an
/// optimal x passes the polyhedron membership test at 1e-9.
struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;

    bool optimal() const { return status == LpStatus::optimal; }
};

/// Dense two-phase primal simplex over { x >= 0 : Ax <= b } with Bland's
/// smallest-index rule throughout (deterministic, cycle-free). Throws
/// NumericError("numeric failure") if pivots degrade below 1e-11 or the
/// iteration cap trips.
LpOutcome lp_solve(const Polyhedron& poly, const std::vector<double>& c, Sense sense);

} // namespace itsp

#endif // ITSP_SIMPLEX_HPP
