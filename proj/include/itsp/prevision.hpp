#ifndef ITSP_PREVISION_HPP
#define ITSP_PREVISION_HPP

#include <vector>

#include "itsp/model.hpp"

namespace itsp {

/// Affine gamble g(u) = coeffs . u + offset on a box of coordinates.
struct AffineGamble {
    std::vector<double> coeffs;
    double offset = 0.0;

    int dim() const { return static_cast<int>(coeffs.size()); }
    double eval(const std::vector<double>& u) const;
};

/// Product of closed intervals, one per coordinate.
struct Box {
    std::vector<Interval> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

enum class PrevisionSide { lower, upper };

/// Vacuous lower/upper prevision of an affine gamble over a box: the exact
/// min/max, attained coordinatewise. Conjugacy upper(g) == -lower(-g) holds
/// exactly in floating point.
double vacuous_prevision(const AffineGamble& g, const Box& box, PrevisionSide side);

/// Linear prevision (expectation) of an affine gamble, one distribution per
/// coordinate.
double linear_prevision(const AffineGamble& g, const std::vector<DistributionSpec>& dists);

} // namespace itsp

#endif // ITSP_PREVISION_HPP
