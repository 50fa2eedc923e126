#include "itsp/prevision.hpp"

#include <algorithm>
#include <sstream>

namespace itsp {

namespace {

void check_dim(int got, int want, const char* what) {
    if (got != want) {
        std::ostringstream os;
        os << "dimension mismatch: gamble has " << want << " coefficients, " << what << " has " << got;
        throw ValidationError(os.str());
    }
}

} // namespace

double AffineGamble::eval(const std::vector<double>& u) const {
    check_dim(static_cast<int>(u.size()), dim(), "point");
    return dot(coeffs, u) + offset;
}

double vacuous_prevision(const AffineGamble& g, const Box& box, PrevisionSide side) {
    check_dim(box.dim(), g.dim(), "box");
    double s = g.offset;
    for (int k = 0; k < g.dim(); ++k) {
        const double a = g.coeffs[static_cast<std::size_t>(k)];
        const Interval& iv = box.coords[static_cast<std::size_t>(k)];
        const double at_lo = a * iv.lo;
        const double at_hi = a * iv.hi;
        s += side == PrevisionSide::lower ? std::min(at_lo, at_hi) : std::max(at_lo, at_hi);
    }
    return s;
}

double linear_prevision(const AffineGamble& g, const std::vector<DistributionSpec>& dists) {
    check_dim(static_cast<int>(dists.size()), g.dim(), "distribution list");
    double s = g.offset;
    for (int k = 0; k < g.dim(); ++k)
        s += g.coeffs[static_cast<std::size_t>(k)] * dist_mean(dists[static_cast<std::size_t>(k)]);
    return s;
}

} // namespace itsp
