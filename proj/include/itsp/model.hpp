#ifndef ITSP_MODEL_HPP
#define ITSP_MODEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "itsp/errors.hpp"

namespace itsp {

/// Absolute tolerance used by membership and comparison tests unless a
/// tighter one is stated at the call site.
inline constexpr double kTol = 1e-9;

enum class Sense { maximize, minimize };

/// Which uncertainty model an instance uses. An instance must use one model
/// throughout; all-crisp instances count as either and are reported as crisp.
enum class UncertaintyKind { crisp, interval, dist };

std::string to_string(Sense s);
std::string to_string(UncertaintyKind k);

// ---------------------------------------------------------------------------
// Uncertain scalars
// ---------------------------------------------------------------------------

/// Closed interval [lo, hi]. A degenerate interval (lo == hi) is a crisp value.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v, double tol = kTol) const { return v >= lo - tol && v <= hi + tol; }
    bool operator==(const Interval&) const = default;
};

struct Uniform {
    double a = 0.0;
    double b = 1.0;
    bool operator==(const Uniform&) const = default;
};

struct Normal {
    double mu = 0.0;
    double sigma = 1.0;
    bool operator==(const Normal&) const = default;
};

struct Discrete {
    std::vector<double> values;
    std::vector<double> probs;
    bool operator==(const Discrete&) const = default;
};

using DistributionSpec = std::variant<Uniform, Normal, Discrete>;

/// Expected value of a distribution.
double dist_mean(const DistributionSpec& d);

/// Support of a bounded distribution. Throws ValidationError("unbounded
/// support") for Normal.
Interval dist_support(const DistributionSpec& d);

/// Checks the distribution parameter invariants; `where` names the field in
/// error messages.
void check_distribution(const DistributionSpec& d, const std::string& where);

/// One uncertain coefficient: a crisp value, a closed interval, or a
/// parametric distribution.
struct UncertainScalar {
    std::variant<double, Interval, DistributionSpec> value;

    UncertainScalar() : value(0.0) {}
    UncertainScalar(double v) : value(v) {}
    UncertainScalar(Interval iv) : value(iv) {}
    UncertainScalar(DistributionSpec d) : value(std::move(d)) {}

    static UncertainScalar crisp(double v) { return UncertainScalar(v); }
    static UncertainScalar interval(double lo, double hi) { return UncertainScalar(Interval{lo, hi}); }
    static UncertainScalar uniform(double a, double b) { return UncertainScalar(DistributionSpec(Uniform{a, b})); }
    static UncertainScalar normal(double mu, double sigma) { return UncertainScalar(DistributionSpec(Normal{mu, sigma})); }
    static UncertainScalar discrete(std::vector<double> values, std::vector<double> probs) {
        return UncertainScalar(DistributionSpec(Discrete{std::move(values), std::move(probs)}));
    }

    bool is_crisp() const { return std::holds_alternative<double>(value); }
    bool is_interval() const { return std::holds_alternative<Interval>(value); }
    bool is_dist() const { return std::holds_alternative<DistributionSpec>(value); }

    /// Kind contributed to the instance-wide uncertainty model.
    UncertaintyKind kind() const;

    /// Expected value: the value itself when crisp, the distribution mean
    /// when probabilistic. Intervals carry no expectation and throw.
    double mean() const;

    bool operator==(const UncertainScalar&) const = default;
};

/// Support bounds of an uncertain scalar: crisp v -> [v,v]; interval ->
/// itself; uniform(a,b) -> [a,b]; discrete -> [min,max]. Throws
/// ValidationError("unbounded support") for normal.
Interval interval_bounds(const UncertainScalar& u);

/// Travel time u/v_c for every variant (intervals and distribution
/// parameters scale elementwise). Requires v_c > 0.
UncertainScalar travel_time(const UncertainScalar& distance, double v_c);

// ---------------------------------------------------------------------------
// Problem instances
// ---------------------------------------------------------------------------

using UncertainMatrix = std::vector<std::vector<UncertainScalar>>;
using UncertainVector = std::vector<UncertainScalar>;

/// Linear program under uncertainty:
///   optimise c'x  subject to  Yx <= Z, x >= 0
/// with uncertain Y (m x n) and Z (m) and a penalty value charged when a
/// realisation violates the constraints.
struct LpuuInstance {
    Sense sense = Sense::maximize;
    std::vector<double> c;
    UncertainMatrix Y;
    UncertainVector Z;
    double penalty_L = 0.0;

    int n() const { return static_cast<int>(c.size()); }
    int m() const { return static_cast<int>(Z.size()); }
};

/// Uncertain symmetric TSP: n cities, uncertain duration matrix, constant
/// speed. Tours start and end at city 1.
struct UtspInstance {
    int n = 0;
    UncertainMatrix durations; // n x n, symmetric, diagonal ignored
    double speed = 1.0;

    const UncertainScalar& duration(int i, int j) const { return durations[i - 1][j - 1]; }
};

/// Options controlling instance validation.
struct ValidateOptions {
    /// Box bound used by the penalty check: penalty_L must be strictly below
    /// -(1 + sum|c_j| * x_max) so it undercuts the objective on [0, x_max]^n.
    double x_max = 1e6;
};

/// Uncertainty model used by a container of uncertain scalars. Throws
/// ValidationError("mixed uncertainty kinds ...") when interval and
/// distribution entries are mixed.
UncertaintyKind uncertainty_kind(const LpuuInstance& inst);
UncertaintyKind uncertainty_kind(const UtspInstance& inst);

/// Full invariant checks; throw ValidationError naming the offending field.
void validate(const LpuuInstance& inst, const ValidateOptions& opts = {});
void validate(const UtspInstance& inst, const ValidateOptions& opts = {});

// ---------------------------------------------------------------------------
// Tours
// ---------------------------------------------------------------------------

/// A cyclic tour as a permutation of {1..n} fixed at city 1 and normalised so
/// order[1] < order[n-1]; each undirected tour has exactly one representative.
struct Tour {
    std::vector<int> order;

    int n() const { return static_cast<int>(order.size()); }
    bool operator==(const Tour&) const = default;
    auto operator<=>(const Tour&) const = default;

    /// Undirected edge set {(min,max)}; exactly n edges, every city degree 2.
    std::vector<std::pair<int, int>> edges() const;
};

/// Canonicalises a permutation with order[0] == 1: of the two orientations of
/// the cycle, keeps the one with order[1] < order[n-1]. Idempotent.
Tour make_tour(std::vector<int> order);

/// Calls fn for every canonical tour on n cities, in lexicographic order of
/// the order vector; (n-1)!/2 tours in total.
void for_each_canonical_tour(int n, const std::function<void(const Tour&)>& fn);

/// All canonical tours on n cities, lexicographically sorted.
std::vector<Tour> all_canonical_tours(int n);

// ---------------------------------------------------------------------------
// Crisp polyhedra
// ---------------------------------------------------------------------------

/// Crisp system Ax <= b with implicit x >= 0.
struct Polyhedron {
    std::vector<std::vector<double>> A; // m rows of length n
    std::vector<double> b;              // m

    int m() const { return static_cast<int>(A.size()); }
    int n() const { return A.empty() ? 0 : static_cast<int>(A.front().size()); }

    /// Membership test Ax <= b + tol and x >= -tol.
    bool contains(const std::vector<double>& x, double tol = kTol) const;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);

} // namespace itsp

#endif // ITSP_MODEL_HPP
