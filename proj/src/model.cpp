#include "itsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace itsp {

std::string to_string(Sense s) { return s == Sense::maximize ? "maximize" : "minimize"; }

std::string to_string(UncertaintyKind k) {
    switch (k) {
    case UncertaintyKind::crisp: return "crisp";
    case UncertaintyKind::interval: return "interval";
    case UncertaintyKind::dist: return "dist";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

double dist_mean(const DistributionSpec& d) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return 0.5 * (v.a + v.b);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return v.mu;
            } else {
                double e = 0.0;
                for (std::size_t i = 0; i < v.values.size(); ++i) e += v.values[i] * v.probs[i];
                return e;
            }
        },
        d);
}

Interval dist_support(const DistributionSpec& d) {
    return std::visit(
        [](const auto& v) -> Interval {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return {v.a, v.b};
            } else if constexpr (std::is_same_v<T, Normal>) {
                throw ValidationError("unbounded support: normal distribution has no interval bounds");
            } else {
                auto [lo, hi] = std::minmax_element(v.values.begin(), v.values.end());
                return {*lo, *hi};
            }
        },
        d);
}

void check_distribution(const DistributionSpec& d, const std::string& where) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                if (!(v.a <= v.b)) throw ValidationError(where + ": uniform requires a <= b");
            } else if constexpr (std::is_same_v<T, Normal>) {
                if (!(v.sigma > 0.0)) throw ValidationError(where + ": normal requires sigma > 0");
            } else {
                if (v.values.empty() || v.values.size() != v.probs.size())
                    throw ValidationError(where + ": discrete requires values and probs of equal length >= 1");
                double sum = 0.0;
                for (double p : v.probs) {
                    if (p < 0.0) throw ValidationError(where + ": discrete probabilities must be nonnegative");
                    sum += p;
                }
                if (std::abs(sum - 1.0) > 1e-12)
                    throw ValidationError(where + ": discrete probabilities must sum to 1");
            }
        },
        d);
}

// ---------------------------------------------------------------------------
// Uncertain scalars
// ---------------------------------------------------------------------------

UncertaintyKind UncertainScalar::kind() const {
    if (is_crisp()) return UncertaintyKind::crisp;
    if (is_interval()) {
        const auto& iv = std::get<Interval>(value);
        return iv.lo == iv.hi ? UncertaintyKind::crisp : UncertaintyKind::interval;
    }
    return UncertaintyKind::dist;
}

double UncertainScalar::mean() const {
    if (is_crisp()) return std::get<double>(value);
    if (is_dist()) return dist_mean(std::get<DistributionSpec>(value));
    throw ValidationError("interval scalar has no expectation");
}

Interval interval_bounds(const UncertainScalar& u) {
    if (u.is_crisp()) {
        double v = std::get<double>(u.value);
        return {v, v};
    }
    if (u.is_interval()) return std::get<Interval>(u.value);
    return dist_support(std::get<DistributionSpec>(u.value));
}

UncertainScalar travel_time(const UncertainScalar& distance, double v_c) {
    if (!(v_c > 0.0)) throw ValidationError("speed must be positive");
    if (distance.is_crisp()) return UncertainScalar::crisp(std::get<double>(distance.value) / v_c);
    if (distance.is_interval()) {
        const auto& iv = std::get<Interval>(distance.value);
        return UncertainScalar::interval(iv.lo / v_c, iv.hi / v_c);
    }
    const auto& d = std::get<DistributionSpec>(distance.value);
    return std::visit(
        [v_c](const auto& v) -> UncertainScalar {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return UncertainScalar::uniform(v.a / v_c, v.b / v_c);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return UncertainScalar::normal(v.mu / v_c, v.sigma / v_c);
            } else {
                std::vector<double> scaled = v.values;
                for (double& s : scaled) s /= v_c;
                return UncertainScalar::discrete(std::move(scaled), v.probs);
            }
        },
        d);
}

// ---------------------------------------------------------------------------
// Instance-wide uncertainty kind and validation
// ---------------------------------------------------------------------------

namespace {

/// Folds one scalar's kind into an instance-wide kind.
void fold_kind(const UncertainScalar& u, bool& has_interval, bool& has_dist) {
    switch (u.kind()) {
    case UncertaintyKind::interval: has_interval = true; break;
    case UncertaintyKind::dist: has_dist = true; break;
    case UncertaintyKind::crisp: break;
    }
}

UncertaintyKind resolve_kind(bool has_interval, bool has_dist) {
    if (has_interval && has_dist)
        throw ValidationError("mixed uncertainty kinds: instance combines interval and distribution entries");
    if (has_interval) return UncertaintyKind::interval;
    if (has_dist) return UncertaintyKind::dist;
    return UncertaintyKind::crisp;
}

void check_scalar(const UncertainScalar& u, const std::string& where) {
    if (u.is_interval()) {
        const auto& iv = std::get<Interval>(u.value);
        if (!(iv.lo <= iv.hi)) {
            std::ostringstream os;
            os << where << ": lo > hi (" << iv.lo << " > " << iv.hi << ")";
            throw ValidationError(os.str());
        }
    } else if (u.is_dist()) {
        check_distribution(std::get<DistributionSpec>(u.value), where);
    }
}

std::string cell(const std::string& name, int i, int j) {
    std::ostringstream os;
    os << name << "[" << i << "][" << j << "]";
    return os.str();
}

std::string cell(const std::string& name, int i) {
    std::ostringstream os;
    os << name << "[" << i << "]";
    return os.str();
}

} // namespace

UncertaintyKind uncertainty_kind(const LpuuInstance& inst) {
    bool has_interval = false, has_dist = false;
    for (const auto& row : inst.Y)
        for (const auto& u : row) fold_kind(u, has_interval, has_dist);
    for (const auto& u : inst.Z) fold_kind(u, has_interval, has_dist);
    return resolve_kind(has_interval, has_dist);
}

UncertaintyKind uncertainty_kind(const UtspInstance& inst) {
    bool has_interval = false, has_dist = false;
    for (int i = 1; i <= inst.n; ++i)
        for (int j = i + 1; j <= inst.n; ++j) fold_kind(inst.duration(i, j), has_interval, has_dist);
    return resolve_kind(has_interval, has_dist);
}

void validate(const LpuuInstance& inst, const ValidateOptions& opts) {
    const int n = inst.n();
    const int m = inst.m();
    if (n < 1) throw ValidationError("c: objective must have at least one coefficient");
    if (static_cast<int>(inst.Y.size()) != m)
        throw ValidationError("Y: row count does not match |Z|");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(inst.Y[i].size()) != n)
            throw ValidationError(cell("Y", i) + ": row length does not match |c|");
        for (int j = 0; j < n; ++j) check_scalar(inst.Y[i][j], cell("Y", i, j));
    }
    for (int k = 0; k < m; ++k) check_scalar(inst.Z[k], cell("Z", k));
    for (int j = 0; j < n; ++j)
        if (!std::isfinite(inst.c[j])) throw ValidationError(cell("c", j) + ": not finite");

    uncertainty_kind(inst); // throws on mixed kinds

    double abs_c = 0.0;
    for (double cj : inst.c) abs_c += std::abs(cj);
    const double bound = -(1.0 + abs_c * opts.x_max);
    if (!(inst.penalty_L < bound)) {
        std::ostringstream os;
        os << "penalty_L: must be < " << bound << " (given " << inst.penalty_L
           << ", objective box bound " << opts.x_max << ")";
        throw ValidationError(os.str());
    }
}

void validate(const UtspInstance& inst, const ValidateOptions&) {
    if (inst.n < 3) throw ValidationError("n: at least 3 cities required");
    if (!(inst.speed > 0.0)) throw ValidationError("speed: must be positive");
    if (static_cast<int>(inst.durations.size()) != inst.n)
        throw ValidationError("durations: expected n rows");
    for (int i = 0; i < inst.n; ++i)
        if (static_cast<int>(inst.durations[i].size()) != inst.n)
            throw ValidationError(cell("durations", i) + ": expected n entries");

    for (int i = 0; i < inst.n; ++i) {
        for (int j = i + 1; j < inst.n; ++j) {
            const auto& u = inst.durations[i][j];
            check_scalar(u, cell("durations", i, j));
            if (!(inst.durations[j][i] == u))
                throw ValidationError(cell("durations", i, j) + ": asymmetric (differs from " +
                                      cell("durations", j, i) + ")");
            // Durations must be nonnegative: interval/support lower bound,
            // or the mean for unbounded distributions.
            double floor_value;
            if (u.is_dist() && std::holds_alternative<Normal>(std::get<DistributionSpec>(u.value)))
                floor_value = std::get<Normal>(std::get<DistributionSpec>(u.value)).mu;
            else
                floor_value = interval_bounds(u).lo;
            if (floor_value < 0.0)
                throw ValidationError(cell("durations", i, j) + ": negative duration bound");
        }
    }
    uncertainty_kind(inst); // throws on mixed kinds
}

// ---------------------------------------------------------------------------
// Tours
// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> Tour::edges() const {
    std::vector<std::pair<int, int>> e;
    const int k = n();
    e.reserve(k);
    for (int i = 0; i < k; ++i) {
        int a = order[i];
        int b = order[(i + 1) % k];
        e.emplace_back(std::min(a, b), std::max(a, b));
    }
    return e;
}

Tour make_tour(std::vector<int> order) {
    const int n = static_cast<int>(order.size());
    if (n < 3) throw ValidationError("tour: at least 3 cities required");
    if (order.front() != 1) throw ValidationError("tour: must start at city 1");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : order) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw ValidationError("tour: not a permutation of 1..n");
        seen[static_cast<std::size_t>(v)] = true;
    }
    if (order[1] > order[static_cast<std::size_t>(n) - 1])
        std::reverse(order.begin() + 1, order.end());
    return Tour{std::move(order)};
}

void for_each_canonical_tour(int n, const std::function<void(const Tour&)>& fn) {
    if (n < 3) throw ValidationError("tour enumeration: n must be >= 3");
    std::vector<int> rest(static_cast<std::size_t>(n) - 1);
    std::iota(rest.begin(), rest.end(), 2);
    std::vector<int> order(static_cast<std::size_t>(n));
    order[0] = 1;
    do {
        if (rest.front() > rest.back()) continue; // one orientation per cycle
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        fn(Tour{order});
    } while (std::next_permutation(rest.begin(), rest.end()));
}

std::vector<Tour> all_canonical_tours(int n) {
    std::vector<Tour> tours;
    for_each_canonical_tour(n, [&](const Tour& t) { tours.push_back(t); });
    return tours;
}

// ---------------------------------------------------------------------------
// Polyhedra
// ---------------------------------------------------------------------------

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool Polyhedron::contains(const std::vector<double>& x, double tol) const {
    for (double xi : x)
        if (xi < -tol) return false;
    for (int i = 0; i < m(); ++i)
        if (dot(A[static_cast<std::size_t>(i)], x) > b[static_cast<std::size_t>(i)] + tol) return false;
    return true;
}

} // namespace itsp
