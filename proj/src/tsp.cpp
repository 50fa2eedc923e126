#include "itsp/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

namespace itsp {

namespace {

constexpr double kTieTol = 1e-9;

void require_interval_model(const UtspInstance& inst, const char* op) {
    if (uncertainty_kind(inst) == UncertaintyKind::dist)
        throw ValidationError(std::string(op) + ": requires interval or crisp uncertainty");
}

void check_cap(int n, int cap, const char* what) {
    if (n > cap) {
        std::ostringstream os;
        os << what << ": n = " << n << " exceeds cap " << cap;
        throw CapError(os.str());
    }
}

using Matrix = std::vector<std::vector<double>>;

Matrix time_matrix(const UtspInstance& inst, const std::function<double(const UncertainScalar&)>& f) {
    Matrix w(static_cast<std::size_t>(inst.n), std::vector<double>(static_cast<std::size_t>(inst.n), 0.0));
    for (int i = 1; i <= inst.n; ++i)
        for (int j = i + 1; j <= inst.n; ++j) {
            const double v = f(travel_time(inst.duration(i, j), inst.speed));
            w[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
            w[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = v;
        }
    return w;
}

double tour_cost(const Matrix& w, const Tour& t) {
    double s = 0.0;
    for (const auto& [a, b] : t.edges())
        s += w[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
    return s;
}

CrispTourResult crisp_tsp_bruteforce(const Matrix& w, int n) {
    CrispTourResult best;
    best.length = std::numeric_limits<double>::infinity();
    for_each_canonical_tour(n, [&](const Tour& t) {
        const double len = tour_cost(w, t);
        if (len < best.length - kTieTol) {
            best.tour = t;
            best.length = len;
        }
    });
    return best;
}

// Held-Karp with a suffix table: e[mask][j] is the cheapest path that starts
// at city j (2-based bit j-2, j not in mask), visits exactly the cities in
// mask, and ends at city 1. The optimal tour value is the start case at
// city 1 over the full mask, and the lexicographically smallest optimal tour
// falls out of a greedy walk that keeps the remaining budget exact. A tour
// and its reversal cost the same, so the lex-smallest optimal tour is
// automatically canonical.
CrispTourResult crisp_tsp_held_karp(const Matrix& w, int n) {
    const int k = n - 1; // cities 2..n
    const std::size_t nmask = std::size_t{1} << k;
    auto wt = [&](int a, int b) {
        return w[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
    };

    std::vector<double> e(nmask * static_cast<std::size_t>(k), 0.0);
    auto at = [&](std::size_t mask, int j) -> double& { // j is 2-based city
        return e[mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(j - 2)];
    };

    for (int j = 2; j <= n; ++j) at(0, j) = wt(j, 1);
    for (std::size_t mask = 1; mask < nmask; ++mask) {
        for (int j = 2; j <= n; ++j) {
            if (mask & (std::size_t{1} << (j - 2))) continue;
            double best = std::numeric_limits<double>::infinity();
            for (int u = 2; u <= n; ++u) {
                const std::size_t bit = std::size_t{1} << (u - 2);
                if (!(mask & bit)) continue;
                best = std::min(best, wt(j, u) + at(mask ^ bit, u));
            }
            at(mask, j) = best;
        }
    }

    const std::size_t full = nmask - 1;
    double v = std::numeric_limits<double>::infinity();
    for (int a = 2; a <= n; ++a) {
        const std::size_t bit = std::size_t{1} << (a - 2);
        v = std::min(v, wt(1, a) + at(full ^ bit, a));
    }

    std::vector<int> order{1};
    int cur = 1;
    std::size_t mask = full;
    // remaining is always a value the table produced, so at least one branch
    // matches it bit-exactly; the band only merges genuine near-ties.
    double remaining = v;
    while (mask != 0) {
        int chosen = -1;
        for (int u = 2; u <= n && chosen < 0; ++u) {
            const std::size_t bit = std::size_t{1} << (u - 2);
            if (!(mask & bit)) continue;
            if (std::abs(wt(cur, u) + at(mask ^ bit, u) - remaining) <= kTieTol) chosen = u;
        }
        if (chosen < 0) throw NumericError("numeric failure: tour reconstruction lost the budget");
        const std::size_t bit = std::size_t{1} << (chosen - 2);
        order.push_back(chosen);
        remaining = at(mask ^ bit, chosen);
        cur = chosen;
        mask ^= bit;
    }

    return CrispTourResult{make_tour(std::move(order)), v};
}

} // namespace

TspCaps TspCaps::from_env() {
    TspCaps caps;
    if (const char* env = std::getenv("ITSP_MAX_N")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 3) {
            const int cap = static_cast<int>(std::min<long>(v, 18));
            caps.maximal_enum = cap;
            caps.edge_level = cap;
            caps.oracle = cap;
        }
    }
    return caps;
}

Matrix upper_time_matrix(const UtspInstance& inst) {
    return time_matrix(inst, [](const UncertainScalar& u) { return interval_bounds(u).hi; });
}

Matrix lower_time_matrix(const UtspInstance& inst) {
    return time_matrix(inst, [](const UncertainScalar& u) { return interval_bounds(u).lo; });
}

Matrix expected_time_matrix(const UtspInstance& inst) {
    return time_matrix(inst, [](const UncertainScalar& u) { return u.mean(); });
}

Interval tour_length_bounds(const UtspInstance& inst, const Tour& t) {
    require_interval_model(inst, "tour_length_bounds");
    double lo = 0.0, hi = 0.0;
    for (const auto& [a, b] : t.edges()) {
        const Interval iv = interval_bounds(travel_time(inst.duration(a, b), inst.speed));
        lo += iv.lo;
        hi += iv.hi;
    }
    return {lo, hi};
}

double tour_expected_length(const UtspInstance& inst, const Tour& t) {
    double s = 0.0;
    for (const auto& [a, b] : t.edges()) s += travel_time(inst.duration(a, b), inst.speed).mean();
    return s;
}

CrispTourResult crisp_tsp(const Matrix& weights, TspMethod method, const TspCaps& caps) {
    const int n = static_cast<int>(weights.size());
    if (n < 3) throw ValidationError("crisp_tsp: at least 3 cities required");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(weights[static_cast<std::size_t>(i)].size()) != n)
            throw ValidationError("crisp_tsp: weight matrix must be square");
        for (int j = i + 1; j < n; ++j) {
            const double v = weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v < 0.0) throw ValidationError("crisp_tsp: weights must be nonnegative");
            if (v != weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw ValidationError("crisp_tsp: weight matrix must be symmetric");
        }
    }
    if (method == TspMethod::bruteforce) {
        check_cap(n, caps.bruteforce, "crisp_tsp bruteforce");
        return crisp_tsp_bruteforce(weights, n);
    }
    check_cap(n, caps.held_karp, "crisp_tsp held_karp");
    return crisp_tsp_held_karp(weights, n);
}

MaximinTourResult maximin_tour(const UtspInstance& inst, TspMethod method, const TspCaps& caps) {
    require_interval_model(inst, "maximin_tour");
    const CrispTourResult r = crisp_tsp(upper_time_matrix(inst), method, caps);
    return MaximinTourResult{r.tour, r.length};
}

std::vector<Tour> maximal_tours_hypograph(const UtspInstance& inst, const TspCaps& caps) {
    require_interval_model(inst, "maximal_tours_hypograph");
    check_cap(inst.n, caps.maximal_enum, "maximal_tours_hypograph");
    const int n = inst.n;
    const double v_star =
        maximin_tour(inst, n <= caps.bruteforce ? TspMethod::bruteforce : TspMethod::held_karp, caps)
            .v_star;
    const Matrix lo = lower_time_matrix(inst);
    const double budget = v_star + kTol;

    // DFS over partial orders (1, ...) pruning on the partial best-case sum;
    // edge times are nonnegative so the sum only grows.
    std::vector<Tour> result;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    order[0] = 1;
    used[1] = true;

    auto dfs = [&](auto&& self, int depth, double partial) -> void {
        if (depth == n) {
            const int last = order[static_cast<std::size_t>(n - 1)];
            if (order[1] > last) return; // canonical orientation only
            const double total = partial + lo[static_cast<std::size_t>(last - 1)][0];
            if (total <= budget) result.push_back(Tour{order});
            return;
        }
        const int prev = order[static_cast<std::size_t>(depth - 1)];
        for (int city = 2; city <= n; ++city) {
            if (used[static_cast<std::size_t>(city)]) continue;
            const double next = partial + lo[static_cast<std::size_t>(prev - 1)][static_cast<std::size_t>(city - 1)];
            if (next > budget) continue;
            order[static_cast<std::size_t>(depth)] = city;
            used[static_cast<std::size_t>(city)] = true;
            self(self, depth + 1, next);
            used[static_cast<std::size_t>(city)] = false;
        }
    };
    dfs(dfs, 1, 0.0);
    return result; // DFS emits in lexicographic order
}

bool edge_level_dominance(const UtspInstance& inst, const Tour& x, const Tour& w) {
    require_interval_model(inst, "edge_level_dominance");
    const int n = inst.n;
    std::vector<bool> in_w(static_cast<std::size_t>(n * n), false);
    for (const auto& [a, b] : w.edges())
        in_w[static_cast<std::size_t>((a - 1) * n + (b - 1))] = true;
    std::vector<bool> in_x(static_cast<std::size_t>(n * n), false);
    for (const auto& [a, b] : x.edges())
        in_x[static_cast<std::size_t>((a - 1) * n + (b - 1))] = true;

    double margin = 0.0; // min over the box of cost(x) - cost(w)
    for (const auto& [a, b] : x.edges())
        if (!in_w[static_cast<std::size_t>((a - 1) * n + (b - 1))])
            margin += interval_bounds(travel_time(inst.duration(a, b), inst.speed)).lo;
    for (const auto& [a, b] : w.edges())
        if (!in_x[static_cast<std::size_t>((a - 1) * n + (b - 1))])
            margin -= interval_bounds(travel_time(inst.duration(a, b), inst.speed)).hi;
    return margin > kTol;
}

std::vector<Tour> maximal_tours_edge_level(const UtspInstance& inst, const TspCaps& caps) {
    require_interval_model(inst, "maximal_tours_edge_level");
    check_cap(inst.n, caps.edge_level, "maximal_tours_edge_level");
    const int n = inst.n;

    // Tours outside the hypograph set are always dominated by the maximin
    // tour, so they never need checking.
    const std::vector<Tour> candidates = maximal_tours_hypograph(inst, caps);
    const Matrix lo = lower_time_matrix(inst);
    const Matrix hi = upper_time_matrix(inst);
    const double v_star = crisp_tsp(hi, n <= caps.bruteforce ? TspMethod::bruteforce : TspMethod::held_karp, caps).length;

    std::vector<Tour> result;
    Matrix h = hi;
    for (const Tour& x : candidates) {
        const double lo_x = tour_cost(lo, x);
        const double hi_x = tour_cost(hi, x);
        // Against any w, the advantage of w is capped by hi(x) - hi(w), so a
        // worst-case-optimal x is undominated outright.
        if (hi_x <= v_star + kTol) {
            result.push_back(x);
            continue;
        }
        // x is dominated by some w iff the cheapest tour under mixed weights
        // (lower bounds on x's edges, upper bounds elsewhere) undercuts
        // x's best case.
        for (const auto& [a, b] : x.edges())
            h[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                h[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] =
                    lo[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
        const double best = crisp_tsp(h, TspMethod::held_karp, caps).length;
        for (const auto& [a, b] : x.edges())
            h[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                h[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] =
                    hi[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
        if (best >= lo_x - kTol) result.push_back(x);
    }
    return result;
}

ExpectedTourResult expected_optimal_tour(const UtspInstance& inst, TspMethod method,
                                         const TspCaps& caps) {
    if (uncertainty_kind(inst) == UncertaintyKind::interval)
        throw ValidationError("expected_optimal_tour: requires probabilistic (or crisp) uncertainty");
    const CrispTourResult r = crisp_tsp(expected_time_matrix(inst), method, caps);
    return ExpectedTourResult{r.tour, r.length};
}

MaximalTourReport solve_utsp_interval(const UtspInstance& inst, const TspCaps& caps) {
    MaximalTourReport report;
    const TspMethod method =
        inst.n <= caps.bruteforce ? TspMethod::bruteforce : TspMethod::held_karp;
    const MaximinTourResult mm = maximin_tour(inst, method, caps);
    report.maximin_tour = mm.tour;
    report.maximin_value = mm.v_star;
    report.hypograph_maximal = maximal_tours_hypograph(inst, caps);
    report.edge_level_maximal = maximal_tours_edge_level(inst, caps);
    return report;
}

} // namespace itsp
