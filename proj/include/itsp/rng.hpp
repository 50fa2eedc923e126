#ifndef ITSP_RNG_HPP
#define ITSP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "itsp/model.hpp"

// Deterministic sampling. mt19937_64 output is fixed by the standard, but the
// <random> distributions are not, so draws are derived from raw engine output
// here. Identical seeds give identical streams on every platform.

namespace itsp {

/// splitmix64 step; used to derive independent child seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return mix_seed(master ^ mix_seed(index + 1));
}

/// Uniform on [0, 1).
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1]; safe under log().
inline double u01_open(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * u01(rng);
}

/// Standard normal via Box-Muller; one draw consumes two engine outputs.
inline double standard_normal(std::mt19937_64& rng) {
    const double r = std::sqrt(-2.0 * std::log(u01_open(rng)));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u01(rng);
    return r * std::cos(theta);
}

inline double sample(const DistributionSpec& d, std::mt19937_64& rng) {
    return std::visit(
        [&rng](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return uniform_in(rng, v.a, v.b);
            } else if constexpr (std::is_same_v<T, Normal>) {
                return v.mu + v.sigma * standard_normal(rng);
            } else {
                double u = u01(rng);
                double cum = 0.0;
                for (std::size_t i = 0; i < v.values.size(); ++i) {
                    cum += v.probs[i];
                    if (u < cum) return v.values[i];
                }
                return v.values.back();
            }
        },
        d);
}

/// Realisation of an uncertain scalar; intervals are not sampleable.
inline double sample(const UncertainScalar& u, std::mt19937_64& rng) {
    if (u.is_crisp()) return std::get<double>(u.value);
    if (u.is_dist()) return sample(std::get<DistributionSpec>(u.value), rng);
    throw ValidationError("cannot sample an interval entry; probabilistic model required");
}

} // namespace itsp

#endif // ITSP_RNG_HPP
