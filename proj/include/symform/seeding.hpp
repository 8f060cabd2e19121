#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace symform {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood; public domain reference code).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Per-trial seed derivation: base_seed XOR (index * odd constant), then two
// mixing rounds. Pure function of its arguments, so trials can run on any
// thread in any order and still see the same stream.
inline std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = base_seed ^ (trial_index * golden);
    z = detail::mix64(z);
    z = detail::mix64(z + golden);
    return z;
}

// Deterministic random stream. mt19937_64 output is pinned by the standard;
// the distributions are hand-rolled because std::*_distribution is
// implementation-defined and would break cross-platform reproducibility.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one normal per call keeps the stream layout trivial.
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // standard complex Gaussian, E|g|^2 = 1
    std::complex<double> complex_gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    // uniform integer in [0, n)
    std::uint64_t index(std::uint64_t n) {
        // rejection-free modulo is fine here; n is tiny (permutations, grids)
        return engine_() % n;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace symform
