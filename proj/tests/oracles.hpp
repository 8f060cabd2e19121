#pragma once

// Brute-force oracles used to freeze expected values. These must stay
// independent of the library's computation paths: subsets are enumerated
// directly, integrals use naive summation, spectra come straight from the
// solver.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "symform/complex_matrix.hpp"
#include "symform/forms.hpp"

namespace oracles {

// elementary symmetric polynomial by explicit subset enumeration
inline double esp_enumerated(const symform::RealVector& x, int k) {
    const int n = static_cast<int>(x.size());
    double sum = 0.0;
    symform::for_each_subset(n, k, [&](const std::vector<int>& s) {
        double prod = 1.0;
        for (int i : s) prod *= x[i];
        sum += prod;
    });
    return sum;
}

inline double gk_enumerated(const symform::RealVector& x, int k) {
    const int n = static_cast<int>(x.size());
    double sum = 0.0;
    symform::for_each_subset(n, k, [&](const std::vector<int>& s) {
        double prod = 1.0;
        for (int i : s) prod *= x[i];
        sum += std::pow(prod, 1.0 / k);
    });
    return sum;
}

// sum of the k smallest entries via a full sort
inline double minsum_sorted(const symform::RealVector& x, int k) {
    std::vector<double> v(x.data(), x.data() + x.size());
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += v[static_cast<std::size_t>(i)];
    return sum;
}

// the same value as the minimum of all k-subset sums; exhibits minsum as a
// minimum of linear functionals
inline double minsum_subset_min(const symform::RealVector& x, int k) {
    const int n = static_cast<int>(x.size());
    double best = std::numeric_limits<double>::infinity();
    symform::for_each_subset(n, k, [&](const std::vector<int>& s) {
        double sum = 0.0;
        for (int i : s) sum += x[i];
        best = std::min(best, sum);
    });
    return best;
}

// trapezoid integration on a uniform grid; deliberately naive
template <typename Fn>
double trapezoid(Fn&& f, double lo, double hi, int steps) {
    const double h = (hi - lo) / steps;
    double sum = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < steps; ++i) sum += f(lo + i * h);
    return sum * h;
}

}  // namespace oracles
