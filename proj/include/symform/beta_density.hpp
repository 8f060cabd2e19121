#pragma once

#include <cmath>
#include <limits>

#include "symform/errors.hpp"

namespace symform {

// Interpolation weight beta_theta(t) = sin(pi theta) /
// (2 theta (cosh(pi t) + cos(pi theta))) for theta in (0,1), with the
// limits beta_0(t) = pi / (2 (cosh(pi t) + 1)) and beta_1 = a point mass
// at t = 0 (quadrature evaluates the integrand there instead).
inline double beta_density(double theta, double t) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidInputError("beta_density: theta must be in [0,1]");
    if (theta == 0.0) return M_PI / (2.0 * (std::cosh(M_PI * t) + 1.0));
    if (theta == 1.0)
        return t == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::sin(M_PI * theta) / (2.0 * theta * (std::cosh(M_PI * t) + std::cos(M_PI * theta)));
}

inline bool beta_is_atomic(double theta) { return theta == 1.0; }

// bound on the truncated tail 2 * int_T^inf beta_theta, using
// cosh(pi t) + cos(pi theta) >= cosh(pi t) - 1 >= exp(pi t)/2 - 1
inline double beta_tail_bound(double theta, double truncation) {
    const double amp = (theta == 0.0) ? M_PI / 2.0 : std::sin(M_PI * theta) / (2.0 * theta);
    return amp * (2.0 / M_PI) * std::exp(-M_PI * truncation);
}

}  // namespace symform
