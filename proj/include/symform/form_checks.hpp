#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "symform/forms.hpp"
#include "symform/seeding.hpp"

namespace symform {

enum class CheckVerdict { not_run, pass, fail };

struct FormWitness {
    RealVector x;
    RealVector y;
    double t_param = 0.0;  // tau, Hoelder p, or homogeneity t, depending on the check
    double lhs = 0.0;
    double rhs = 0.0;
    std::string what;
};

struct FormPropertyReport {
    CheckVerdict axioms = CheckVerdict::not_run;
    CheckVerdict hoelder = CheckVerdict::not_run;
    CheckVerdict concave = CheckVerdict::not_run;
    std::optional<FormWitness> witness;
    long trials = 0;
    std::uint64_t seed = 0;

    bool pass() const {
        return axioms != CheckVerdict::fail && hoelder != CheckVerdict::fail &&
               concave != CheckVerdict::fail;
    }
};

namespace detail {

inline RealVector sample_nonneg(RandomStream& rng, int n) {
    RealVector x(n);
    for (int i = 0; i < n; ++i) {
        // occasional exact zeros exercise the boundary of R_+^n
        x[i] = (rng.uniform() < 0.1) ? 0.0 : std::exp(rng.uniform(-2.0, 2.0));
    }
    return x;
}

inline RealVector sample_positive(RandomStream& rng, int n) {
    RealVector x(n);
    for (int i = 0; i < n; ++i) x[i] = std::exp(rng.uniform(-2.0, 2.0));
    return x;
}

inline RealVector sample_real(RandomStream& rng, int n, double scale) {
    RealVector x(n);
    for (int i = 0; i < n; ++i) x[i] = scale * rng.gaussian();
    return x;
}

inline RealVector permuted(RandomStream& rng, const RealVector& x) {
    RealVector y = x;
    for (Eigen::Index i = y.size() - 1; i > 0; --i)
        std::swap(y[i], y[static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(i) + 1))]);
    return y;
}

}  // namespace detail

// Homogeneity, monotonicity and symmetry over seeded trials. Strict
// monotonicity is only asserted with an entrywise margin of 1e-3; strict
// inequalities at machine precision are not testable.
inline FormPropertyReport check_axioms(const FormDescriptor& form, int n, long trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw InvalidInputError("check_axioms: trials must be >= 1");
    FormPropertyReport report;
    report.trials = trials;
    report.seed = seed;
    report.axioms = CheckVerdict::pass;

    const auto fail = [&](FormWitness w) {
        report.axioms = CheckVerdict::fail;
        report.witness = std::move(w);
    };

    for (long trial = 0; trial < trials && report.axioms == CheckVerdict::pass; ++trial) {
        RandomStream rng(derive_trial_seed(seed, static_cast<std::uint64_t>(trial)));
        const RealVector x = detail::sample_nonneg(rng, n);
        const double fx = eval_form(form, x);

        const double ts[] = {0.0, 0.5, 3.0, rng.uniform(0.0, 4.0)};
        for (double t : ts) {
            const double lhs = eval_form(form, RealVector(t * x));
            const double rhs = t * fx;
            if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
                fail({x, x, t, lhs, rhs, "homogeneity"});
                break;
            }
        }
        if (report.axioms == CheckVerdict::fail) break;

        const RealVector px = detail::permuted(rng, x);
        const double fpx = eval_form(form, px);
        if (std::abs(fx - fpx) > 1e-10 * std::max(1.0, std::abs(fx))) {
            fail({x, px, 0.0, fx, fpx, "symmetry"});
            break;
        }

        RealVector d(n);
        const bool strict = (trial % 2 == 0);
        for (int i = 0; i < n; ++i)
            d[i] = strict ? 1e-3 + rng.uniform() : rng.uniform() * (rng.uniform() < 0.3 ? 0.0 : 1.0);
        const RealVector x_up = x + d;
        const double f_up = eval_form(form, x_up);
        if (f_up < fx - 1e-12 * std::max(1.0, std::abs(fx))) {
            fail({x_up, x, 0.0, f_up, fx, "monotonicity"});
            break;
        }
        if (strict && !(f_up > fx)) {
            fail({x_up, x, 0.0, f_up, fx, "strict monotonicity"});
            break;
        }
    }
    return report;
}

namespace detail {

struct HoelderProbe {
    RealVector x, y;
    double p;
};

// Canonical probe pairs tried before random sampling. The block/swap pair is
// the witness family that separates minsum(k < n) from the Hoelder forms;
// for n = 2, k = 1 it is exactly x = (1,10), y = (10,1), p = 2.
inline std::vector<HoelderProbe> canonical_hoelder_probes(int n) {
    std::vector<HoelderProbe> probes;
    for (int k = 1; k < n; ++k) {
        RealVector x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = i < k ? 1.0 : 10.0;
            y[i] = i < k ? 10.0 : 1.0;
        }
        probes.push_back({x, y, 2.0});
    }
    probes.push_back({RealVector::Ones(n), RealVector::Ones(n), 2.0});
    return probes;
}

}  // namespace detail

// Two tests, both run per trial: (a) midpoint convexity of phi(exp(.)) on
// real vectors, (b) Hoelder's inequality on positive pairs for p in
// {1.25, 2, 4} plus the p -> infinity limit rhs = max(x) * phi(y).
inline FormPropertyReport check_hoelder(const FormDescriptor& form, int n, long trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw InvalidInputError("check_hoelder: trials must be >= 1");
    FormPropertyReport report;
    report.trials = trials;
    report.seed = seed;
    report.hoelder = CheckVerdict::pass;

    const auto tol = [](double lhs, double rhs) {
        return 1e-9 + 1e-8 * std::max(std::abs(lhs), std::abs(rhs));
    };

    const auto try_pair = [&](const RealVector& x, const RealVector& y, double p) -> bool {
        const double lhs = eval_form(form, RealVector(x.cwiseProduct(y)));
        double rhs;
        if (std::isinf(p)) {
            rhs = x.maxCoeff() * eval_form(form, y);
        } else {
            const double q = p / (p - 1.0);
            const double fxp = eval_form(form, RealVector(x.array().pow(p).matrix()));
            const double fyq = eval_form(form, RealVector(y.array().pow(q).matrix()));
            rhs = std::pow(fxp, 1.0 / p) * std::pow(fyq, 1.0 / q);
        }
        if (lhs > rhs + tol(lhs, rhs)) {
            report.hoelder = CheckVerdict::fail;
            report.witness = FormWitness{x, y, p, lhs, rhs, "hoelder"};
            return false;
        }
        return true;
    };

    for (const auto& probe : detail::canonical_hoelder_probes(n))
        if (!try_pair(probe.x, probe.y, probe.p)) return report;

    const double inf = std::numeric_limits<double>::infinity();
    const double p_grid[] = {1.25, 2.0, 4.0, inf};

    for (long trial = 0; trial < trials; ++trial) {
        RandomStream rng(derive_trial_seed(seed, static_cast<std::uint64_t>(trial)));

        // (a) phi o exp midpoint convexity
        const RealVector u = detail::sample_real(rng, n, 1.5);
        const RealVector v = detail::sample_real(rng, n, 1.5);
        const double f_mid = eval_form(form, RealVector(((u + v) / 2.0).array().exp().matrix()));
        const double f_u = eval_form(form, RealVector(u.array().exp().matrix()));
        const double f_v = eval_form(form, RealVector(v.array().exp().matrix()));
        const double avg = 0.5 * (f_u + f_v);
        if (f_mid > avg + tol(f_mid, avg)) {
            report.hoelder = CheckVerdict::fail;
            report.witness = FormWitness{u, v, 0.5, f_mid, avg, "phi(exp) convexity"};
            return report;
        }

        // (b) direct Hoelder on a fixed exponent grid
        const RealVector x = detail::sample_positive(rng, n);
        const RealVector y = detail::sample_positive(rng, n);
        for (double p : p_grid)
            if (!try_pair(x, y, p)) return report;
    }
    return report;
}

// Midpoint and random-tau concavity on nonnegative vectors.
inline FormPropertyReport check_concavity_vector(const FormDescriptor& form, int n, long trials,
                                                 std::uint64_t seed) {
    if (trials < 1) throw InvalidInputError("check_concavity_vector: trials must be >= 1");
    FormPropertyReport report;
    report.trials = trials;
    report.seed = seed;
    report.concave = CheckVerdict::pass;

    for (long trial = 0; trial < trials; ++trial) {
        RandomStream rng(derive_trial_seed(seed, static_cast<std::uint64_t>(trial)));
        const RealVector x = detail::sample_nonneg(rng, n);
        const RealVector y = detail::sample_nonneg(rng, n);
        const double fx = eval_form(form, x);
        const double fy = eval_form(form, y);
        const double taus[] = {0.5, rng.uniform()};
        for (double tau : taus) {
            const double lhs = eval_form(form, RealVector(tau * x + (1.0 - tau) * y));
            const double rhs = tau * fx + (1.0 - tau) * fy;
            if (lhs < rhs - (1e-9 + 1e-8 * std::abs(rhs))) {
                report.concave = CheckVerdict::fail;
                report.witness = FormWitness{x, y, tau, lhs, rhs, "concavity"};
                return report;
            }
        }
    }
    return report;
}

}  // namespace symform
