#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "symform/forms.hpp"
#include "symform/g_family.hpp"
#include "symform/matrix_functions.hpp"
#include "symform/quadrature.hpp"

namespace symform {

struct InterpolationParams {
    double theta = 0.5;
    double p0 = 2.0;  // may be +infinity
    double p1 = 2.0;
    double p_theta = 2.0;

    InterpolationParams(double theta_, double p0_, double p1_, double p_theta_)
        : theta(theta_), p0(p0_), p1(p1_), p_theta(p_theta_) {
        if (!(theta >= 0.0 && theta <= 1.0))
            throw InvalidInputError("InterpolationParams: theta must be in [0,1]");
        const auto reciprocal = [](double p) {
            if (!(p > 0.0)) throw InvalidInputError("InterpolationParams: exponents must be positive");
            return std::isinf(p) ? 0.0 : 1.0 / p;
        };
        const double want = (1.0 - theta) * reciprocal(p0) + theta * reciprocal(p1);
        if (std::abs(reciprocal(p_theta) - want) > 1e-12)
            throw InvalidInputError("InterpolationParams: 1/p_theta != (1-theta)/p0 + theta/p1");
    }
};

struct IneqResult {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    double tol = 0.0;
    bool pass = false;
    std::string inputs_digest;
    std::map<std::string, double> extras;

    void finish() {
        slack = rhs - lhs;
        pass = slack >= -tol;
    }
};

namespace detail {

inline double ineq_tol(double rhs) { return 1e-8 * std::max(1.0, std::abs(rhs)); }

inline RealVector pow_clamped(const RealVector& v, double p) {
    RealVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::pow(std::max(v[i], 0.0), p);
    return out;
}

// phi(|X|^p) through the singular values of X
inline double phi_abs_pow(const FormDescriptor& form, const ComplexMatrix& x, double p) {
    return eval_form(form, pow_clamped(singular_values(x), p));
}

// phi(A^p) through the (clamped) spectrum of a PSD matrix
inline double phi_spectrum_pow(const FormDescriptor& form, const PSDMatrix& a, double p) {
    return eval_form(form, pow_clamped(a.spectrum(), p));
}

inline std::string digest_of(std::initializer_list<const ComplexMatrix*> mats) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const auto* m : mats) h = digest(*m, h);
    return digest_hex(h);
}

inline void require_hoelder_form(const FormDescriptor& form, int n, const char* who) {
    if (!form_is_hoelder(form, n))
        throw InvalidInputError(std::string(who) +
                                ": form is not Hoelder (minsum with k < n); use the override to probe it");
}

}  // namespace detail

// Key interpolation inequality: phi(|G(theta)|^{p_theta}) against the
// beta-weighted boundary terms. A p0 = +inf boundary contributes nothing
// (its coefficient vanishes); theta in {0,1} degenerates to the surviving
// boundary identity through the point mass.
inline IneqResult check_interpolation(const FormDescriptor& form, const GFamily& family,
                                      const InterpolationParams& params,
                                      const QuadratureSpec& spec = {}) {
    IneqResult res;
    res.name = "interpolation";
    const double theta = params.theta;

    res.lhs = detail::phi_abs_pow(form, family.eval(Complex(theta, 0.0)), params.p_theta);

    const double c0 = std::isinf(params.p0) ? 0.0 : (1.0 - theta) * params.p_theta / params.p0;
    const double c1 = std::isinf(params.p1) ? 0.0 : theta * params.p_theta / params.p1;

    double term0 = 0.0, term1 = 0.0;
    if (c0 > 0.0)
        term0 = quad_beta(
            1.0 - theta,
            [&](double t) { return detail::phi_abs_pow(form, family.eval(Complex(0.0, t)), params.p0); },
            spec);
    if (c1 > 0.0)
        term1 = quad_beta(
            theta,
            [&](double t) { return detail::phi_abs_pow(form, family.eval(Complex(1.0, t)), params.p1); },
            spec);
    res.rhs = c0 * term0 + c1 * term1;
    res.tol = detail::ineq_tol(res.rhs) + spec.abs_tol;
    res.finish();
    return res;
}

// T_A[B] = int_0^inf (A+tI)^{-1} B (A+tI)^{-1} dt, evaluated in closed form
// on A's eigenbasis with the divided difference of log:
// g(a,b) = (log a - log b)/(a - b), g(a,a) = 1/a.
inline HermitianMatrix t_op(const PSDMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInputError("t_op: dimension mismatch");
    if (!(a.lambda_min() > 0.0)) throw InvalidInputError("t_op: A must be strictly positive definite");
    const auto& d = a.decomposition();
    const ComplexMatrix bt = d.eigenvectors.adjoint() * b.matrix() * d.eigenvectors;
    const Eigen::Index n = a.dim();
    ComplexMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double li = d.lambda[i], lj = d.lambda[j];
            const double g = (std::abs(li - lj) <= 1e-12 * std::max(li, lj))
                                 ? 1.0 / li
                                 : (std::log(li) - std::log(lj)) / (li - lj);
            out(i, j) = bt(i, j) * g;
        }
    }
    return HermitianMatrix::from_symmetrized(d.eigenvectors * out * d.eigenvectors.adjoint());
}

// ---- named inequality checks -----------------------------------------

// phi(|AB|) <= phi(A^p)^{1/p} phi(B^q)^{1/q}; p = +inf uses the limit
// rhs = lambda_max(A) phi(B), and symmetrically for q.
inline IneqResult check_matrix_hoelder(const FormDescriptor& form, const PSDMatrix& a,
                                       const PSDMatrix& b, double p) {
    detail::require_hoelder_form(form, static_cast<int>(a.dim()), "matrix_hoelder");
    if (a.dim() != b.dim()) throw InvalidInputError("matrix_hoelder: dimension mismatch");
    IneqResult res;
    res.name = "matrix_hoelder";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});
    res.lhs = detail::phi_abs_pow(form, a.matrix() * b.matrix(), 1.0);
    if (std::isinf(p)) {
        res.rhs = a.lambda_max() * eval_form_matrix(form, b);
    } else if (p == 1.0) {
        res.rhs = eval_form_matrix(form, a) * b.lambda_max();
    } else {
        if (!(p > 1.0)) throw InvalidInputError("matrix_hoelder: p must be in (1, inf]");
        const double q = p / (p - 1.0);
        res.rhs = std::pow(detail::phi_spectrum_pow(form, a, p), 1.0 / p) *
                  std::pow(detail::phi_spectrum_pow(form, b, q), 1.0 / q);
    }
    res.tol = detail::ineq_tol(res.rhs);
    res.finish();
    return res;
}

// phi[(B^{t/2} A^t B^{t/2})^{1/t}] nondecreasing in the exponent
inline double alt_value(const FormDescriptor& form, const PSDMatrix& a, const PSDMatrix& b,
                        double t) {
    if (!(t > 0.0)) throw InvalidInputError("alt: exponent must be positive");
    const ComplexMatrix bh = matrix_pow(b, t / 2.0);
    const PSDMatrix mid = PSDMatrix::from_symmetrized(bh * matrix_pow(a, t) * bh);
    return detail::phi_spectrum_pow(form, mid, 1.0 / t);
}

inline IneqResult check_alt(const FormDescriptor& form, const PSDMatrix& a, const PSDMatrix& b,
                            double t, double s) {
    detail::require_hoelder_form(form, static_cast<int>(a.dim()), "alt");
    if (a.dim() != b.dim()) throw InvalidInputError("alt: dimension mismatch");
    if (!(t > 0.0 && s >= t)) throw InvalidInputError("alt: need 0 < t <= s");
    IneqResult res;
    res.name = "alt";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});
    res.lhs = alt_value(form, a, b, t);
    res.rhs = alt_value(form, a, b, s);
    res.tol = detail::ineq_tol(res.rhs);
    res.finish();
    return res;
}

// phi[exp(A+B)] <= phi[|exp(A) exp(B)|]. The spectrum reading
// phi(lambda(exp(A) exp(B))) is recorded alongside; it is the value the
// multivariate bound reduces to at m = 2.
inline IneqResult check_gt(const FormDescriptor& form, const HermitianMatrix& a,
                           const HermitianMatrix& b) {
    detail::require_hoelder_form(form, static_cast<int>(a.dim()), "gt");
    if (a.dim() != b.dim()) throw InvalidInputError("gt: dimension mismatch");
    IneqResult res;
    res.name = "gt";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});

    const RealVector lsum = eigh(HermitianMatrix::from_symmetrized(a.matrix() + b.matrix())).lambda;
    res.lhs = eval_form(form, RealVector(lsum.array().exp().matrix()));

    const ComplexMatrix ea = matrix_exp(a);
    const ComplexMatrix eb = matrix_exp(b);
    res.rhs = detail::phi_abs_pow(form, ea * eb, 1.0);

    const ComplexMatrix ebh = matrix_exp(HermitianMatrix::from_symmetrized(0.5 * b.matrix()));
    const PSDMatrix sym = PSDMatrix::from_symmetrized(ebh * ea * ebh);
    res.extras["rhs_spectrum_reading"] = eval_form_matrix(form, sym);

    res.tol = detail::ineq_tol(res.rhs);
    res.finish();
    return res;
}

// midpoint convexity of A -> phi(exp(A)) on Hermitian pairs
inline IneqResult check_exp_convex(const FormDescriptor& form, const HermitianMatrix& a,
                                   const HermitianMatrix& b, double tau = 0.5) {
    detail::require_hoelder_form(form, static_cast<int>(a.dim()), "exp_convex");
    if (a.dim() != b.dim()) throw InvalidInputError("exp_convex: dimension mismatch");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidInputError("exp_convex: tau must be in [0,1]");
    IneqResult res;
    res.name = "exp_convex";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});
    const auto phi_exp = [&](const ComplexMatrix& h) {
        const RealVector lam = eigh(HermitianMatrix::from_symmetrized(h)).lambda;
        return eval_form(form, RealVector(lam.array().exp().matrix()));
    };
    res.lhs = phi_exp(tau * a.matrix() + (1.0 - tau) * b.matrix());
    res.rhs = tau * phi_exp(a.matrix()) + (1.0 - tau) * phi_exp(b.matrix());
    res.tol = detail::ineq_tol(res.rhs);
    res.finish();
    return res;
}

// log phi((exp(sum A_j))^p) <= int beta_0(t) log phi(|prod exp((1+it)A_j)|^p).
// lhs/rhs are kept in log scale; extras record the node statistics used by
// the m = 2 reduction check.
inline IneqResult check_multi_gt(const FormDescriptor& form,
                                 const std::vector<HermitianMatrix>& as, double p,
                                 const QuadratureSpec& spec = {}) {
    if (as.empty()) throw InvalidInputError("multi_gt: need at least one matrix");
    detail::require_hoelder_form(form, static_cast<int>(as.front().dim()), "multi_gt");
    for (const auto& a : as)
        if (a.dim() != as.front().dim()) throw InvalidInputError("multi_gt: dimension mismatch");
    if (!(p > 0.0)) throw InvalidInputError("multi_gt: p must be positive");

    IneqResult res;
    res.name = "multi_gt";
    {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (const auto& a : as) h = digest(a.matrix(), h);
        res.inputs_digest = digest_hex(h);
    }

    ComplexMatrix sum = ComplexMatrix::Zero(as.front().dim(), as.front().dim());
    for (const auto& a : as) sum += a.matrix();
    const RealVector lsum = eigh(HermitianMatrix::from_symmetrized(sum)).lambda;
    res.lhs = std::log(eval_form(form, RealVector((p * lsum).array().exp().matrix())));

    std::vector<detail::PowerFactor> factors;
    for (const auto& a : as) {
        // with loglam = lambda(A), pow(z) evaluates exp(zA)
        EigenDecomposition d = eigh(a);
        factors.push_back(detail::PowerFactor{std::move(d.eigenvectors), std::move(d.lambda)});
    }
    const auto integrand = [&](double t) {
        const Complex z(1.0, t);
        ComplexMatrix g = factors.front().pow(z);
        for (std::size_t i = 1; i < factors.size(); ++i) g *= factors[i].pow(z);
        return std::log(detail::phi_abs_pow(form, g, p));
    };

    const auto nodes = composite_nodes(spec);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        values[i] = integrand(nodes[i].t);
        if (!std::isfinite(values[i]))
            throw NumericalFailureError("multi_gt: non-finite integrand at t = " +
                                        std::to_string(nodes[i].t));
    }
    res.rhs = pairwise_reduce<double>(nodes.size(), [&](std::size_t i) {
        return nodes[i].weight * beta_density(0.0, nodes[i].t) * values[i];
    });

    const double mean =
        pairwise_reduce<double>(values.size(), [&](std::size_t i) { return values[i]; }) /
        static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    res.extras["integrand_mean"] = mean;
    res.extras["integrand_stdev"] = std::sqrt(var / static_cast<double>(values.size()));
    res.extras["lhs_linear"] = std::exp(res.lhs);
    res.extras["rhs_linear"] = std::exp(res.rhs);

    res.tol = detail::ineq_tol(res.rhs) + spec.abs_tol;
    res.finish();
    return res;
}

// integral identity: int_0^inf (A^{-1}+tI)^{-1} B (A^{-1}+tI)^{-1} dt
// equals int beta_0(t) A^{(1+it)/2} B A^{(1-it)/2} dt. The left side uses
// the closed form of t_op, the right side quadrature; pass iff the max-norm
// difference stays below 1e-6.
inline IneqResult check_t_identity(const PSDMatrix& a, const HermitianMatrix& b,
                                   const QuadratureSpec& spec = {}) {
    if (a.dim() != b.dim()) throw InvalidInputError("t_identity: dimension mismatch");
    if (!(a.lambda_min() > 0.0)) throw InvalidInputError("t_identity: A must be strictly PD");
    IneqResult res;
    res.name = "t_identity";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});

    const PSDMatrix a_inv = PSDMatrix::from_symmetrized(matrix_pow(a, -1.0));
    const ComplexMatrix closed = t_op(a_inv, b).matrix();

    const detail::PowerFactor fa = detail::PowerFactor::from(a, "t_identity");
    const auto nodes = composite_nodes(spec);
    const ComplexMatrix quad = pairwise_reduce<ComplexMatrix>(nodes.size(), [&](std::size_t i) {
        const double t = nodes[i].t;
        const double w = nodes[i].weight * beta_density(0.0, t);
        return ComplexMatrix(w * (fa.pow(Complex(0.5, 0.5 * t)) * b.matrix() *
                                  fa.pow(Complex(0.5, -0.5 * t))));
    });

    // slack here is the max-norm difference of the two sides, not rhs - lhs
    res.lhs = max_abs(ComplexMatrix(closed - quad));
    res.rhs = 0.0;
    res.tol = 1e-6;
    res.slack = res.lhs;
    res.pass = res.slack <= res.tol;
    res.extras["max_norm_closed"] = max_abs(closed);
    res.extras["max_norm_quadrature"] = max_abs(quad);
    return res;
}

// three-matrix bound phi(exp(A1+A2+A3)) <= phi(exp(A1) T_{exp(-A2)}[exp(A3)]).
// The right-hand product of two PD matrices has a real positive spectrum,
// evaluated through the similar Hermitian form P^{1/2} T P^{1/2}; the
// |.|-reading is recorded alongside.
inline IneqResult check_three_matrix(const FormDescriptor& form, const HermitianMatrix& a1,
                                     const HermitianMatrix& a2, const HermitianMatrix& a3) {
    detail::require_hoelder_form(form, static_cast<int>(a1.dim()), "three_matrix");
    if (a1.dim() != a2.dim() || a1.dim() != a3.dim())
        throw InvalidInputError("three_matrix: dimension mismatch");
    IneqResult res;
    res.name = "three_matrix";
    res.inputs_digest = detail::digest_of({&a1.matrix(), &a2.matrix(), &a3.matrix()});

    const RealVector lsum =
        eigh(HermitianMatrix::from_symmetrized(a1.matrix() + a2.matrix() + a3.matrix())).lambda;
    res.lhs = eval_form(form, RealVector(lsum.array().exp().matrix()));

    const PSDMatrix em_a2 = PSDMatrix::from_symmetrized(
        matrix_exp(HermitianMatrix::from_symmetrized(-a2.matrix())));
    const PSDMatrix ea3 = PSDMatrix::from_symmetrized(matrix_exp(a3));
    const HermitianMatrix t = t_op(em_a2, ea3.hermitian());

    const ComplexMatrix p_half =
        matrix_exp(HermitianMatrix::from_symmetrized(0.5 * a1.matrix()));
    const PSDMatrix sym = PSDMatrix::from_symmetrized(p_half * t.matrix() * p_half);
    res.rhs = eval_form_matrix(form, sym);

    const ComplexMatrix p_full = matrix_exp(a1);
    res.extras["rhs_abs_reading"] = detail::phi_abs_pow(form, p_full * t.matrix(), 1.0);

    res.tol = detail::ineq_tol(res.rhs);
    res.finish();
    return res;
}

// Lie product diagnostic: the error of (e^{tB/2} e^{tA} e^{tB/2})^{1/t}
// against e^{A+B} for t = 2^{-j}, j = 1..8, must decrease to <= 1e-4.
inline IneqResult check_lie_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInputError("lie_product: dimension mismatch");
    IneqResult res;
    res.name = "lie_product";
    res.inputs_digest = detail::digest_of({&a.matrix(), &b.matrix()});

    const ComplexMatrix target = matrix_exp(HermitianMatrix::from_symmetrized(a.matrix() + b.matrix()));
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double last = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double t = std::ldexp(1.0, -j);
        const ComplexMatrix eb = matrix_exp(HermitianMatrix::from_symmetrized(0.5 * t * b.matrix()));
        const ComplexMatrix ea = matrix_exp(HermitianMatrix::from_symmetrized(t * a.matrix()));
        const PSDMatrix prod = PSDMatrix::from_symmetrized(eb * ea * eb);
        const ComplexMatrix root = matrix_pow(prod, 1.0 / t);
        const double err = max_abs(ComplexMatrix(root - target));
        res.extras["err_j" + std::to_string(j)] = err;
        // below ~1e-9 the 2^j amplification of eigensolver noise dominates
        if (err >= prev && err > 1e-9) monotone = false;
        prev = err;
        last = err;
    }
    res.lhs = last;
    res.rhs = 0.0;
    res.tol = 1e-4;
    res.slack = res.tol - res.lhs;
    res.pass = monotone && res.lhs <= res.tol;
    res.extras["monotone"] = monotone ? 1.0 : 0.0;
    return res;
}

}  // namespace symform
