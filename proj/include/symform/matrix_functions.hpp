#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <utility>

#include "symform/hermitian.hpp"

namespace symform {

// f(A) = U diag(f(lambda)) U^* through the spectral decomposition. f may be
// complex-valued (lambda^{it} and friends); non-finite f values are reported
// with the eigenvalue that produced them.
template <typename Fn>
ComplexMatrix matrix_fn(const EigenDecomposition& d, Fn&& f) {
    const Eigen::Index n = d.lambda.size();
    Eigen::VectorXcd fx(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex v = f(d.lambda[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw SingularSpectrumError("matrix_fn: f undefined on spectrum", d.lambda[i]);
        fx[i] = v;
    }
    return d.eigenvectors * fx.asDiagonal() * d.eigenvectors.adjoint();
}

template <typename Fn>
ComplexMatrix matrix_fn(const HermitianMatrix& a, Fn&& f) {
    return matrix_fn(eigh(a), std::forward<Fn>(f));
}

template <typename Fn>
ComplexMatrix matrix_fn(const PSDMatrix& a, Fn&& f) {
    return matrix_fn(a.decomposition(), std::forward<Fn>(f));
}

// lambda^z on a PSD spectrum as exp(z log lambda). Clamped-zero eigenvalues
// are only admissible when the power maps 0 to a finite limit (Re z > 0, or
// z = 0 with the 0^0 = 1 convention used by spectra of exponent grids).
inline ComplexMatrix matrix_pow(const PSDMatrix& a, Complex z) {
    return matrix_fn(a, [&](double lam) -> Complex {
        if (lam > 0.0) return std::exp(z * std::log(lam));
        if (z == Complex(0.0, 0.0)) return 1.0;
        if (z.real() > 0.0 && z.imag() == 0.0) return 0.0;
        throw SingularSpectrumError("matrix_pow: power undefined at clamped zero", lam);
    });
}

inline ComplexMatrix matrix_pow(const PSDMatrix& a, double p) {
    return matrix_pow(a, Complex(p, 0.0));
}

inline ComplexMatrix matrix_sqrt(const PSDMatrix& a) {
    return matrix_fn(a, [](double lam) { return Complex(std::sqrt(std::max(lam, 0.0)), 0.0); });
}

inline ComplexMatrix matrix_log(const PSDMatrix& a) {
    return matrix_fn(a, [](double lam) -> Complex {
        if (lam <= 0.0) throw SingularSpectrumError("matrix_log: log at clamped zero", lam);
        return Complex(std::log(lam), 0.0);
    });
}

inline ComplexMatrix matrix_exp(const HermitianMatrix& a) {
    return matrix_fn(a, [](double lam) { return Complex(std::exp(lam), 0.0); });
}

// |X| = (X^* X)^{1/2}
inline PSDMatrix matrix_abs(const ComplexMatrix& x) {
    require_finite(x, "matrix_abs");
    require_square(x, "matrix_abs");
    const PSDMatrix gram = PSDMatrix::from_symmetrized(x.adjoint() * x);
    return PSDMatrix::from_symmetrized(matrix_sqrt(gram));
}

// Singular values of a (possibly rectangular) matrix, descending. One-sided
// Jacobi keeps high relative accuracy even on the smallest values, which the
// log-majorization checks depend on.
inline RealVector singular_values(const ComplexMatrix& x) {
    require_finite(x, "singular_values");
    Eigen::JacobiSVD<ComplexMatrix> svd(x);
    return svd.singularValues();
}

struct PolarDecomposition {
    ComplexMatrix unitary;  // Q
    PSDMatrix positive;     // |M|
};

// M = Q |M| for square invertible M (smallest singular value at least
// 1e-10 of the largest).
inline PolarDecomposition polar(const ComplexMatrix& m) {
    require_finite(m, "polar");
    require_square(m, "polar");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const Eigen::Index n = m.rows();
    if (sv[n - 1] < 1e-10 * sv[0])
        throw IllConditionedError("polar: matrix is numerically singular");
    ComplexMatrix q = svd.matrixU() * svd.matrixV().adjoint();
    ComplexMatrix p = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
    return PolarDecomposition{std::move(q), PSDMatrix::from_symmetrized(p)};
}

}  // namespace symform
