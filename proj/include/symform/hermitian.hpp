#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "symform/complex_matrix.hpp"
#include "symform/errors.hpp"

namespace symform {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdClampTol = 1e-10;

// U * diag(lambda) * U^* with lambda sorted descending. Ties keep the
// eigensolver's original order (stable), so repeated runs agree entry for
// entry, not just as multisets.
struct EigenDecomposition {
    ComplexMatrix eigenvectors;  // unitary, columns follow lambda's order
    RealVector lambda;           // descending

    ComplexMatrix reconstruct() const {
        return eigenvectors * lambda.asDiagonal() * eigenvectors.adjoint();
    }
};

inline double hermitian_defect(const ComplexMatrix& a) {
    return max_abs(ComplexMatrix(a - a.adjoint()));
}

// n x n complex matrix with A = A^* enforced at construction and stored in
// the canonical form (A + A^*)/2.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& a) {
        require_finite(a, "HermitianMatrix");
        require_square(a, "HermitianMatrix");
        if (hermitian_defect(a) > kHermitianTol * max_abs(a))
            throw InvalidInputError("HermitianMatrix: input is not Hermitian within tolerance");
        mat_ = hermitize(a);
    }

    // skips the defect check; for matrices that are Hermitian by
    // construction (sums, congruences) and only carry roundoff
    static HermitianMatrix from_symmetrized(const ComplexMatrix& a) {
        require_finite(a, "HermitianMatrix");
        require_square(a, "HermitianMatrix");
        return HermitianMatrix(hermitize(a), unchecked_tag{});
    }

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    struct unchecked_tag {};
    HermitianMatrix(ComplexMatrix m, unchecked_tag) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

// Eigendecomposition of a Hermitian matrix, descending eigenvalues with
// stable tie-breaking by the solver's original index order.
inline EigenDecomposition eigh(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
    if (solver.info() != Eigen::Success)
        throw NumericalFailureError("eigh: eigensolver did not converge");

    const Eigen::Index n = a.dim();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const RealVector& raw = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return raw[i] > raw[j]; });

    EigenDecomposition d;
    d.lambda.resize(n);
    d.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d.lambda[i] = raw[order[static_cast<std::size_t>(i)]];
        d.eigenvectors.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    }
    return d;
}

inline EigenDecomposition eigh(const ComplexMatrix& a) {
    return eigh(HermitianMatrix(a));
}

// Hermitian matrix with a certified spectrum: eigenvalues below
// -kPsdClampTol * max(1, lambda_max) reject the input; negative noise within
// that band is clamped to zero. The decomposition is computed once here and
// reused by every downstream matrix function.
class PSDMatrix {
public:
    explicit PSDMatrix(const HermitianMatrix& a) : mat_(a.matrix()), decomp_(eigh(a)) {
        certify_and_clamp();
    }

    explicit PSDMatrix(const ComplexMatrix& a) : PSDMatrix(HermitianMatrix(a)) {}

    // for Hermitian-by-construction inputs (congruences K^* X K, products
    // that are PSD up to roundoff)
    static PSDMatrix from_symmetrized(const ComplexMatrix& a) {
        return PSDMatrix(HermitianMatrix::from_symmetrized(a));
    }

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const EigenDecomposition& decomposition() const { return decomp_; }
    const RealVector& spectrum() const { return decomp_.lambda; }
    double lambda_max() const { return decomp_.lambda[0]; }
    double lambda_min() const { return decomp_.lambda[decomp_.lambda.size() - 1]; }

    HermitianMatrix hermitian() const { return HermitianMatrix::from_symmetrized(mat_); }

private:
    void certify_and_clamp() {
        const Eigen::Index n = decomp_.lambda.size();
        if (n == 0) throw InvalidInputError("PSDMatrix: empty matrix");
        const double floor = -kPsdClampTol * std::max(1.0, decomp_.lambda[0]);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (decomp_.lambda[i] < floor)
                throw InvalidInputError("PSDMatrix: spectrum has a genuinely negative eigenvalue " +
                                        std::to_string(decomp_.lambda[i]));
            if (decomp_.lambda[i] < 0.0) decomp_.lambda[i] = 0.0;
        }
    }

    ComplexMatrix mat_;
    EigenDecomposition decomp_;
};

}  // namespace symform
