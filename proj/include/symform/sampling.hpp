#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "symform/complex_matrix.hpp"
#include "symform/hermitian.hpp"
#include "symform/seeding.hpp"

namespace symform {

enum class SampleKind { psd, hermitian, general, unitary };

inline SampleKind parse_sample_kind(const std::string& s) {
    if (s == "psd") return SampleKind::psd;
    if (s == "hermitian") return SampleKind::hermitian;
    if (s == "general") return SampleKind::general;
    if (s == "unitary") return SampleKind::unitary;
    throw InvalidInputError("unknown sample kind '" + s + "'");
}

// n x m matrix of standard complex Gaussians drawn from an existing stream
inline ComplexMatrix gaussian_matrix(RandomStream& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

inline ComplexMatrix sample_unitary(RandomStream& rng, Eigen::Index n) {
    const ComplexMatrix g = gaussian_matrix(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    // fix phases so Q is uniquely determined by G (and Haar distributed)
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double ad = std::abs(d);
        q.col(j) *= (ad > 0.0) ? d / ad : Complex(1.0, 0.0);
    }
    return q;
}

// Strictly positive-definite sample: scale * (G G^* + 1e-6 I). The ridge
// keeps fractional powers and logs finite downstream.
inline PSDMatrix sample_psd(RandomStream& rng, Eigen::Index n, double scale = 1.0) {
    const ComplexMatrix g = gaussian_matrix(rng, n, n);
    ComplexMatrix a = g * g.adjoint();
    a += 1e-6 * ComplexMatrix::Identity(n, n);
    a *= scale;
    return PSDMatrix::from_symmetrized(a);
}

inline HermitianMatrix sample_hermitian(RandomStream& rng, Eigen::Index n, double scale = 1.0) {
    const ComplexMatrix g = gaussian_matrix(rng, n, n);
    return HermitianMatrix::from_symmetrized(scale * 0.5 * (g + g.adjoint()));
}

// Seeded sampler, deterministic in (kind, n, seed, scale).
inline ComplexMatrix sample(SampleKind kind, Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
    if (n < 1) throw InvalidInputError("sample: n must be >= 1");
    RandomStream rng(seed);
    switch (kind) {
        case SampleKind::psd:
            return sample_psd(rng, n, scale).matrix();
        case SampleKind::hermitian:
            return sample_hermitian(rng, n, scale).matrix();
        case SampleKind::general:
            return scale * gaussian_matrix(rng, n, n);
        case SampleKind::unitary:
            return sample_unitary(rng, n);
    }
    throw InvalidInputError("sample: unreachable kind");
}

}  // namespace symform
