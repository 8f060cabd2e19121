#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <cstring>
#include <string>

#include "symform/errors.hpp"

namespace symform {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline double max_abs(const ComplexMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

inline void require_finite(const ComplexMatrix& a, const char* who) {
    if (!all_finite(a)) throw InvalidInputError(std::string(who) + ": non-finite entries");
}

inline void require_square(const ComplexMatrix& a, const char* who) {
    if (a.rows() != a.cols()) throw InvalidInputError(std::string(who) + ": matrix must be square");
}

// exact-Hermitian canonical form
inline ComplexMatrix hermitize(const ComplexMatrix& a) {
    return 0.5 * (a + a.adjoint());
}

// FNV-1a over the raw little-endian bytes of the entries; used for input
// digests in reports.
inline std::uint64_t fnv1a_bytes(const void* data, std::size_t len, std::uint64_t h = 0xCBF29CE484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t digest(const ComplexMatrix& a, std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double re = a(i, j).real(), im = a(i, j).imag();
            h = fnv1a_bytes(&re, sizeof re, h);
            h = fnv1a_bytes(&im, sizeof im, h);
        }
    return h;
}

inline std::string digest_hex(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return s;
}

}  // namespace symform
