#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "symform/forms.hpp"
#include "symform/hermitian.hpp"
#include "symform/matrix_functions.hpp"

namespace symform {

inline constexpr std::uint64_t kCompoundDimCap = 5000;

// all k-subsets of {0..n-1} in lexicographic order; subset rank is the
// canonical basis index of the compound matrix
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(binomial_capped(n, k, kCompoundDimCap)));
    for_each_subset(n, k, [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

struct CompoundMatrix {
    int k = 1;
    int base_n = 1;
    ComplexMatrix entries;  // binomial(base_n, k) square, lex subset order
};

// k-th compound: entry (S,T) is the k x k minor det A[S rows, T cols].
inline CompoundMatrix compound(const ComplexMatrix& a, int k) {
    require_finite(a, "compound");
    require_square(a, "compound");
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n) throw InvalidInputError("compound: k out of range");
    const auto dim = binomial_capped(n, k, kCompoundDimCap);
    const auto subsets = subsets_lex(n, k);

    CompoundMatrix c;
    c.k = k;
    c.base_n = n;
    c.entries.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    ComplexMatrix minor(k, k);
    for (std::size_t si = 0; si < subsets.size(); ++si) {
        for (std::size_t ti = 0; ti < subsets.size(); ++ti) {
            for (int r = 0; r < k; ++r)
                for (int cidx = 0; cidx < k; ++cidx)
                    minor(r, cidx) = a(subsets[si][static_cast<std::size_t>(r)],
                                       subsets[ti][static_cast<std::size_t>(cidx)]);
            c.entries(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(ti)) =
                minor.determinant();
        }
    }
    return c;
}

struct CompoundPropertyReport {
    struct Item {
        std::string name;
        double deviation;  // max relative deviation observed
        double tolerance;
        bool pass;
    };
    std::vector<Item> items;
    bool pass = true;

    void add(std::string name, double deviation, double tolerance) {
        items.push_back({std::move(name), deviation, tolerance, deviation <= tolerance});
        pass = pass && items.back().pass;
    }
};

namespace detail {

inline double rel_dev(const ComplexMatrix& got, const ComplexMatrix& want) {
    const double scale = std::max(1.0, max_abs(want));
    return max_abs(ComplexMatrix(got - want)) / scale;
}

}  // namespace detail

// Algebraic identities of the compound construction: product, adjoint,
// inverse and abs rules on general inputs; power, spectrum and
// top-eigenvalue rules on the PSD matrix |A|.
inline CompoundPropertyReport compound_property_check(const ComplexMatrix& a,
                                                      const ComplexMatrix& b, int k) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInputError("compound_property_check: dimension mismatch");
    CompoundPropertyReport report;
    const double tol = 1e-8;

    const CompoundMatrix ca = compound(a, k);
    const CompoundMatrix cb = compound(b, k);

    report.add("product", detail::rel_dev(compound(a * b, k).entries, ca.entries * cb.entries), tol);
    report.add("adjoint", detail::rel_dev(compound(ComplexMatrix(a.adjoint()), k).entries,
                                          ComplexMatrix(ca.entries.adjoint())),
               tol);

    Eigen::FullPivLU<ComplexMatrix> lu(a);
    if (lu.isInvertible()) {
        report.add("inverse",
                   detail::rel_dev(compound(ComplexMatrix(lu.inverse()), k).entries,
                                   ComplexMatrix(ca.entries.fullPivLu().inverse())),
                   tol);
    }

    report.add("abs", detail::rel_dev(compound(matrix_abs(a).matrix(), k).entries,
                                      matrix_abs(ca.entries).matrix()),
               tol);

    // PSD side: powers and spectra on |A|
    const PSDMatrix pa = matrix_abs(a);
    const PSDMatrix cpa = PSDMatrix::from_symmetrized(compound(pa.matrix(), k).entries);

    const Complex powers[] = {Complex(0.5, 0.0), Complex(2.0, 0.0), Complex(0.0, 1.0)};
    for (const Complex& t : powers) {
        const ComplexMatrix lhs = compound(matrix_pow(pa, t), k).entries;
        const ComplexMatrix rhs = matrix_pow(cpa, t);
        const std::string label = t.imag() == 0.0
                                      ? "power t=" + std::to_string(t.real())
                                      : "power t=i";
        report.add(label, detail::rel_dev(lhs, rhs), tol);
    }

    {
        const RealVector base = pa.spectrum();
        std::vector<double> products;
        for_each_subset(static_cast<int>(base.size()), k, [&](const std::vector<int>& s) {
            double prod = 1.0;
            for (int i : s) prod *= base[i];
            products.push_back(prod);
        });
        std::sort(products.begin(), products.end(), std::greater<double>());
        const RealVector got = cpa.spectrum();
        double dev = 0.0;
        const double scale = std::max(1.0, std::abs(products.front()));
        for (Eigen::Index i = 0; i < got.size(); ++i)
            dev = std::max(dev, std::abs(got[i] - products[static_cast<std::size_t>(i)]) / scale);
        report.add("spectrum", dev, tol);

        const double top = products.front();
        report.add("top_eigenvalue", std::abs(cpa.lambda_max() - top) / std::max(1.0, top), tol);
    }

    return report;
}

}  // namespace symform
