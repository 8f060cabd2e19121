#include <catch2/catch_amalgamated.hpp>

#include "symform/hermitian.hpp"
#include "symform/matrix_functions.hpp"
#include "symform/sampling.hpp"

using namespace symform;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("eigh sorts descending with stable ties", "[hermitian]") {
    SECTION("diagonal") {
        const auto d = eigh(HermitianMatrix(diag2(1.0, 2.0)));
        REQUIRE(d.lambda[0] == Catch::Approx(2.0).margin(1e-14));
        REQUIRE(d.lambda[1] == Catch::Approx(1.0).margin(1e-14));
        // columns are a permutation of the standard basis
        REQUIRE(std::abs(d.eigenvectors(1, 0)) == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(std::abs(d.eigenvectors(0, 1)) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("identity") {
        const auto d = eigh(HermitianMatrix(ComplexMatrix::Identity(3, 3)));
        for (int i = 0; i < 3; ++i) REQUIRE(d.lambda[i] == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(max_abs(ComplexMatrix(d.eigenvectors.adjoint() * d.eigenvectors -
                                      ComplexMatrix::Identity(3, 3))) < 1e-10);
    }
    SECTION("random reconstruction") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const HermitianMatrix a(sample(SampleKind::hermitian, 5, seed));
            const auto d = eigh(a);
            REQUIRE(max_abs(ComplexMatrix(d.reconstruct() - a.matrix())) <=
                    1e-9 * std::max(1.0, max_abs(a.matrix())));
            REQUIRE(max_abs(ComplexMatrix(d.eigenvectors.adjoint() * d.eigenvectors -
                                          ComplexMatrix::Identity(5, 5))) <= 1e-10);
            for (int i = 0; i + 1 < 5; ++i) REQUIRE(d.lambda[i] >= d.lambda[i + 1]);
        }
    }
    SECTION("reconstruction round trip is idempotent") {
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const HermitianMatrix a(sample(SampleKind::hermitian, 4, seed));
            const auto d = eigh(a);
            const auto d2 = eigh(HermitianMatrix::from_symmetrized(d.reconstruct()));
            for (int i = 0; i < 4; ++i)
                REQUIRE(d2.lambda[i] == Catch::Approx(d.lambda[i]).margin(1e-9));
        }
    }
}

TEST_CASE("hermitian constructor rejects bad input", "[hermitian]") {
    ComplexMatrix bad(2, 2);
    bad << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;  // A != A*
    REQUIRE_THROWS_AS(HermitianMatrix(bad), InvalidInputError);

    ComplexMatrix nan_mat = ComplexMatrix::Identity(2, 2);
    nan_mat(0, 0) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(HermitianMatrix(nan_mat), InvalidInputError);

    REQUIRE_THROWS_AS(HermitianMatrix(ComplexMatrix::Identity(2, 3)), InvalidInputError);
}

TEST_CASE("psd certification clamps noise and rejects negatives", "[hermitian]") {
    const PSDMatrix ok(diag2(1.0, -1e-12));
    REQUIRE(ok.lambda_min() == 0.0);
    REQUIRE_THROWS_AS(PSDMatrix(diag2(1.0, -0.5)), InvalidInputError);
}

TEST_CASE("matrix_fn spectral calculus", "[hermitian]") {
    SECTION("sqrt of diagonal") {
        const PSDMatrix a(diag2(4.0, 9.0));
        const ComplexMatrix r = matrix_sqrt(a);
        REQUIRE(max_abs(ComplexMatrix(r - diag2(2.0, 3.0))) < 1e-12);
    }
    SECTION("zeroth power is the identity") {
        const PSDMatrix a(PSDMatrix::from_symmetrized(sample(SampleKind::psd, 4, 7)));
        const ComplexMatrix r = matrix_pow(a, 0.0);
        REQUIRE(max_abs(ComplexMatrix(r - ComplexMatrix::Identity(4, 4))) < 1e-10);
    }
    SECTION("imaginary powers are unitary") {
        const PSDMatrix a(PSDMatrix::from_symmetrized(sample(SampleKind::psd, 5, 11)));
        const ComplexMatrix x = matrix_pow(a, Complex(0.0, 0.7));
        REQUIRE(max_abs(ComplexMatrix(x.adjoint() * x - ComplexMatrix::Identity(5, 5))) <= 1e-10);
    }
    SECTION("log rejects clamped zero") {
        const PSDMatrix a(diag2(1.0, 0.0));
        REQUIRE_THROWS_AS(matrix_log(a), SingularSpectrumError);
    }
    SECTION("power round trip r then 1/r") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const PSDMatrix a(PSDMatrix::from_symmetrized(sample(SampleKind::psd, 4, seed)));
            for (double r : {0.3, 0.5, 1.0}) {
                const PSDMatrix ar = PSDMatrix::from_symmetrized(matrix_pow(a, r));
                const ComplexMatrix back = matrix_pow(ar, 1.0 / r);
                REQUIRE(max_abs(ComplexMatrix(back - a.matrix())) <=
                        1e-8 * std::max(1.0, max_abs(a.matrix())));
            }
        }
    }
    SECTION("basis covariance f(U*AU) = U* f(A) U") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const PSDMatrix a(PSDMatrix::from_symmetrized(sample(SampleKind::psd, 4, seed)));
            const ComplexMatrix u = sample(SampleKind::unitary, 4, seed + 1000);
            const PSDMatrix conj(PSDMatrix::from_symmetrized(u.adjoint() * a.matrix() * u));
            const ComplexMatrix lhs = matrix_sqrt(conj);
            const ComplexMatrix rhs = u.adjoint() * matrix_sqrt(a) * u;
            REQUIRE(max_abs(ComplexMatrix(lhs - rhs)) <= 1e-9 * std::max(1.0, max_abs(rhs)));
        }
    }
}

TEST_CASE("matrix_abs", "[hermitian]") {
    SECTION("unitary maps to identity") {
        const ComplexMatrix u = sample(SampleKind::unitary, 4, 3);
        REQUIRE(max_abs(ComplexMatrix(matrix_abs(u).matrix() - ComplexMatrix::Identity(4, 4))) <
                1e-10);
    }
    SECTION("psd is a fixed point") {
        const ComplexMatrix a = sample(SampleKind::psd, 4, 5);
        REQUIRE(max_abs(ComplexMatrix(matrix_abs(a).matrix() - a)) <= 1e-9 * max_abs(a));
    }
    SECTION("nilpotent 2x2") {
        ComplexMatrix x = ComplexMatrix::Zero(2, 2);
        x(0, 1) = 1.0;
        // (X*X)^{1/2} = diag(0, 1), computed directly
        REQUIRE(max_abs(ComplexMatrix(matrix_abs(x).matrix() - diag2(0.0, 1.0))) < 1e-12);
    }
    SECTION("abs of X and X* share a spectrum") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ComplexMatrix x = sample(SampleKind::general, 5, seed);
            const RealVector s1 = matrix_abs(x).spectrum();
            const RealVector s2 = matrix_abs(ComplexMatrix(x.adjoint())).spectrum();
            REQUIRE((s1 - s2).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, s1[0]));
        }
    }
}

TEST_CASE("polar decomposition", "[hermitian]") {
    SECTION("positive definite has Q = I") {
        const ComplexMatrix a = sample(SampleKind::psd, 4, 9);
        const auto pd = polar(a);
        REQUIRE(max_abs(ComplexMatrix(pd.unitary - ComplexMatrix::Identity(4, 4))) < 1e-9);
    }
    SECTION("unitary has P = I") {
        const ComplexMatrix u = sample(SampleKind::unitary, 4, 10);
        const auto pd = polar(u);
        REQUIRE(max_abs(ComplexMatrix(pd.positive.matrix() - ComplexMatrix::Identity(4, 4))) <
                1e-9);
    }
    SECTION("reconstruction") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ComplexMatrix m = sample(SampleKind::general, 4, seed);
            const auto pd = polar(m);
            REQUIRE(max_abs(ComplexMatrix(pd.unitary * pd.positive.matrix() - m)) <=
                    1e-9 * std::max(1.0, max_abs(m)));
            REQUIRE(max_abs(ComplexMatrix(pd.unitary.adjoint() * pd.unitary -
                                          ComplexMatrix::Identity(4, 4))) <= 1e-10);
        }
    }
    SECTION("near-singular input is rejected") {
        REQUIRE_THROWS_AS(polar(diag2(1.0, 1e-14)), IllConditionedError);
    }
}

TEST_CASE("sample is deterministic and well formed", "[sampling]") {
    SECTION("bitwise repeatability") {
        for (auto kind : {SampleKind::psd, SampleKind::hermitian, SampleKind::general,
                          SampleKind::unitary}) {
            const ComplexMatrix a = sample(kind, 5, 42, 1.0);
            const ComplexMatrix b = sample(kind, 5, 42, 1.0);
            REQUIRE(a == b);
        }
    }
    SECTION("psd floor") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const PSDMatrix a(PSDMatrix::from_symmetrized(sample(SampleKind::psd, 6, seed, 2.0)));
            REQUIRE(a.lambda_min() >= 1e-6 * 2.0 - 1e-12);
        }
    }
    SECTION("unitary is unitary") {
        const ComplexMatrix u = sample(SampleKind::unitary, 6, 1);
        REQUIRE(max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(6, 6))) <= 1e-10);
    }
    SECTION("different seeds differ") {
        REQUIRE(sample(SampleKind::psd, 4, 1) != sample(SampleKind::psd, 4, 2));
    }
}
