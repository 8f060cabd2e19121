#include <catch2/catch_amalgamated.hpp>

#include "symform/inequalities.hpp"
#include "symform/sampling.hpp"
#include "symform/seeding.hpp"

using namespace symform;

namespace {

PSDMatrix psd(Eigen::Index n, std::uint64_t seed) {
    return PSDMatrix::from_symmetrized(sample(SampleKind::psd, n, seed));
}

HermitianMatrix herm(Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
    return HermitianMatrix(sample(SampleKind::hermitian, n, seed, scale));
}

ComplexMatrix diag(std::initializer_list<double> xs) {
    const auto n = static_cast<Eigen::Index>(xs.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    Eigen::Index i = 0;
    for (double x : xs) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

const FormDescriptor kForms[] = {FormDescriptor::trace(), FormDescriptor::ktrace(2),
                                 FormDescriptor::gk(2), FormDescriptor::seminorm(0.5)};

}  // namespace

TEST_CASE("matrix hoelder inequality", "[inequalities]") {
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& form : kForms) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const PSDMatrix a = psd(5, derive_trial_seed(61, seed));
            const PSDMatrix b = psd(5, derive_trial_seed(62, seed));
            for (double p : {1.25, 2.0, 4.0, inf}) {
                const auto res = check_matrix_hoelder(form, a, b, p);
                INFO(form.to_string() << " p=" << p << " seed=" << seed << " slack=" << res.slack);
                REQUIRE(res.pass);
            }
        }
    }
    SECTION("commuting diagonal equality at p = 2 with matched spectra") {
        // A = B diagonal: lhs = phi(spec(A^2)) and rhs = phi(A^2) as well
        const PSDMatrix a(diag({4.0, 1.0, 0.25}));
        const auto res = check_matrix_hoelder(FormDescriptor::trace(), a, a, 2.0);
        REQUIRE(res.lhs == Catch::Approx(res.rhs).epsilon(1e-12));
    }
    SECTION("non-hoelder form is gated") {
        REQUIRE_THROWS_AS(check_matrix_hoelder(FormDescriptor::minsum(1), psd(3, 1), psd(3, 2), 2.0),
                          InvalidInputError);
    }
}

TEST_CASE("araki-lieb-thirring monotonicity", "[inequalities]") {
    for (const auto& form : kForms) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            RandomStream rng(derive_trial_seed(63, seed));
            const PSDMatrix a = psd(4, derive_trial_seed(64, seed));
            const PSDMatrix b = psd(4, derive_trial_seed(65, seed));
            const double s = rng.uniform_pos();
            const double t = s * rng.uniform_pos();
            const auto res = check_alt(form, a, b, std::min(t, s), s);
            INFO(form.to_string() << " t=" << t << " s=" << s << " slack=" << res.slack);
            REQUIRE(res.pass);
        }
    }
    SECTION("equal exponents give equality") {
        const auto res = check_alt(FormDescriptor::ktrace(2), psd(4, 3), psd(4, 4), 0.6, 0.6);
        REQUIRE(res.lhs == Catch::Approx(res.rhs).epsilon(1e-12));
    }
    SECTION("three-point chain is monotone") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const PSDMatrix a = psd(4, derive_trial_seed(66, seed));
            const PSDMatrix b = psd(4, derive_trial_seed(67, seed));
            const double t1 = 0.2, t2 = 0.55, t3 = 1.0;
            for (const auto& form : kForms) {
                const double v1 = alt_value(form, a, b, t1);
                const double v2 = alt_value(form, a, b, t2);
                const double v3 = alt_value(form, a, b, t3);
                INFO(form.to_string() << " seed=" << seed);
                REQUIRE(v1 <= v2 + 1e-8 * std::max(1.0, v2));
                REQUIRE(v2 <= v3 + 1e-8 * std::max(1.0, v3));
            }
        }
    }
}

TEST_CASE("golden-thompson inequality", "[inequalities]") {
    for (const auto& form : kForms) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto res = check_gt(form, herm(5, derive_trial_seed(68, seed)),
                                      herm(5, derive_trial_seed(69, seed)));
            INFO(form.to_string() << " seed=" << seed << " slack=" << res.slack);
            REQUIRE(res.pass);
            // the spectrum reading is the tighter bound
            REQUIRE(res.extras.at("rhs_spectrum_reading") <=
                    res.rhs + 1e-8 * std::max(1.0, res.rhs));
            REQUIRE(res.lhs <=
                    res.extras.at("rhs_spectrum_reading") + 1e-8 * std::max(1.0, res.rhs));
        }
    }
    SECTION("commuting matrices give equality") {
        const HermitianMatrix a(diag({0.3, -0.5, 1.0}));
        const HermitianMatrix b(diag({-1.0, 0.2, 0.4}));
        const auto res = check_gt(FormDescriptor::ktrace(2), a, b);
        REQUIRE(res.lhs == Catch::Approx(res.rhs).epsilon(1e-10));
    }
}

TEST_CASE("phi(exp(.)) is midpoint convex", "[inequalities]") {
    for (const auto& form : kForms) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            RandomStream rng(derive_trial_seed(70, seed));
            const auto a = herm(5, derive_trial_seed(71, seed));
            const auto b = herm(5, derive_trial_seed(72, seed));
            for (double tau : {0.5, rng.uniform()}) {
                const auto res = check_exp_convex(form, a, b, tau);
                INFO(form.to_string() << " tau=" << tau << " slack=" << res.slack);
                REQUIRE(res.pass);
            }
        }
    }
}

TEST_CASE("multivariate golden-thompson", "[inequalities]") {
    SECTION("m = 3 passes") {
        for (const auto& form : kForms) {
            for (std::uint64_t seed = 0; seed < 6; ++seed) {
                std::vector<HermitianMatrix> as;
                for (int j = 0; j < 3; ++j)
                    as.push_back(herm(4, derive_trial_seed(73 + static_cast<std::uint64_t>(j), seed)));
                const auto res = check_multi_gt(form, as, 2.0);
                INFO(form.to_string() << " seed=" << seed << " slack=" << res.slack);
                REQUIRE(res.pass);
            }
        }
    }
    SECTION("m = 2 on halved matrices reduces to the gt spectrum reading") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const HermitianMatrix a = herm(4, derive_trial_seed(76, seed));
            const HermitianMatrix b = herm(4, derive_trial_seed(77, seed));
            const std::vector<HermitianMatrix> halved = {
                HermitianMatrix::from_symmetrized(0.5 * a.matrix()),
                HermitianMatrix::from_symmetrized(0.5 * b.matrix())};
            for (const auto& form : kForms) {
                const auto mg = check_multi_gt(form, halved, 2.0);
                const auto gt = check_gt(form, a, b);
                INFO(form.to_string() << " seed=" << seed);
                // the integrand is constant in t
                REQUIRE(mg.extras.at("integrand_stdev") <= 1e-8);
                // and the bound coincides with phi on the spectrum of e^A e^B
                const double reduced = mg.extras.at("rhs_linear");
                const double gt_spec = gt.extras.at("rhs_spectrum_reading");
                REQUIRE(std::abs(reduced - gt_spec) <= 1e-6 * std::max(1.0, gt_spec));
                // slacks agree in the same reading
                const double mg_slack = reduced - std::exp(mg.lhs);
                const double gt_slack = gt_spec - gt.lhs;
                REQUIRE(std::abs(mg_slack - gt_slack) <= 1e-6 * std::max(1.0, std::abs(gt_slack)));
            }
        }
    }
}

TEST_CASE("t-operator integral identity", "[inequalities]") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const PSDMatrix a = psd(3, derive_trial_seed(78, seed));
        const HermitianMatrix b = herm(3, derive_trial_seed(79, seed));
        const auto res = check_t_identity(a, b);
        INFO("seed=" << seed << " diff=" << res.lhs);
        REQUIRE(res.pass);
        REQUIRE(res.lhs <= 1e-6);
    }
}

TEST_CASE("three-matrix extension", "[inequalities]") {
    for (const auto& form : kForms) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto res = check_three_matrix(form, herm(4, derive_trial_seed(80, seed)),
                                                herm(4, derive_trial_seed(81, seed)),
                                                herm(4, derive_trial_seed(82, seed)));
            INFO(form.to_string() << " seed=" << seed << " slack=" << res.slack);
            REQUIRE(res.pass);
        }
    }
    SECTION("A2 = 0 specializes to the gt spectrum reading") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const HermitianMatrix a1 = herm(4, derive_trial_seed(83, seed));
            const HermitianMatrix zero(ComplexMatrix(ComplexMatrix::Zero(4, 4)));
            const HermitianMatrix a3 = herm(4, derive_trial_seed(84, seed));
            for (const auto& form : kForms) {
                const auto tm = check_three_matrix(form, a1, zero, a3);
                const auto gt = check_gt(form, a1, a3);
                INFO(form.to_string() << " seed=" << seed);
                REQUIRE(std::abs(tm.rhs - gt.extras.at("rhs_spectrum_reading")) <=
                        1e-7 * std::max(1.0, tm.rhs));
            }
        }
    }
}

TEST_CASE("lie product convergence diagnostic", "[inequalities]") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto res = check_lie_product(herm(4, derive_trial_seed(85, seed), 0.3),
                                           herm(4, derive_trial_seed(86, seed), 0.3));
        INFO("seed=" << seed << " final=" << res.lhs);
        REQUIRE(res.pass);
        REQUIRE(res.extras.at("monotone") == 1.0);
        REQUIRE(res.lhs <= 1e-4);
    }
    SECTION("commuting pairs sit at the noise floor") {
        const HermitianMatrix a(diag({0.2, -0.1}));
        const HermitianMatrix b(diag({0.5, 0.3}));
        const auto res = check_lie_product(a, b);
        REQUIRE(res.pass);
        REQUIRE(res.lhs <= 1e-9);
    }
}
