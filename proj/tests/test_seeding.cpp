#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "symform/seeding.hpp"

using namespace symform;

TEST_CASE("derive_trial_seed is deterministic", "[seeding]") {
    REQUIRE(derive_trial_seed(42, 0) == derive_trial_seed(42, 0));
    REQUIRE(derive_trial_seed(42, 1) == derive_trial_seed(42, 1));
    REQUIRE(derive_trial_seed(42, 0) != derive_trial_seed(42, 1));
    REQUIRE(derive_trial_seed(0, 0) != derive_trial_seed(1, 0));
}

TEST_CASE("no collisions across a million trial indices", "[seeding]") {
    std::vector<std::uint64_t> seen;
    seen.reserve(1'000'000);
    for (std::uint64_t i = 0; i < 1'000'000; ++i) seen.push_back(derive_trial_seed(0xABCDEF, i));
    std::sort(seen.begin(), seen.end());
    REQUIRE(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("no collisions across sampled base-seed pairs", "[seeding]") {
    for (std::uint64_t s1 = 0; s1 < 1000; ++s1)
        REQUIRE(derive_trial_seed(s1, 17) != derive_trial_seed(s1 + 1, 17));
}

TEST_CASE("random stream reproducibility and distributions", "[seeding]") {
    RandomStream a(7), b(7);
    for (int i = 0; i < 100; ++i) REQUIRE(a.uniform() == b.uniform());

    SECTION("uniform range") {
        RandomStream rng(1);
        for (int i = 0; i < 10000; ++i) {
            const double u = rng.uniform();
            REQUIRE(u >= 0.0);
            REQUIRE(u < 1.0);
            const double v = rng.uniform_pos();
            REQUIRE(v > 0.0);
            REQUIRE(v <= 1.0);
        }
    }
    SECTION("gaussian moments") {
        RandomStream rng(2);
        double sum = 0.0, sum2 = 0.0;
        const int count = 200000;
        for (int i = 0; i < count; ++i) {
            const double g = rng.gaussian();
            sum += g;
            sum2 += g * g;
        }
        REQUIRE(sum / count == Catch::Approx(0.0).margin(0.01));
        REQUIRE(sum2 / count == Catch::Approx(1.0).margin(0.02));
    }
    SECTION("complex gaussian second moment") {
        RandomStream rng(3);
        double sum2 = 0.0;
        const int count = 200000;
        for (int i = 0; i < count; ++i) sum2 += std::norm(rng.complex_gaussian());
        REQUIRE(sum2 / count == Catch::Approx(1.0).margin(0.02));
    }
}
