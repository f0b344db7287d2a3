#include "doctest.h"

#include "infotherm/core_thermo.hpp"
#include "infotherm/microstate_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <numbers>

using namespace infotherm;

TEST_CASE("log factorial matches lgamma") {
    for (std::uint64_t n : {0ull, 1ull, 2ull, 10ull, 170ull, 1000ull, 65535ull, 65536ull, 70000ull, 1000000ull}) {
        const double oracle = std::lgamma(static_cast<double>(n) + 1.0);
        CHECK(log_factorial(n) == doctest::Approx(oracle).epsilon(1e-13));
    }
    CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
}

TEST_CASE("log multiplicity examples") {
    CHECK(log_multiplicity({4, 2, Counting::Distinguishable}) == doctest::Approx(std::log(16.0)));
    CHECK(log_multiplicity({4, 2, Counting::Distinguishable}, RegionConstraint{2}) == doctest::Approx(std::log(4.0)));
    CHECK(log_multiplicity({8, 3, Counting::BoltzmannCorrected}) == doctest::Approx(3 * std::log(8.0) - std::log(6.0)));
    CHECK_THROWS_AS(log_multiplicity({4, 2, Counting::Distinguishable}, RegionConstraint{0}), std::domain_error);
    CHECK_THROWS_AS(log_multiplicity({4, 2, Counting::Distinguishable}, RegionConstraint{5}), std::domain_error);
    CHECK(log_multiplicity({4, 0, Counting::Distinguishable}, RegionConstraint{0}) == 0.0);
}

TEST_CASE("enumeration examples") {
    const auto a = enumerate_and_count({4, 2, Counting::Distinguishable}, RegionConstraint{2});
    CHECK(a.total == 16);
    CHECK(a.satisfying == 4);
    const auto b = enumerate_and_count({2, 1, Counting::Distinguishable}, RegionConstraint{1});
    CHECK(b.total == 2);
    CHECK(b.satisfying == 1);
    const auto c = enumerate_and_count({6, 4, Counting::Distinguishable}, RegionConstraint{3});
    CHECK(c.total == 1296);
    CHECK(c.satisfying == 81);
    CHECK_THROWS_AS(enumerate_and_count({10, 8, Counting::Distinguishable}), SizeError);
    CHECK_THROWS_AS(multiplicity_closed_form({1000, 10, Counting::Distinguishable}), SizeError);
}

TEST_CASE("enumeration equals exp(log multiplicity) for every small model") {
    for (std::uint64_t m = 1; m <= 12; ++m) {
        for (std::uint64_t n = 0; n <= 6; ++n) {
            if (std::pow(double(m), double(n)) > 1e5) break;
            for (std::uint64_t r = 1; r <= m; ++r) {
                const LatticeModel model{m, n, Counting::Distinguishable};
                const auto count = enumerate_and_count(model, RegionConstraint{r});
                CHECK(count.satisfying == static_cast<std::uint64_t>(std::llround(std::exp(log_multiplicity(model, RegionConstraint{r})))));
                CHECK(count.satisfying == multiplicity_closed_form(model, RegionConstraint{r}));
            }
        }
    }
}

TEST_CASE("factorial cancels in constrained ratios") {
    for (std::uint64_t n : {1ull, 5ull, 40ull, 1000ull}) {
        const LatticeModel d{1000, n, Counting::Distinguishable};
        const LatticeModel b{1000, n, Counting::BoltzmannCorrected};
        const double rd = log_multiplicity(d, RegionConstraint{250}) - log_multiplicity(d);
        const double rb = log_multiplicity(b, RegionConstraint{250}) - log_multiplicity(b);
        CHECK(rd == doctest::Approx(rb).epsilon(1e-12));
    }
}

TEST_CASE("localization probability") {
    CHECK(std::exp(localization_log_probability(2, 2.0)) == doctest::Approx(0.0625));
    CHECK(localization_log_probability(2, 10.0) == doctest::Approx(-20.0 * std::numbers::ln2));
    CHECK(std::exp(localization_log_probability(4, 1.0)) == doctest::Approx(1.0 / 256.0));
    CHECK_THROWS_AS(localization_log_probability(1, 1.0), std::domain_error);

    const auto c = Constants::si();
    for (int lambda = 2; lambda <= 5; ++lambda) {
        for (int n = 1; n <= 50; ++n) {
            CHECK(c.boltzmann_k * localization_log_probability(lambda, n) == scaled_entropy_delta(n, lambda, c));
        }
    }
}

TEST_CASE("localization Monte Carlo") {
    const auto a = sample_localization_mc(2, 5, 300000, 42);
    const auto b = sample_localization_mc(2, 5, 300000, 42);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.hits == b.hits);
    const auto threaded = sample_localization_mc(2, 5, 300000, 42, 3);
    CHECK(threaded.hits == a.hits);
    CHECK(a.std_err == doctest::Approx(std::sqrt(a.p_hat * (1 - a.p_hat) / 300000)));
    const double p = std::pow(0.5, 10);
    CHECK(std::abs(a.p_hat - p) <= 4.0 * std::sqrt(p * (1 - p) / 300000));

    const auto vacuous = sample_localization_mc(2, 0, 1000, 1);
    CHECK(vacuous.p_hat == 1.0);

    const auto rare = sample_localization_mc(2, 20, 1000, 1);
    CHECK(rare.low_hit_warning);

    CHECK_THROWS_AS(sample_localization_mc(2, 5, 0, 1), std::domain_error);
}

TEST_CASE("Stirling gap") {
    CHECK(stirling_gap(2, 1) == doctest::Approx(std::numbers::ln2));
    CHECK(stirling_gap(2, 100) / (200.0 * std::numbers::ln2) < 0.03);
    double prev_gap = stirling_gap(2, 2);
    double prev_rel = prev_gap / (4.0 * std::numbers::ln2);
    for (std::uint64_t n = 3; n <= 500; ++n) {
        const double gap = stirling_gap(2, n);
        const double rel = gap / (2.0 * n * std::numbers::ln2);
        CHECK(gap > prev_gap);
        CHECK(rel < prev_rel);
        prev_gap = gap;
        prev_rel = rel;
    }
    // Leading-order bound from Stirling's series.
    for (int lambda = 2; lambda <= 5; ++lambda) {
        for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
            CHECK(stirling_gap(lambda, n) <= 0.5 * lambda * std::log(2 * std::numbers::pi * lambda * n) + 1.0);
        }
    }
    CHECK_THROWS_AS(stirling_gap(2, 0), std::domain_error);
}
