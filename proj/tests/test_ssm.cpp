#include <cmath>
#include <random>

#include "doctest.h"
#include "locomotif/ssm.hpp"
#include "oracles.hpp"

using namespace locomotif;

TEST_CASE("similarity values from the exponential kernel") {
    const TimeSeries ts({0.0, 1.0, 0.0}, 3, 1);
    const SelfSimilarityMatrix s = compute_ssm(ts);

    CHECK(s(1, 1) == 1.0);
    CHECK(s(1, 3) == 1.0);  // identical samples
    CHECK(s(1, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const TimeSeries ts2({0.0, 0.0, 1.0, 1.0}, 2, 2);
    const SelfSimilarityMatrix s2 = compute_ssm(ts2);
    CHECK(s2(1, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("ssm is symmetric with unit diagonal and entries in (0,1]") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 5 + static_cast<int>(rng() % 20);
        const int d = 1 + static_cast<int>(rng() % 3);
        const TimeSeries ts = oracles::random_series(rng, n, d);
        const SelfSimilarityMatrix s = compute_ssm(ts);
        int diagonal_ones = 0;
        for (int i = 1; i <= n; ++i) {
            CHECK(s(i, i) == 1.0);
            for (int j = 1; j <= n; ++j) {
                CHECK(s(i, j) == s(j, i));
                CHECK(s(i, j) > 0.0);
                CHECK(s(i, j) <= 1.0);
                if (s(i, j) == 1.0) {
                    ++diagonal_ones;
                }
            }
        }
        // distinct random samples: exactly the diagonal attains 1
        CHECK(diagonal_ones == n);
    }
}

TEST_CASE("quantile endpoints and interpolation") {
    SelfSimilarityMatrix s(2);
    s.at(1, 1) = 0.1;
    s.at(1, 2) = 0.2;
    s.at(2, 1) = 0.3;
    s.at(2, 2) = 0.4;

    CHECK(quantile_threshold(s, 0.0) == doctest::Approx(0.1));
    CHECK(quantile_threshold(s, 1.0) == doctest::Approx(0.4));
    CHECK(quantile_threshold(s, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("quantile of a real ssm hits min and max") {
    std::mt19937 rng(23);
    const TimeSeries ts = oracles::random_series(rng, 12, 1);
    const SelfSimilarityMatrix s = compute_ssm(ts);
    const auto [min_it, max_it] = std::minmax_element(s.raw().begin(), s.raw().end());
    CHECK(quantile_threshold(s, 0.0) == doctest::Approx(*min_it));
    CHECK(quantile_threshold(s, 1.0) == doctest::Approx(*max_it));
    CHECK(*max_it == 1.0);
}

TEST_CASE("quantile is monotone in rho") {
    std::mt19937 rng(29);
    const TimeSeries ts = oracles::random_series(rng, 15, 2);
    const SelfSimilarityMatrix s = compute_ssm(ts);
    double prev = -1.0;
    for (double rho = 0.0; rho <= 1.0; rho += 0.05) {
        const double tau = quantile_threshold(s, rho);
        CHECK(tau >= prev);
        prev = tau;
    }
    CHECK_THROWS_AS(quantile_threshold(s, 1.5), std::invalid_argument);
}
