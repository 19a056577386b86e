#include <cmath>
#include <random>

#include "doctest.h"
#include "znlab/errors.hpp"
#include "znlab/mft.hpp"
#include "znlab/quadrature.hpp"

using namespace znlab;

TEST_SUITE("quadrature") {

TEST_CASE("normalization and low moments") {
    for (int order : {16, 32, 64, 128}) {
        CHECK(std::abs(gaussian_expectation([](double) { return 1.0; }, order) - 1.0) < 1e-14);
        CHECK(std::abs(gaussian_expectation([](double z) { return z * z; }, order) - 1.0) < 1e-12);
        CHECK(std::abs(gaussian_expectation([](double z) { return z * z * z * z; }, order) - 3.0) <
              1e-11);
        CHECK(std::abs(gaussian_expectation([](double z) { return z; }, order)) < 1e-13);
    }
}

TEST_CASE("order below 16 is rejected") {
    CHECK_THROWS_AS(gauss_hermite_unit_variance(8), DomainError);
}

TEST_CASE("non-finite integrand propagates an error") {
    CHECK_THROWS_AS(gaussian_expectation([](double z) { return 1.0 / (z - z); }, 32), DomainError);
}

TEST_CASE("log-cosh expectation agrees with a Monte Carlo oracle") {
    const double a = 1.0;
    const double quad =
        gaussian_expectation([a](double z) { return log_2cosh(a * z); }, 64);

    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int samples = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = log_2cosh(a * normal(rng));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / samples;
    const double stderr_est = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::abs(quad - mean) < 3.0 * stderr_est);
}

TEST_CASE("doubling the order is stable") {
    // Convergence is pole-limited for log-cosh integrands: the slope scale
    // must stay moderate for order 64 to be fully converged.
    for (const double a : {0.3, 0.6, 1.0}) {
        const auto f = [a](double z) { return log_2cosh(a * z + 0.2); };
        CHECK(std::abs(gaussian_expectation(f, 64) - gaussian_expectation(f, 128)) < 1e-10);
    }
}

TEST_CASE("adaptive simpson sanity") {
    CHECK(std::abs(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) - 1.0 / 3.0) <
          1e-12);
    CHECK(std::abs(adaptive_simpson([](double x) { return std::exp(-x * x); }, -8.0, 8.0) -
                   std::sqrt(M_PI)) < 1e-10);
}

}  // TEST_SUITE
