#include <cmath>

#include "doctest.h"
#include "znlab/errors.hpp"
#include "znlab/mft.hpp"

using namespace znlab;

TEST_SUITE("mft") {

TEST_CASE("free energy at the symmetric point") {
    // F(0) = -(2/(d-1)) log(2)/beta, the quartic coupling terms all vanish.
    for (const int d : {3, 4, 7}) {
        for (const double beta : {0.4, 1.0, 5.0}) {
            MftParams p{d, beta, 0.0, 0.0};
            CHECK(mft_free_energy(p) ==
                  doctest::Approx(-2.0 / (d - 1) * std::log(2.0) / beta).epsilon(1e-14));
        }
    }
    CHECK(mft_free_energy({3, 0.4, 0.0, 0.0}) ==
          doctest::Approx(-1.7328679513998633).epsilon(1e-14));
}

TEST_CASE("free energy deep in the ordered regime") {
    // d=3, beta=10, U0=1: F = 3 - log(2 cosh 40)/10 = 3 - 4 up to 1e-35.
    const MftParams p{3, 10.0, 0.0, 1.0};
    const long double exact = 3.0L - (40.0L + std::log1p(std::exp(-80.0L))) / 10.0L;
    CHECK(mft_free_energy(p) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-14));
    CHECK(mft_free_energy(p) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("log_2cosh is stable and accurate") {
    for (const double x : {0.0, 0.3, 5.0, 29.9, 30.1, 250.0, -40.0}) {
        const long double ref = std::abs((long double)x) + std::log1p(std::exp(-2.0L * std::abs((long double)x)));
        CHECK(log_2cosh(x) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-15));
    }
    CHECK(std::isfinite(log_2cosh(1e6)));
}

TEST_CASE("magnetization") {
    CHECK(mft_magnetization({3, 1.0, 0.0, 0.0}) == 0.0);
    CHECK(mft_magnetization({3, 10.0, 0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("magnetization equals the mean field at stationary points") {
    for (const double beta : {0.8, 1.5, 4.0, 10.0}) {
        const MftMinimizeResult res = mft_minimize(3, beta, 0.0);
        for (const auto& m : res.local_minima) {
            MftParams p{3, beta, 0.0, m.u0};
            CHECK(std::abs(mft_magnetization(p) - m.u0) < 1e-8);
        }
    }
}

TEST_CASE("high temperature minimizes at the origin") {
    const MftMinimizeResult res = mft_minimize(3, 0.4, 0.0);
    CHECK(res.u0_star == 0.0);
    CHECK(res.local_minima.size() == 1);
}

TEST_CASE("low temperature minimizes near saturation") {
    const MftMinimizeResult res = mft_minimize(3, 10.0, 0.0);
    CHECK(res.u0_star >= 0.999);
    MftParams p{3, 10.0, 0.0, res.u0_star};
    CHECK(std::abs(mft_magnetization(p) - res.u0_star) < 1e-8);
}

TEST_CASE("first-order transition point") {
    const MftFirstOrderPoint pt = mft_first_order_point(3, 0.4, 1.0, 0.0, 1e-12);
    CHECK(pt.beta_c > 0.4);
    CHECK(pt.beta_c < 1.0);
    CHECK(std::abs(pt.f_low - pt.f_high) < 1e-8);
    CHECK(pt.u0_high - pt.u0_low > 0.3);
    // The coexisting minima bracket the transition reproducibly.
    const MftFirstOrderPoint again = mft_first_order_point(3, 0.4, 1.0, 0.0, 1e-12);
    CHECK(pt.beta_c == again.beta_c);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(mft_free_energy({1, 1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(mft_free_energy({3, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(mft_first_order_point(3, 2.0, 5.0), DomainError);  // no sign change
}

}  // TEST_SUITE
