// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "dpccm/error.hpp"
#include "dpccm/special.hpp"
#include "oracles.hpp"

using namespace dpccm;

TEST_CASE("erfc against a long-double series") {
    CHECK(std::abs(dpccm::erfc(1.0) - 0.15729920705028513) < 1e-15);
    for (double x = -3.0; x <= 3.0; x += 0.125) {
        const double want = static_cast<double>(1.0L - oracle::erf_series(x));
        CHECK(std::abs(dpccm::erfc(x) - want) < 1e-12);
    }
    CHECK(dpccm::erfc(0.0) == 1.0);
}

TEST_CASE("upper incomplete gamma at integer order") {
    CHECK(std::abs(igammaq(3.0, 2.0) - 5.0 * std::exp(-2.0)) < 1e-15);
    for (int a = 1; a <= 12; ++a)
        for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 15.0}) {
            const double want = static_cast<double>(oracle::gamma_q_integer(a, x));
            CHECK(std::abs(igammaq(a, x) - want) < 1e-12);
        }
}

TEST_CASE("upper incomplete gamma at half-integer and fractional order") {
    for (double a : {0.5, 1.5, 2.25, 7.5, 30.0})
        for (double x : {0.2, 1.0, 4.0, 9.0}) {
            const double want = static_cast<double>(oracle::gamma_q_series(a, x));
            CHECK(std::abs(igammaq(a, x) - want) < 1e-10);
        }
    // Q(1/2, x) = erfc(sqrt x)
    CHECK(igammaq(0.5, 2.0) == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("igammaq edge cases and monotonicity") {
    CHECK(igammaq(2.0, 0.0) == 1.0);
    CHECK_THROWS_AS(igammaq(0.0, 1.0), UsageError);
    CHECK_THROWS_AS(igammaq(1.0, -1.0), UsageError);
    double prev = 1.0;
    for (double x = 0.0; x < 40.0; x += 0.5) {
        const double q = igammaq(4.5, x);
        CHECK(q <= prev);
        CHECK(q >= 0.0);
        prev = q;
    }
}

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0));
}
