#include "doctest.h"
#include "exdom/bessel.hpp"
#include "exdom/errors.hpp"
#include "support/bessel_properties.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace exdom;

namespace {
double relerr(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("K0(1) against the integral representation")
{
    CHECK(relerr(bessel_k(0, 1.0), oracle::bessel_k_integral(0, 1.0)) < 1e-12);
    // tabulated value
    CHECK(relerr(bessel_k(0, 1.0), 0.42102443824070834) < 1e-14);
}

TEST_CASE("I0(1) against the trapezoid representation and table")
{
    CHECK(relerr(bessel_i(0, 1.0), oracle::bessel_i_trapezoid(0, 1.0)) < 1e-13);
    CHECK(relerr(bessel_i(0, 1.0), 1.2660658777520082) < 1e-14);
}

TEST_CASE("I and K against integral oracles across all evaluation regimes")
{
    for (double x : {1e-4, 0.01, 0.3, 1.0, 1.99, 2.01, 5.0, 7.9, 8.1, 15.0, 29.9, 30.1, 42.0, 50.0}) {
        CAPTURE(x);
        for (int n = 0; n <= 2; ++n) {
            CAPTURE(n);
            CHECK(relerr(bessel_k(n, x), oracle::bessel_k_integral(n, x)) < 1e-12);
            double ir = oracle::bessel_i_trapezoid(n, x);
            if (ir > 1e-3) // trapezoid sum cancels below that
                CHECK(relerr(bessel_i(n, x), ir) < 1e-12);
        }
    }
}

TEST_CASE("evaluation branches agree where they overlap")
{
    BesselAccuracy series_only, steed_only, asym_only;
    series_only.series_cutoff = 100.0;
    steed_only.series_cutoff = 0.0;
    steed_only.asymptotic_cutoff = 100.0;
    asym_only.series_cutoff = 0.0;
    asym_only.asymptotic_cutoff = 0.0;
    for (int n = 0; n <= 1; ++n) {
        CAPTURE(n);
        for (double x : {1.0, 2.0, 3.0}) {
            CAPTURE(x);
            CHECK(relerr(bessel_k(n, x, series_only), bessel_k(n, x, steed_only)) < 1e-13);
        }
        for (double x : {20.0, 30.0, 40.0}) {
            CAPTURE(x);
            CHECK(relerr(bessel_k(n, x, steed_only), bessel_k(n, x, asym_only)) < 1e-13);
            CHECK(relerr(bessel_i(n, x, steed_only), bessel_i(n, x, asym_only)) < 1e-13);
        }
    }
}

TEST_CASE("K2 recurrence")
{
    for (double x : {0.1, 1.0, 10.0})
        CHECK(relerr(bessel_k(2, x), bessel_k(0, x) + 2.0 * bessel_k(1, x) / x) < 1e-14);
}

TEST_CASE("large-x products tend to one half")
{
    double x = 50.0;
    double a = x * bessel_i(1, x) * bessel_k(1, x);
    double b = x * bessel_i(1, x) * bessel_k(0, x);
    CHECK(a > 0.49);
    CHECK(a < 0.51);
    CHECK(b > 0.49);
    CHECK(b < 0.51);
}

TEST_CASE("property suite on a logarithmic grid")
{
    auto fails = props::bessel_property_failures(props::log_grid(1e-4, 50.0, 200));
    for (auto& f : fails)
        FAIL_CHECK(f.what << " at x=" << f.x);
}

TEST_CASE("invalid arguments")
{
    CHECK_THROWS_AS(bessel_k(0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(3, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_k(0, std::nan("")), DomainError);
    CHECK(std::isinf(bessel_k(1, 0.0)));
    CHECK(bessel_i(0, 0.0) == 1.0);
}
