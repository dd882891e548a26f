#include "doctest.h"
#include "exdom/kernels.hpp"
#include "exdom/errors.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace exdom;
using std::numbers::pi;

namespace {
double relerr(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("g against elliptic integrals")
{
    CHECK(kernel_g(0.0) == 0.5);
    for (double t : {1e-10, 1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 20.0, 150.0}) {
        CAPTURE(t);
        CHECK(relerr(kernel_g(t), oracle::kernel_g_elliptic(t)) < 1e-13);
    }
}

TEST_CASE("t^2 G(t)/4 tends to 1/2 as t -> 0")
{
    for (double t : {1e-4, 1e-6, 1e-8})
        CHECK(std::abs(t * t * kernel_G(t) / 4.0 - 0.5) < t);
    CHECK_THROWS_AS(kernel_G(0.0), DomainError);
}

TEST_CASE("G: product form and direct quadrature agree")
{
    KernelEvalConfig direct;
    direct.direct_threshold = 0.0;
    for (double t : {0.1, 0.7, 1.7, 2.0, 9.0, 20.0}) {
        CAPTURE(t);
        CHECK(relerr(kernel_G(t), kernel_G(t, direct)) < 1e-12);
    }
    CHECK(kernel_G(-1.3) == kernel_G(1.3));
}

TEST_CASE("G0 against elliptic integrals")
{
    for (double t : {1e-8, 1e-4, 0.05, 0.5, 1.8, 2.0, 10.0}) {
        CAPTURE(t);
        CHECK(relerr(kernel_G0(t), oracle::kernel_G0_elliptic(t)) < 1e-12);
    }
}

TEST_CASE("G1 against adaptive angular quadrature")
{
    for (double t : {0.01, 0.3, 1.8, 4.0}) {
        CAPTURE(t);
        double ref = 2.0 * oracle::adaptive(
                               [&](double th) {
                                   double p2 = 2.0 - 2.0 * std::cos(th);
                                   double d = t * t + p2;
                                   return p2 * p2 / (d * d * std::sqrt(d));
                               },
                               0.0, pi, 1e-13);
        CHECK(relerr(kernel_G1(t), ref) < 1e-11);
    }
}

TEST_CASE("F equals G0 - 3/4 G1 and logarithmic behaviour near 0")
{
    for (double t : {1e-5, 0.2, 3.0})
        CHECK(relerr(kernel_F(t), kernel_G0(t) - 0.75 * kernel_G1(t)) < 1e-12);
    CHECK(std::isinf(kernel_G0(0.0)));
    // G0 ~ 2 log(1/t), G1 ~ 2 log(1/t)
    double a = kernel_G0(1e-6) - kernel_G0(1e-7);
    CHECK(std::abs(a + 2.0 * std::log(10.0)) < 1e-6);
    double b = kernel_G1(1e-6) - kernel_G1(1e-7);
    CHECK(std::abs(b + 2.0 * std::log(10.0)) < 1e-6);
}

TEST_CASE("large-t tails")
{
    double t = 2000.0;
    double t3 = t * t * t, t5 = t3 * t * t;
    CHECK(relerr(kernel_G(t), kernel_tail::G3 / t3 + kernel_tail::G5 / t5) < 1e-10);
    CHECK(relerr(kernel_F(t), kernel_tail::F3 / t3 + kernel_tail::F5 / t5) < 1e-10);
}

TEST_CASE("kernel masses")
{
    KernelMasses m = kernel_masses();
    CHECK(std::abs(m.G0 - 4.0 * pi) < 1e-8);
    CHECK(std::abs(m.G1 - 8.0 * pi / 3.0) < 1e-8);
}
