#include "doctest.h"
#include "exdom/dispersion.hpp"
#include "exdom/errors.hpp"
#include "support/bessel_properties.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace exdom;
using std::numbers::pi;

namespace {
double relerr(double a, double b) { return std::abs(a - b) / std::abs(b); }

// lambda* from the integral representation of K, by plain bisection
double oracle_lambda_star()
{
    auto f = [](double r) { return r * oracle::bessel_k_integral(1, r) - oracle::bessel_k_integral(0, r); };
    double a = 0.5, b = 0.65;
    for (int i = 0; i < 60; ++i) {
        double m = 0.5 * (a + b);
        (f(m) < 0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}
} // namespace

TEST_CASE("cos_power_tail against direct integration")
{
    for (double rho : {0.0, 1e-3, 0.05, 0.3, 1.0, 7.0}) {
        for (int n : {3, 5}) {
            CAPTURE(rho);
            CAPTURE(n);
            double T = 20.0;
            double lim = 4000.0;
            double ref = 0.0;
            for (double a = T; a < lim; a += 2.0)
                ref += oracle::adaptive([&](double t) { return std::cos(rho * t) * std::pow(t, -n); }, a,
                                        a + 2.0, 1e-18);
            ref += std::pow(lim, 1 - n) / (n - 1) * (rho == 0.0 ? 1.0 : 0.0);
            double tol = rho == 0.0 ? 1e-15 : std::pow(lim, -n) / rho * 2.0 + 1e-15;
            CHECK(std::abs(cos_power_tail(rho, T, n) - ref) < tol);
        }
    }
}

TEST_CASE("closed-form components against angular quadrature")
{
    for (double rho : {1e-3, 0.1, 0.55, 1.0, 3.0, 12.0, 50.0}) {
        CAPTURE(rho);
        auto c = dispersion_components(rho);
        auto q = dispersion_components_quadrature(rho);
        CHECK(relerr(q.V1, c.V1) < 1e-8);
        CHECK(relerr(q.V2, c.V2) < 1e-8);
        CHECK(relerr(q.V3, c.V3) < 1e-8);
        CHECK(std::abs(c.V1 + c.V2 - c.V3 - 2.0 * pi - dispersion_V(rho)) < 1e-10 * (1.0 + std::abs(dispersion_V(rho))));
    }
}

TEST_CASE("V2 quadrature tends to 2 pi")
{
    CHECK(std::abs(dispersion_components_quadrature(1e-5).V2 - 2.0 * pi) < 1e-3);
}

TEST_CASE("V is negative below 1/2 and V' matches finite differences")
{
    for (double rho : {1e-3, 0.1, 0.3, 0.5})
        CHECK(dispersion_V(rho) < 0.0);
    for (double rho : {0.01, 0.4, 0.6, 2.0, 25.0}) {
        CAPTURE(rho);
        double h = 1e-5 * rho;
        double fd = (dispersion_V(rho + h) - dispersion_V(rho - h)) / (2 * h);
        CHECK(std::abs(fd - dispersion_V_prime(rho)) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("large-rho growth")
{
    // V ~ 2 pi (rho - 1) + O(1/rho)
    double r = 400.0;
    CHECK(std::abs(dispersion_V(r) - 2.0 * pi * (r - 1.0)) < 20.0 / r);
}

TEST_CASE("kernel quadrature reproduces the closed form")
{
    DispersionQuadrature q(50.0);
    auto grid = props::log_grid(1e-3, 50.0, 60);
    for (double rho : grid) {
        CAPTURE(rho);
        double v = dispersion_V(rho);
        CHECK(std::abs(q.V(rho) - v) < 1e-6 * (1.0 + std::abs(v)));
    }
}

TEST_CASE("F transform equals V2 - V3")
{
    DispersionQuadrature q(50.0);
    for (double rho : {0.02, 0.7, 5.0, 40.0}) {
        CAPTURE(rho);
        auto c = dispersion_components_quadrature(rho);
        CHECK(std::abs(q.F_part(rho) - (c.V2 - c.V3)) < 1e-8 * (1.0 + std::abs(c.V2 - c.V3)));
    }
}

TEST_CASE("critical radius")
{
    CriticalRadius b = find_lambda_star(1e-15, 200, RootMethod::Bisection);
    CriticalRadius s = find_lambda_star(1e-15, 200, RootMethod::Secant);
    CHECK(b.lambda_star > 0.5);
    CHECK(b.lambda_star < (1.0 + std::sqrt(17.0)) / 8.0);
    CHECK(b.residual <= 1e-12);
    CHECK(b.V_prime > 0.0);
    CHECK(std::abs(b.lambda_star - s.lambda_star) < 1e-12);
    CHECK(std::abs(b.lambda_star - oracle_lambda_star()) < 1e-11);
    CHECK(std::abs(dispersion_V_quadrature(b.lambda_star)) < 1e-6);
}

TEST_CASE("eigenvalue and bad input")
{
    CHECK(eigenvalue(0.25, 3) == dispersion_V(0.75));
    CHECK_THROWS_AS(eigenvalue(1.0, 0), DomainError);
    CHECK_THROWS_AS(dispersion_V(0.0), DomainError);
    CHECK_THROWS_AS(dispersion_V(-1.0), DomainError);
}
