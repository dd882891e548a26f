#include "doctest.h"
#include "exdom/errors.hpp"
#include "exdom/operator_eval.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace exdom;
using std::numbers::pi;

TEST_CASE("beta-function identity behind the constant-profile value")
{
    // int_0^inf (1 + t^2)^{-3/2} dt = 1/2 B(1, 1/2) = 1
    double v = oracle::adaptive([](double u) { double t = std::tan(u); return std::pow(1 + t * t, -1.5) * (1 + t * t); },
                                0.0, pi / 2, 1e-15);
    CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("constant cylinders")
{
    for (double lam : {0.3, 0.5, 1.0, 2.0, 5.0}) {
        CAPTURE(lam);
        auto p = PeriodicProfile::constant(lam, 3);
        for (double s : {0.0, 1.1, 2.9}) {
            CHECK(std::abs(h_regularized(p, s) + 2.0 * pi) < 1e-9);
            CHECK(std::abs(h_direct(p, s) + 2.0 * pi) < 1e-7);
        }
        for (double r : equilibrium_residual(p, 5))
            CHECK(std::abs(r) < 1e-8);
    }
}

TEST_CASE("small cosine perturbation: both evaluators agree")
{
    PeriodicProfile p({1.0, 0.05});
    for (double s : {0.0, pi / 3}) {
        CAPTURE(s);
        CHECK(std::abs(h_regularized(p, s) - h_direct(p, s)) < 1e-6);
        // much tighter in practice
        CHECK(std::abs(h_regularized(p, s) - h_direct(p, s)) < 1e-10);
    }
}

TEST_CASE("oracle agreement on a random corpus")
{
    auto profiles = corpus::random_profiles(20);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        for (double s : {0.0, 0.7, 2.2}) {
            CAPTURE(i);
            CAPTURE(s);
            double hr = h_regularized(p, s), hd = h_direct(p, s);
            CHECK(std::abs(hr - hd) <= 1e-6 * (1.0 + std::abs(hr)));
            CHECK(std::abs(hr - hd) <= 1e-8 * (1.0 + std::abs(hr)));
        }
    }
}

TEST_CASE("refinement self-consistency")
{
    auto profiles = corpus::random_profiles(6, 99);
    QuadratureSpec q;
    q.self_check = true;
    for (const auto& p : profiles) {
        CHECK_NOTHROW(h_regularized(p, 0.4, q));
        CHECK_NOTHROW(h_direct(p, 1.3, q));
    }
}

TEST_CASE("evenness in s")
{
    PeriodicProfile p({1.1, 0.12, -0.05, 0.02});
    for (double s : {0.3, 1.2, 2.7}) {
        CHECK(std::abs(h_regularized(p, s) - h_regularized(p, -s)) < 1e-12);
        CHECK(std::abs(h_direct(p, s) - h_direct(p, -s)) < 1e-12);
    }
}

TEST_CASE("weighted mean of the residual vanishes")
{
    // int_0^{2pi} (H + 2pi) phi sqrt(1 + phi'^2) ds = 0 for every positive phi
    auto profiles = corpus::random_profiles(4, 7);
    profiles.push_back(PeriodicProfile({0.8, 0.15, 0.05}));
    for (const auto& p : profiles) {
        const int M = 64;
        auto r = equilibrium_residual(p, M + 1);
        double weighted = 0.0, plain = 0.0;
        for (int j = 0; j <= M; ++j) {
            double s = pi * j / M;
            double w = (j == 0 || j == M) ? 0.5 : 1.0;
            double d = p.eval_deriv(s);
            weighted += w * r[j] * p.eval(s) * std::sqrt(1 + d * d);
            plain += w * r[j];
        }
        CHECK(std::abs(weighted) * pi / M < 1e-10);
        (void)plain;
    }
}

TEST_CASE("positivity and spec validation")
{
    PeriodicProfile bad({0.2, 0.3});
    CHECK_THROWS_AS(h_regularized(bad, 0.0), DomainError);
    CHECK_THROWS_AS(h_direct(bad, 0.0), DomainError);
    CHECK_THROWS_AS(equilibrium_residual(bad, 8), DomainError);
    QuadratureSpec q;
    q.near_nodes = 0;
    CHECK_THROWS_AS(h_regularized(PeriodicProfile::constant(1.0), 0.0, q), DomainError);
}
