#pragma once

#include "exdom/bessel.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace props {

struct Failure
{
    double x;
    std::string what;
};

inline std::vector<double> log_grid(double a, double b, int n)
{
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = a * std::pow(b / a, double(i) / (n - 1));
    return g;
}

// Wronskian, derivative identities and the classical bounds on a log grid.
inline std::vector<Failure> bessel_property_failures(const std::vector<double>& grid)
{
    using exdom::bessel_i;
    using exdom::bessel_k;
    std::vector<Failure> out;
    auto fail = [&](double x, const char* w) { out.push_back({x, w}); };
    for (double x : grid) {
        double i0 = bessel_i(0, x), i1 = bessel_i(1, x);
        double k0 = bessel_k(0, x), k1 = bessel_k(1, x);

        if (std::abs(x * (i0 * k1 + i1 * k0) - 1.0) > 1e-11)
            fail(x, "wronskian");

        const double h = 1e-6 * x;
        auto d = [&](auto f) { return (f(x + h) - f(x - h)) / (2.0 * h); };
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); };
        if (rel(d([](double t) { return bessel_i(0, t); }), i1) > 1e-5)
            fail(x, "I0' = I1");
        if (rel(d([](double t) { return bessel_k(0, t); }), -k1) > 1e-5)
            fail(x, "K0' = -K1");
        if (rel(d([](double t) { return bessel_i(1, t); }), i0 - i1 / x) > 1e-5)
            fail(x, "I1' = I0 - I1/x");
        if (rel(d([](double t) { return bessel_k(1, t); }), -k0 - k1 / x) > 1e-5)
            fail(x, "K1' = -K0 - K1/x");

        if (!(k1 > k0))
            fail(x, "K1 > K0");
        if (!(x * k0 < x * k1 && x * k1 <= 1.0))
            fail(x, "x K0 < x K1 <= 1");
        double ri = i1 / i0;
        if (!(x / (2.0 + x) < ri && ri < 2.0 * x / (1.0 + 2.0 * x) && ri < 0.5 * x))
            fail(x, "I1/I0 bounds");
        double rk = k1 / k0;
        if (!((3.0 + 4.0 * x) / (1.0 + 4.0 * x) < rk && rk < (1.0 + 2.0 * x) / (2.0 * x)))
            fail(x, "K1/K0 bounds");
        if (!(0.0 <= x * k1 * i1 && x * k1 * i1 < 0.5))
            fail(x, "x K1 I1 in [0, 1/2)");
        if (!(0.5 < x * k1 * i0 && x * k1 * i0 <= 1.0))
            fail(x, "x K1 I0 in (1/2, 1]");
    }
    return out;
}

} // namespace props
