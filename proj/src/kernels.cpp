#include "exdom/kernels.hpp"
#include "exdom/errors.hpp"
#include "exdom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace exdom {

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;

// int_0^{pi/2} f(theta) dtheta for integrands in x = 2 sin(theta) that are
// peaked on the scale theta ~ t near 0: panels [0,t], [t,2t], [2t,4t], ...
template <class F>
double theta_integral(F&& f, double t, int n)
{
    const GaussLegendre& g = gauss_legendre(n);
    double total = 0.0;
    auto panel = [&](double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += g.w[i] * f(c + h * g.x[i]);
        total += s * h;
    };
    if (t >= 2.0) {
        panel(0.0, 0.5 * half_pi);
        panel(0.5 * half_pi, half_pi);
        return total;
    }
    double lo = 0.0, hi = std::min(t, half_pi);
    panel(lo, hi);
    while (hi < half_pi) {
        lo = hi;
        hi = std::min(2.0 * hi, half_pi);
        if (half_pi - hi < 0.5 * (hi - lo))
            hi = half_pi;
        panel(lo, hi);
    }
    return total;
}

double g_raw(double t, int n)
{
    // g(t) = (4+t^2)^{-1} int_0^{pi/2} sqrt(4 sin^2 th + t^2) dth
    const double t2 = t * t;
    double v = theta_integral(
        [&](double th) {
            const double s = std::sin(th);
            return std::sqrt(4.0 * s * s + t2);
        },
        t, n);
    return v / (4.0 + t2);
}

double G_direct(double t, int n)
{
    const double t2 = t * t;
    double v = theta_integral(
        [&](double th) {
            const double s = std::sin(th);
            const double d = t2 + 4.0 * s * s;
            return 1.0 / (d * std::sqrt(d));
        },
        t, n);
    return 4.0 * v;
}

void G01_raw(double t, int n, double* g0, double* g1)
{
    const double t2 = t * t;
    double b = 0.0;
    double a = theta_integral(
        [&](double th) {
            const double s = std::sin(th);
            const double p2 = 4.0 * s * s;
            const double d = t2 + p2;
            const double r = 1.0 / (d * std::sqrt(d));
            return p2 * r;
        },
        t, n);
    if (g1) {
        b = theta_integral(
            [&](double th) {
                const double s = std::sin(th);
                const double p2 = 4.0 * s * s;
                const double d = t2 + p2;
                const double r = 1.0 / (d * d * std::sqrt(d));
                return p2 * p2 * r;
            },
            t, n);
    }
    if (g0)
        *g0 = 4.0 * a;
    if (g1)
        *g1 = 4.0 * b;
}

double F_raw(double t, int n)
{
    // single integrand: p^2 d^{-3/2} - 3/4 p^4 d^{-5/2} = p^2 (t^2 + p^2/4) d^{-5/2}
    const double t2 = t * t;
    double v = theta_integral(
        [&](double th) {
            const double s = std::sin(th);
            const double p2 = 4.0 * s * s;
            const double d = t2 + p2;
            return p2 * (t2 + 0.25 * p2) / (d * d * std::sqrt(d));
        },
        t, n);
    return 4.0 * v;
}

} // namespace

double kernel_g(double t, const KernelEvalConfig& cfg)
{
    t = std::abs(t);
    if (t == 0.0)
        return 0.5;
    return g_raw(t, cfg.nodes_per_panel);
}

double kernel_G(double t, const KernelEvalConfig& cfg)
{
    t = std::abs(t);
    if (t == 0.0)
        throw DomainError("kernel_G: singular at t = 0");
    if (t > cfg.direct_threshold)
        return G_direct(t, cfg.nodes_per_panel);
    return 4.0 * g_raw(t, cfg.nodes_per_panel) / (t * t);
}

double kernel_G0(double t, const KernelEvalConfig& cfg)
{
    t = std::abs(t);
    if (t == 0.0)
        return std::numeric_limits<double>::infinity();
    double g0;
    G01_raw(t, cfg.nodes_per_panel, &g0, nullptr);
    return g0;
}

double kernel_G1(double t, const KernelEvalConfig& cfg)
{
    t = std::abs(t);
    if (t == 0.0)
        return std::numeric_limits<double>::infinity();
    double g0, g1;
    G01_raw(t, cfg.nodes_per_panel, &g0, &g1);
    return g1;
}

double kernel_F(double t, const KernelEvalConfig& cfg)
{
    t = std::abs(t);
    if (t == 0.0)
        return std::numeric_limits<double>::infinity();
    return F_raw(t, cfg.nodes_per_panel);
}

void kernel_g_F(double t, double& g, double& F, const KernelEvalConfig& cfg)
{
    g = kernel_g(t, cfg);
    F = kernel_F(t, cfg);
}

KernelMasses kernel_masses(const KernelEvalConfig& cfg)
{
    // 2 int_0^inf K(t) dt with t = sinh u; panels graded toward u = 0
    // where both kernels have a logarithmic singularity.
    QuadRule rule;
    add_panels_toward(rule, 0.0, 0.5, 1e-15, cfg.nodes_per_panel);
    add_graded_panels(rule, 0.5, 24.0, 0.5, 1.0, cfg.nodes_per_panel);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double u = rule.x[i];
        const double t = std::sinh(u), jac = std::cosh(u);
        double g0, g1;
        G01_raw(t, cfg.nodes_per_panel, &g0, &g1);
        m0 += rule.w[i] * g0 * jac;
        m1 += rule.w[i] * g1 * jac;
    }
    return {2.0 * m0, 2.0 * m1};
}

namespace {

// Re int_X^inf e^{iu} u^{-n} du by its asymptotic series; X >= 60.
double cos_power_asymptotic(double X, int n)
{
    // i e^{iX} sum_k (-i)^k (n)_k X^{-n-k}
    double re = 0.0, im = 0.0;
    double term = std::pow(X, -n);
    const double first = term;
    for (int k = 0; k < 200; ++k) {
        // (-i)^k
        switch (k % 4) {
        case 0: re += term; break;
        case 1: im -= term; break;
        case 2: re -= term; break;
        case 3: im += term; break;
        }
        term *= (n + k) / X;
        if (term < 1e-18 * first)
            break;
    }
    // multiply (re + i im) by i e^{iX} and keep the real part
    const double c = std::cos(X), s = std::sin(X);
    return -(re * s + im * c);
}

constexpr double asym_start = 60.0;

} // namespace

double cos_power_tail(double rho, double T, int n)
{
    if (n < 2 || T <= 0.0)
        throw DomainError("cos_power_tail: need n >= 2 and T > 0");
    rho = std::abs(rho);
    if (rho == 0.0)
        return std::pow(T, 1 - n) / (n - 1);
    const double X = rho * T;
    if (X >= asym_start)
        return std::pow(rho, n - 1) * cos_power_asymptotic(X, n);
    // direct quadrature on [T, T2], asymptotics beyond
    const double T2 = asym_start / rho;
    const GaussLegendre& g = gauss_legendre(16);
    double sum = 0.0, lo = T;
    while (lo < T2) {
        double hi = std::min({T2, lo + 0.5 * lo, lo + 2.0 / rho});
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double s = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double t = c + h * g.x[i];
            s += g.w[i] * std::cos(rho * t) * std::pow(t, -n);
        }
        sum += s * h;
        lo = hi;
    }
    return sum + std::pow(rho, n - 1) * cos_power_asymptotic(asym_start, n);
}

KernelTable::KernelTable(double omega, const KernelEvalConfig& cfg) : omega_max(omega)
{
    const int n = 12;
    const double h = std::min(0.25, 6.0 / std::max(omega, 1e-300));
    QuadRule rule;
    add_panels_toward(rule, 0.0, h, 1e-15, n);
    add_graded_panels(rule, h, T, h, 1.0, n);
    t = rule.x;
    w = rule.w;
    g.resize(t.size());
    F.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        g[i] = g_raw(t[i], cfg.nodes_per_panel);
        F[i] = F_raw(t[i], cfg.nodes_per_panel);
    }
}

double KernelTable::tail(double rho) const
{
    using namespace kernel_tail;
    const double T2 = T * T;
    return G3 / (2.0 * T2) + G5 / (4.0 * T2 * T2) + (F3 - G3) * cos_power_tail(rho, T, 3) +
           (F5 - G5) * cos_power_tail(rho, T, 5);
}

} // namespace exdom
