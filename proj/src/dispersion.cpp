#include "exdom/dispersion.hpp"
#include "exdom/errors.hpp"
#include "exdom/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace exdom {

namespace {

constexpr double pi = std::numbers::pi;

void check_rho(double rho, const char* who)
{
    if (!(rho > 0.0) || std::isinf(rho))
        throw DomainError(std::string(who) + ": rho must be positive and finite");
}

// rho K1 - K0: same sign as V
double sign_function(double rho)
{
    return rho * bessel_k(1, rho) - bessel_k(0, rho);
}

} // namespace

double dispersion_V(double rho, const BesselAccuracy& acc)
{
    check_rho(rho, "dispersion_V");
    const double i1 = bessel_i(1, rho, acc);
    return 4.0 * pi * rho * i1 * (rho * bessel_k(1, rho, acc) - bessel_k(0, rho, acc));
}

double dispersion_V_prime(double rho, const BesselAccuracy& acc)
{
    check_rho(rho, "dispersion_V_prime");
    const double i0 = bessel_i(0, rho, acc), i1 = bessel_i(1, rho, acc);
    const double k0 = bessel_k(0, rho, acc), k1 = bessel_k(1, rho, acc);
    return 4.0 * pi * rho * rho * (i0 * k1 - i1 * k0) - 4.0 * pi * rho * (i0 * k0 - i1 * k1);
}

DispersionComponents dispersion_components(double rho, const BesselAccuracy& acc)
{
    check_rho(rho, "dispersion_components");
    const double i0 = bessel_i(0, rho, acc), i1 = bessel_i(1, rho, acc);
    const double k0 = bessel_k(0, rho, acc), k1 = bessel_k(1, rho, acc);
    DispersionComponents c;
    c.V1 = 2.0 * pi * rho * rho * (i0 * k0 + i1 * k1);
    c.V2 = 4.0 * pi * rho * i0 * k1 - 2.0 * pi;
    c.V3 = 2.0 * pi * rho * rho * (i0 * k0 - i1 * k1);
    return c;
}

DispersionComponents dispersion_components_quadrature(double rho, int n)
{
    check_rho(rho, "dispersion_components_quadrature");
    // K0(2 rho sin) is log-singular at 0 and decays on the scale 1/rho
    const double half_pi = 0.5 * pi;
    const double a = std::min(half_pi, 1.0 / rho);
    QuadRule rule;
    add_panels_toward(rule, 0.0, a, 1e-15, n);
    if (a < half_pi)
        add_graded_panels(rule, a, half_pi, a, 2.0, n);
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double th = rule.x[i];
        const double s = std::sin(th), c = std::cos(th);
        const double z = 2.0 * rho * s;
        const double k0 = bessel_k(0, z), k1 = bessel_k(1, z);
        s1 += rule.w[i] * c * c * k0;
        s2 += rule.w[i] * s * k1;
        s3 += rule.w[i] * s * s * k0;
    }
    return {8.0 * rho * rho * s1, 8.0 * rho * s2, 8.0 * rho * rho * s3};
}

DispersionQuadrature::DispersionQuadrature(double rho_max, const KernelEvalConfig& cfg)
    : table_(std::make_shared<KernelTable>(rho_max, cfg))
{
}

double DispersionQuadrature::G_part(double rho) const
{
    const KernelTable& tb = *table_;
    double s = 0.0;
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
        const double t = tb.t[i];
        const double h = std::sin(0.5 * rho * t);
        s += tb.w[i] * 2.0 * h * h * 4.0 * tb.g[i] / (t * t);
    }
    using namespace kernel_tail;
    const double T = tb.T, T2 = T * T;
    const double tail = G3 / (2.0 * T2) + G5 / (4.0 * T2 * T2) - G3 * cos_power_tail(rho, T, 3) -
                        G5 * cos_power_tail(rho, T, 5);
    return 2.0 * (s + tail);
}

double DispersionQuadrature::F_part(double rho) const
{
    const KernelTable& tb = *table_;
    double s = 0.0;
    for (std::size_t i = 0; i < tb.t.size(); ++i)
        s += tb.w[i] * std::cos(rho * tb.t[i]) * tb.F[i];
    using namespace kernel_tail;
    const double tail = F3 * cos_power_tail(rho, tb.T, 3) + F5 * cos_power_tail(rho, tb.T, 5);
    return 2.0 * (s + tail);
}

double DispersionQuadrature::V(double rho) const
{
    check_rho(rho, "dispersion_V_quadrature");
    if (rho > table_->omega_max)
        throw DomainError("dispersion_V_quadrature: rho beyond the resolved range");
    return G_part(rho) + F_part(rho) - 2.0 * pi;
}

double dispersion_V_quadrature(double rho, const KernelEvalConfig& cfg)
{
    DispersionQuadrature q(std::max(rho, 1.0), cfg);
    return q.V(rho);
}

double eigenvalue(double lambda, int k, const BesselAccuracy& acc)
{
    if (k < 1)
        throw DomainError("eigenvalue: mode must be >= 1");
    return dispersion_V(lambda * k, acc);
}

double lambda_star_lower() { return 0.5; }
double lambda_star_upper() { return (1.0 + std::sqrt(17.0)) / 8.0; }

CriticalRadius find_lambda_star(double tol, int max_iter, RootMethod method)
{
    double a = lambda_star_lower(), b = lambda_star_upper();
    double fa = sign_function(a), fb = sign_function(b);
    if (!(fa < 0.0 && fb > 0.0))
        throw BracketError("find_lambda_star: V does not change sign on the bracket");
    CriticalRadius out;
    int it = 0;
    double x = 0.5 * (a + b);
    if (method == RootMethod::Bisection) {
        for (; it < max_iter && b - a > tol; ++it) {
            x = 0.5 * (a + b);
            const double fx = sign_function(x);
            if (fx == 0.0) {
                a = b = x;
                break;
            }
            if (fx < 0.0)
                a = x;
            else
                b = x;
        }
        x = 0.5 * (a + b);
        if (b - a > tol)
            throw ConvergenceError("find_lambda_star: bisection did not reach tolerance");
    } else {
        // secant from the bracket ends, falling back to bisection if a step leaves it
        double x0 = a, x1 = b, f0 = fa, f1 = fb;
        for (; it < max_iter; ++it) {
            double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
            if (!(x2 > a && x2 < b))
                x2 = 0.5 * (a + b);
            const double f2 = sign_function(x2);
            if (f2 < 0.0)
                a = x2;
            else
                b = x2;
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
            if (std::abs(x1 - x0) <= tol || f2 == 0.0)
                break;
        }
        x = x1;
        if (it == max_iter)
            throw ConvergenceError("find_lambda_star: secant did not converge");
    }
    out.lambda_star = x;
    out.residual = std::abs(dispersion_V(x));
    out.V_prime = dispersion_V_prime(x);
    out.iterations = it;
    return out;
}

} // namespace exdom
