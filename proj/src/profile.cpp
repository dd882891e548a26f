#include "exdom/profile.hpp"
#include "exdom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exdom {

double sin_minus_x(double x)
{
    if (std::abs(x) > 0.5)
        return std::sin(x) - x;
    const double x2 = x * x;
    // -x^3/6 (1 - x^2/20 (1 - x^2/42 (1 - x^2/72 (1 - x^2/110 (1 - x^2/156)))))
    double r = 1.0 - x2 / 156.0;
    r = 1.0 - x2 / 110.0 * r;
    r = 1.0 - x2 / 72.0 * r;
    r = 1.0 - x2 / 42.0 * r;
    r = 1.0 - x2 / 20.0 * r;
    return -x * x2 / 6.0 * r;
}

PeriodicProfile::PeriodicProfile(std::vector<double> coefficients) : a_(std::move(coefficients))
{
    if (a_.empty())
        a_.push_back(0.0);
    for (double v : a_)
        if (!std::isfinite(v))
            throw DomainError("PeriodicProfile: non-finite coefficient");
}

PeriodicProfile PeriodicProfile::constant(double value, int N)
{
    std::vector<double> a(std::max(N, 0) + 1, 0.0);
    a[0] = value;
    return PeriodicProfile(std::move(a));
}

PeriodicProfile PeriodicProfile::cosine(double value, int k, double amp, int N)
{
    if (k < 0)
        throw DomainError("PeriodicProfile::cosine: negative mode");
    PeriodicProfile p = constant(value, std::max(N, k));
    p.a_[k] += amp;
    return p;
}

void PeriodicProfile::set_coeff(int l, double v)
{
    if (l < 0)
        throw DomainError("set_coeff: negative index");
    if (l > N())
        a_.resize(l + 1, 0.0);
    a_[l] = v;
}

// Clenshaw for sum a_l cos(l t), sum l a_l sin(l t), sum l^2 a_l cos(l t)
double PeriodicProfile::eval(double t) const
{
    const double c2 = 2.0 * std::cos(t);
    double b1 = 0.0, b2 = 0.0;
    for (int l = N(); l >= 1; --l) {
        const double b0 = a_[l] + c2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    // sum_{l>=1} a_l cos(l t) = b1 cos t - b2
    return a_[0] + b1 * 0.5 * c2 - b2;
}

double PeriodicProfile::eval_deriv(double t) const
{
    const double c2 = 2.0 * std::cos(t);
    double b1 = 0.0, b2 = 0.0;
    for (int l = N(); l >= 1; --l) {
        const double b0 = l * a_[l] + c2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    // sum l a_l sin(l t) = b1 sin t
    return -b1 * std::sin(t);
}

void PeriodicProfile::eval_all(double t, double& f, double& d1, double& d2) const
{
    const double c = std::cos(t), c2 = 2.0 * c;
    double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0, h1 = 0.0, h2 = 0.0;
    for (int l = N(); l >= 1; --l) {
        const double f0 = a_[l] + c2 * f1 - f2;
        const double g0 = l * a_[l] + c2 * g1 - g2;
        const double h0 = double(l) * l * a_[l] + c2 * h1 - h2;
        f2 = f1;
        f1 = f0;
        g2 = g1;
        g1 = g0;
        h2 = h1;
        h1 = h0;
    }
    f = a_[0] + f1 * c - f2;
    d1 = -g1 * std::sin(t);
    d2 = -(h1 * c - h2);
}

double PeriodicProfile::lambda0(double s, double t) const
{
    return lambda1(s, t) + eval_deriv(s);
}

double PeriodicProfile::lambda1(double s, double t) const
{
    // sum a_l [2 cos(ls) sin^2(lt/2) - sin(ls) (sin(lt) - lt)] / t
    if (t == 0.0)
        return 0.0;
    double acc = 0.0;
    for (int l = 1; l <= N(); ++l) {
        const double h = std::sin(0.5 * l * t);
        acc += a_[l] * (2.0 * std::cos(l * s) * h * h - std::sin(l * s) * sin_minus_x(l * t));
    }
    return acc / t;
}

std::vector<double> PeriodicProfile::to_samples(int M) const
{
    if (M < 1)
        throw DomainError("to_samples: need M >= 1");
    std::vector<double> v(M);
    for (int j = 0; j < M; ++j)
        v[j] = eval(2.0 * std::numbers::pi * j / M);
    return v;
}

PeriodicProfile PeriodicProfile::from_samples(const std::vector<double>& values, int N)
{
    const int M = int(values.size());
    if (N < 0 || M < 2 * N + 1)
        throw DomainError("from_samples: insufficient samples (need M >= 2N+1)");
    std::vector<double> a(N + 1, 0.0);
    for (int l = 0; l <= N; ++l) {
        double s = 0.0;
        for (int j = 0; j < M; ++j)
            s += values[j] * std::cos(2.0 * std::numbers::pi * double((long(l) * j) % M) / M);
        a[l] = (l == 0 ? 1.0 : 2.0) * s / M;
    }
    return PeriodicProfile(std::move(a));
}

double PeriodicProfile::min_on_grid(int samples) const
{
    if (samples <= 0)
        samples = 16 * N() + 64;
    double m = eval(0.0);
    for (int j = 1; j <= samples; ++j)
        m = std::min(m, eval(std::numbers::pi * j / samples));
    return m;
}

void PeriodicProfile::require_positive(const char* who) const
{
    if (!is_positive())
        throw DomainError(std::string(who) + ": profile is not strictly positive");
}

double PeriodicProfile::c1_norm(int samples) const
{
    if (samples <= 0)
        samples = 16 * N() + 64;
    double f = 0.0, d = 0.0;
    for (int j = 0; j <= samples; ++j) {
        const double t = std::numbers::pi * j / samples;
        f = std::max(f, std::abs(eval(t)));
        d = std::max(d, std::abs(eval_deriv(t)));
    }
    return f + d;
}

PeriodicProfile PeriodicProfile::resized(int n) const
{
    std::vector<double> a(std::max(n, 0) + 1, 0.0);
    for (int l = 0; l <= std::min(n, N()); ++l)
        a[l] = a_[l];
    return PeriodicProfile(std::move(a));
}

PeriodicProfile operator+(const PeriodicProfile& a, const PeriodicProfile& b)
{
    const int n = std::max(a.N(), b.N());
    std::vector<double> c(n + 1);
    for (int l = 0; l <= n; ++l)
        c[l] = a.coeff(l) + b.coeff(l);
    return PeriodicProfile(std::move(c));
}

PeriodicProfile operator-(const PeriodicProfile& a, const PeriodicProfile& b)
{
    return a + (-1.0) * b;
}

PeriodicProfile operator*(double c, const PeriodicProfile& a)
{
    std::vector<double> v = a.coefficients();
    for (double& x : v)
        x *= c;
    return PeriodicProfile(std::move(v));
}

double inner_product(const PeriodicProfile& f, const PeriodicProfile& g)
{
    double s = 2.0 * f.coeff(0) * g.coeff(0);
    for (int l = 1; l <= std::max(f.N(), g.N()); ++l)
        s += f.coeff(l) * g.coeff(l);
    return std::numbers::pi * s;
}

} // namespace exdom
