#include "exdom/quadrature.hpp"
#include "exdom/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace exdom {

namespace {

GaussLegendre compute_rule(int n)
{
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        // one more pass for the derivative at the converged node
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        g.x[i] = -z;
        g.x[n - 1 - i] = z;
        g.w[i] = g.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return g;
}

} // namespace

const GaussLegendre& gauss_legendre(int n)
{
    if (n < 1 || n > 1024)
        throw DomainError("gauss_legendre: order out of range");
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussLegendre>(compute_rule(n));
    return *slot;
}

void QuadRule::add_panel(double a, double b, int n)
{
    const GaussLegendre& g = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x.push_back(c + h * g.x[i]);
        w.push_back(h * g.w[i]);
    }
}

double QuadRule::sum(const std::vector<double>& f) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += w[i] * f[i];
    return s;
}

void add_graded_panels(QuadRule& rule, double a, double b, double h, double ratio, int n)
{
    double lo = a;
    while (lo < b) {
        double hi = lo + h;
        if (hi > b || b - hi < 0.5 * h)
            hi = b;
        rule.add_panel(lo, hi, n);
        lo = hi;
        h *= ratio;
    }
}

void add_panels_toward(QuadRule& rule, double a, double b, double hmin, int n)
{
    double hi = b;
    while (hi - a > 2.0 * hmin) {
        double mid = a + 0.5 * (hi - a);
        rule.add_panel(mid, hi, n);
        hi = mid;
    }
    rule.add_panel(a, hi, n);
}

} // namespace exdom
