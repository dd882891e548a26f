#pragma once

#include <vector>

namespace exdom {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre
{
    std::vector<double> x;
    std::vector<double> w;
};

// Cached; safe to call from several threads.
const GaussLegendre& gauss_legendre(int n);

// Nodes and weights of a composite rule, already mapped to the panels.
struct QuadRule
{
    std::vector<double> x;
    std::vector<double> w;

    void add_panel(double a, double b, int n);
    double sum(const std::vector<double>& f) const;
    std::size_t size() const { return x.size(); }
};

// Panels [a, a+h], [a+h, a+2h*r], ... growing geometrically by `ratio`
// from width h until b is reached.
void add_graded_panels(QuadRule& rule, double a, double b, double h, double ratio, int n);

// Panels on [a, b] shrinking geometrically toward a, down to width `hmin`,
// followed by a single panel [a, a + hmin].
void add_panels_toward(QuadRule& rule, double a, double b, double hmin, int n);

template <class F>
double integrate_gl(F&& f, double a, double b, int n)
{
    const GaussLegendre& g = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += g.w[i] * f(c + h * g.x[i]);
    return s * h;
}

} // namespace exdom
