#pragma once

#include <vector>

namespace exdom {

// Axial kernels of the linearized operator, obtained by integrating over
// the unit circle: with p = |sigma - e1|,
//   G(t)  = int (t^2 + p^2)^(-3/2)
//   G0(t) = int p^2 (t^2 + p^2)^(-3/2)
//   G1(t) = int p^4 (t^2 + p^2)^(-5/2)
//   F     = G0 - 3/4 G1
// and G(t) = 4 g(t) / t^2 with g(0) = 1/2.
// G0, G1, F diverge logarithmically at t = 0 (returned as +inf there).
struct KernelEvalConfig
{
    int nodes_per_panel = 16;
    double direct_threshold = 20.0; // |t| above which G uses direct quadrature
};

double kernel_g(double t, const KernelEvalConfig& cfg = {});
double kernel_G(double t, const KernelEvalConfig& cfg = {});
double kernel_G0(double t, const KernelEvalConfig& cfg = {});
double kernel_G1(double t, const KernelEvalConfig& cfg = {});
double kernel_F(double t, const KernelEvalConfig& cfg = {});

// g and F together (they share the angular quadrature).
void kernel_g_F(double t, double& g, double& F, const KernelEvalConfig& cfg = {});

struct KernelMasses
{
    double G0; // expected 4 pi
    double G1; // expected 8 pi / 3
};

KernelMasses kernel_masses(const KernelEvalConfig& cfg = {});

// Large-|t| behaviour: G ~ 2pi/t^3 - 6pi/t^5, F ~ 4pi/t^3 - 27pi/t^5.
namespace kernel_tail {
constexpr double G3 = 2.0 * 3.14159265358979323846;
constexpr double G5 = -6.0 * 3.14159265358979323846;
constexpr double F3 = 4.0 * 3.14159265358979323846;
constexpr double F5 = -27.0 * 3.14159265358979323846;
} // namespace kernel_tail

// int_T^inf cos(rho t) t^{-n} dt, n >= 2
double cos_power_tail(double rho, double T, int n);

// Tabulated g and F on [0, T] for integrals of the form
//   int_0^inf a(t) G(t) + b(t) F(t) dt
// whose factors oscillate at most like cos(omega_max t). Panels are graded
// toward t = 0 (F is log-singular); beyond T the caller adds the tails.
struct KernelTable
{
    double T = 200.0;
    double omega_max = 0.0;
    std::vector<double> t, w, g, F;

    KernelTable(double omega_max, const KernelEvalConfig& cfg = {});

    // int_T^inf (1 - cos rho t) G + cos(rho t) F dt, to O(T^-6)
    double tail(double rho) const;
};

} // namespace exdom
