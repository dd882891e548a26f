#pragma once

#include "exdom/profile.hpp"

#include <vector>

namespace exdom {

// H(phi)(s) = -Hcal(phi)(s) / sqrt(1 + phi'(s)^2), where Hcal is a double
// integral over the axial offset t and the unit circle (p = |sigma - e1|).
//
// h_regularized: even/odd split in t, Duffy-transformed corner box around
// (t, p) = (0, 0), and for |t| > pi a periodized lattice sum with an
// Euler-Maclaurin tail.
// h_direct: the unsplit integrand with raw differences, its own corner
// boxes, period-by-period panels and a fitted algebraic tail.
struct QuadratureSpec
{
    int near_nodes = 40;      // per direction, corner box and remainder panels
    int far_theta_nodes = 24; // |t| > pi
    int far_x_nodes = 96;     // per period
    int lattice_terms = 32;   // explicit periods on each side

    int direct_nodes = 32;         // corner boxes
    int direct_period_nodes = 100; // axial nodes per period
    int direct_periods = 64;

    double target_rel_error = 1e-9;
    bool self_check = false;  // re-evaluate with refined() and compare

    void validate() const;
    QuadratureSpec refined() const;
};

double h_direct(const PeriodicProfile& phi, double s, const QuadratureSpec& quad = {});
double h_regularized(const PeriodicProfile& phi, double s, const QuadratureSpec& quad = {});

// H(phi)(s_j) + 2 pi at s_j = pi j / (grid_size - 1), j = 0..grid_size-1
std::vector<double> equilibrium_residual(const PeriodicProfile& phi, int grid_size,
                                         const QuadratureSpec& quad = {}, int threads = 0);

// H + 2 pi at arbitrary points
std::vector<double> residual_at(const PeriodicProfile& phi, const std::vector<double>& s,
                                const QuadratureSpec& quad = {}, int threads = 0);

} // namespace exdom
