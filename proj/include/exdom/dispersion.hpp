#pragma once

#include "exdom/bessel.hpp"
#include "exdom/kernels.hpp"

#include <memory>

namespace exdom {

// Dispersion function of the linearized operator: L_lambda cos(k.) =
// V(lambda k) cos(k.).  V(rho) = 4 pi rho I1 (rho K1 - K0).
double dispersion_V(double rho, const BesselAccuracy& acc = {});
double dispersion_V_prime(double rho, const BesselAccuracy& acc = {});

// V = V1 + V2 - V3 - 2 pi with
//   V1 = 8 rho^2 int_0^{pi/2} cos^2 K0(2 rho sin),
//   V2 = 8 rho   int_0^{pi/2} sin   K1(2 rho sin),
//   V3 = 8 rho^2 int_0^{pi/2} sin^2 K0(2 rho sin).
struct DispersionComponents
{
    double V1 = 0.0, V2 = 0.0, V3 = 0.0;
};

DispersionComponents dispersion_components(double rho, const BesselAccuracy& acc = {});
DispersionComponents dispersion_components_quadrature(double rho, int nodes_per_panel = 16);

// V from the kernel integrals
//   int (1 - cos rho t) G dt + int cos(rho t) F dt - 2 pi.
// The object form reuses the kernel table across many rho.
class DispersionQuadrature
{
public:
    explicit DispersionQuadrature(double rho_max = 64.0, const KernelEvalConfig& cfg = {});

    double V(double rho) const;
    double G_part(double rho) const; // int (1 - cos rho t) G dt
    double F_part(double rho) const; // int cos(rho t) F dt

private:
    std::shared_ptr<const KernelTable> table_;
};

double dispersion_V_quadrature(double rho, const KernelEvalConfig& cfg = {});

// eigenvalue of L_lambda on cos(k.)
double eigenvalue(double lambda, int k, const BesselAccuracy& acc = {});

struct CriticalRadius
{
    double lambda_star = 0.0;
    double residual = 0.0; // |V(lambda_star)|
    double V_prime = 0.0;
    int iterations = 0;
};

enum class RootMethod { Bisection, Secant };

// Unique zero of V on (1/2, (1+sqrt 17)/8).
CriticalRadius find_lambda_star(double tol = 1e-15, int max_iter = 200,
                                RootMethod method = RootMethod::Bisection);

// Bracket endpoints.
double lambda_star_lower();
double lambda_star_upper();

} // namespace exdom
