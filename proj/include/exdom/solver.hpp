#pragma once

#include "exdom/operator_eval.hpp"
#include "exdom/profile.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace exdom {

// Branch k near the cylinder of radius lambda*/k, parametrized by the
// amplitude s:  phi = lambda + s (cos(k.) + mu),  mu without mean and
// without cos(k.) component.
struct SolverConfig
{
    int N = 32;
    double newton_tol = 1e-10;  // sup of the Galerkin residual
    int max_newton_iters = 25;
    double fd_eps = 1e-6;
    double s_step = 5e-3;
    double s_max = 0.05;
    int verify_grid = 256;
    double verify_tol = 1e-7;
    QuadratureSpec quad;
    int threads = 0;

    void validate(int k) const;
};

struct BranchPoint
{
    int k = 1;
    double s = 0.0;
    double lambda = 0.0;
    PeriodicProfile mu;
    double residual_galerkin = 0.0;
    double residual_grid_sup = 0.0;
    double mode0_residual = 0.0;
    double min_phi = 0.0;
    int newton_iters = 0;
    double jacobian_condition = 0.0;
    bool verified = false;

    PeriodicProfile profile() const;
};

struct GalerkinResidual
{
    std::vector<double> modes; // <H + 2 pi, cos(l.)>/pi, l = 1..N
    double mode0 = 0.0;        // mean of H + 2 pi
    double sup() const;
};

// phi = lambda + s (cos(k.) + mu); mu_coeffs[l] for l = 0..N, entries 0 and k must vanish
GalerkinResidual residual_galerkin(double lambda, const std::vector<double>& mu_coeffs, int k, double s,
                                   int N, const QuadratureSpec& quad = {}, int threads = 0);

// projections of H(phi) + 2 pi onto cos(l.), l = 1..N, from the DCT-I grid on [0, pi]
GalerkinResidual galerkin_projection(const PeriodicProfile& phi, int N, const QuadratureSpec& quad = {},
                                     int threads = 0);

// d <H(phi) + 2 pi, cos(l.)>/pi / d a_m, l, m = 1..N, by central differences
Eigen::MatrixXd galerkin_jacobian(const PeriodicProfile& phi, int N, double fd_eps = 1e-6,
                                  const QuadratureSpec& quad = {}, int threads = 0);

// LU of the reduced Jacobian; reused between Newton steps and continuation points
struct NewtonCache
{
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double condition = 0.0;
    bool valid = false;
    int N = 0, k = 0;
};

struct NewtonGuess
{
    double lambda = 0.0;
    PeriodicProfile mu;
};

// Solves modes 1..N of H(phi) + 2 pi = 0 for lambda and mu_l (l != k).
// At s = 0 returns the bifurcation point (lambda*/k, 0).
BranchPoint newton_solve(int k, double s, const NewtonGuess& initial, const SolverConfig& cfg = {},
                         NewtonCache* cache = nullptr);

struct VerificationReport
{
    double sup = 0.0;
    double mode0 = 0.0;
    double min_phi = 0.0;
    double orthogonality = 0.0; // |<mu, cos(k.)>|
    bool verified = false;
};

VerificationReport verify_branch_point(const BranchPoint& point, int dense_grid = 256,
                                       const QuadratureSpec& quad = {}, double tol = 1e-7, int threads = 0);

struct Branch
{
    int k = 1;
    std::vector<BranchPoint> points; // increasing s
    bool stopped_early = false;
    std::string reason;
    std::vector<std::string> warnings;
};

Branch trace_branch(int k, const SolverConfig& cfg = {});

// lambda(0) from the two smallest |s| > 0 points of each sign, extrapolated in s^2
double extrapolate_lambda0(const Branch& b);

} // namespace exdom
