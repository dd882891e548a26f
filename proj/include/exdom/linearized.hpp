#pragma once

#include "exdom/kernels.hpp"
#include "exdom/operator_eval.hpp"
#include "exdom/profile.hpp"

#include <vector>

namespace exdom {

// Linearization of H + 2 pi at the constant profile lambda:
//   L v(s) = int_0^inf (2 v(s) - v(s - lambda t) - v(s + lambda t)) G(t) dt
//          + int_0^inf (v(s - lambda t) + v(s + lambda t)) F(t) dt - 2 pi v(s)
// and D H(lambda) = -L / lambda.
struct LinearizedApplyConfig
{
    KernelEvalConfig pv_quad;
    double fd_step = 1e-5;   // relative to lambda
    QuadratureSpec op_quad;  // used by eigen_check_fd
    int threads = 0;

    void validate() const;
};

// L v at the given points; v must have zero mean
std::vector<double> apply_L_at(double lambda, const PeriodicProfile& v, const std::vector<double>& s,
                               const LinearizedApplyConfig& cfg = {});

// L v sampled on 4N+4 points and returned as a profile of the same length
PeriodicProfile apply_L(double lambda, const PeriodicProfile& v, const LinearizedApplyConfig& cfg = {});

struct FdEigenEstimate
{
    double value = 0.0;      // cos(k.) component of D H(lambda) cos(k.), central difference at h
    double value_2h = 0.0;   // same at 2h
    double mode0 = 0.0;      // mean of the derivative
    double max_offmode = 0.0; // largest other cosine component
};

FdEigenEstimate eigen_check_fd_full(double lambda, int k, const LinearizedApplyConfig& cfg = {});

inline double eigen_check_fd(double lambda, int k, const LinearizedApplyConfig& cfg = {})
{
    return eigen_check_fd_full(lambda, k, cfg).value;
}

// Inverse of L_lambda on modes other than 0 and kernel_mode:
// w_l = h_l / V(lambda l).
PeriodicProfile spectral_solve(double lambda, const PeriodicProfile& h, int kernel_mode = 1);

} // namespace exdom
