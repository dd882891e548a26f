#include "exdom/linearized.hpp"
#include "exdom/dispersion.hpp"
#include "exdom/errors.hpp"
#include "exdom/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exdom {

namespace {

constexpr double pi = std::numbers::pi;

void check_lambda(double lambda, const char* who)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError(std::string(who) + ": lambda must be positive");
}

double max_abs(const std::vector<double>& a)
{
    double m = 0.0;
    for (double x : a)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

void LinearizedApplyConfig::validate() const
{
    if (!(fd_step > 0.0) || fd_step > 0.1)
        throw DomainError("LinearizedApplyConfig: fd_step must lie in (0, 0.1]");
    if (pv_quad.nodes_per_panel < 4)
        throw DomainError("LinearizedApplyConfig: too few kernel nodes");
    op_quad.validate();
}

std::vector<double> apply_L_at(double lambda, const PeriodicProfile& v, const std::vector<double>& s,
                               const LinearizedApplyConfig& cfg)
{
    check_lambda(lambda, "apply_L");
    cfg.validate();
    const auto& a = v.coefficients();
    const int N = v.N();
    if (std::abs(a[0]) > 1e-12 * (1.0 + max_abs(a)))
        throw DomainError("apply_L: direction must have zero mean");

    const KernelTable tb(lambda * std::max(N, 1), cfg.pv_quad);
    std::vector<double> tails(N + 1, 0.0);
    for (int l = 1; l <= N; ++l)
        tails[l] = tb.tail(lambda * l);

    std::vector<double> out(s.size());
    parallel_for(
        int(s.size()),
        [&](int i) {
            const double si = s[i];
            double acc = 0.0;
            for (std::size_t j = 0; j < tb.t.size(); ++j) {
                const double t = tb.t[j], x = lambda * t;
                // v(s-x) + v(s+x) and the second difference 2v(s) - v(s-x) - v(s+x),
                // the latter as sum a_l cos(l s) 4 sin^2(l x / 2)
                const double vm = v.eval(si - x), vp = v.eval(si + x);
                double d2;
                if (x < 0.5) {
                    d2 = 0.0;
                    for (int l = 1; l <= N; ++l) {
                        if (a[l] == 0.0)
                            continue;
                        const double h = std::sin(0.5 * l * x);
                        d2 += a[l] * std::cos(l * si) * 4.0 * h * h;
                    }
                } else {
                    d2 = 2.0 * v.eval(si) - vm - vp;
                }
                acc += tb.w[j] * (d2 * 4.0 * tb.g[j] / (t * t) + (vm + vp) * tb.F[j]);
            }
            double tail = 0.0;
            for (int l = 1; l <= N; ++l)
                tail += a[l] * std::cos(l * si) * 2.0 * tails[l];
            out[i] = acc + tail - 2.0 * pi * v.eval(si);
        },
        cfg.threads);
    return out;
}

PeriodicProfile apply_L(double lambda, const PeriodicProfile& v, const LinearizedApplyConfig& cfg)
{
    const int M = 4 * v.N() + 4;
    std::vector<double> s(M);
    for (int j = 0; j < M; ++j)
        s[j] = 2.0 * pi * j / M;
    return PeriodicProfile::from_samples(apply_L_at(lambda, v, s, cfg), v.N());
}

FdEigenEstimate eigen_check_fd_full(double lambda, int k, const LinearizedApplyConfig& cfg)
{
    check_lambda(lambda, "eigen_check_fd");
    if (k < 1)
        throw DomainError("eigen_check_fd: k must be >= 1");
    cfg.validate();

    // H is even in s, so DCT-I points on [0, pi] suffice
    const int M = 2 * k + 2;
    std::vector<double> s(M + 1);
    for (int j = 0; j <= M; ++j)
        s[j] = pi * j / M;

    auto derivative = [&](double h) {
        const auto rp = residual_at(PeriodicProfile::cosine(lambda, k, h), s, cfg.op_quad, cfg.threads);
        const auto rm = residual_at(PeriodicProfile::cosine(lambda, k, -h), s, cfg.op_quad, cfg.threads);
        std::vector<double> d(M + 1);
        for (int j = 0; j <= M; ++j)
            d[j] = (rp[j] - rm[j]) / (2.0 * h);
        return d;
    };
    // cos(l.) coefficient from DCT-I samples
    auto mode = [&](const std::vector<double>& d, int l) {
        double acc = 0.0;
        for (int j = 0; j <= M; ++j) {
            const double wj = (j == 0 || j == M) ? 0.5 : 1.0;
            acc += wj * d[j] * std::cos(l * s[j]);
        }
        const double c = (l == 0 || l == M) ? 1.0 / M : 2.0 / M;
        return c * acc;
    };

    const double h = cfg.fd_step * lambda;
    const auto d1 = derivative(h);
    const auto d2 = derivative(2.0 * h);
    FdEigenEstimate r;
    r.value = mode(d1, k);
    r.value_2h = mode(d2, k);
    r.mode0 = mode(d1, 0);
    for (int l = 1; l < M; ++l)
        if (l != k)
            r.max_offmode = std::max(r.max_offmode, std::abs(mode(d1, l)));
    return r;
}

PeriodicProfile spectral_solve(double lambda, const PeriodicProfile& h, int kernel_mode)
{
    check_lambda(lambda, "spectral_solve");
    const auto& a = h.coefficients();
    const double scale = 1e-10 * (1.0 + max_abs(a));
    if (std::abs(a[0]) > scale || std::abs(h.coeff(kernel_mode)) > scale)
        throw DomainError("spectral_solve: right-hand side has a mean or kernel-mode component");
    std::vector<double> w(a.size(), 0.0);
    for (int l = 1; l <= h.N(); ++l) {
        if (l == kernel_mode || a[l] == 0.0)
            continue;
        const double V = dispersion_V(lambda * l);
        if (std::abs(V) < 1e-12)
            throw NumericalError("spectral_solve: dispersion value vanishes off the kernel mode");
        w[l] = a[l] / V;
    }
    return PeriodicProfile(std::move(w));
}

} // namespace exdom
