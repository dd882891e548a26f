#include "exdom/solver.hpp"
#include "exdom/dispersion.hpp"
#include "exdom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exdom {

namespace {

constexpr double pi = std::numbers::pi;

double sup_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

PeriodicProfile branch_profile(double lambda, const std::vector<double>& mu, int k, double s)
{
    std::vector<double> a(mu.size(), 0.0);
    for (std::size_t l = 0; l < a.size(); ++l)
        a[l] = s * mu[l];
    a[0] += lambda;
    a[k] += s;
    return PeriodicProfile(std::move(a));
}

// unknowns: x[0] = lambda, x[i] = mu_{free[i-1]}
std::vector<int> free_modes(int N, int k)
{
    std::vector<int> f;
    for (int l = 1; l <= N; ++l)
        if (l != k)
            f.push_back(l);
    return f;
}

struct System
{
    int k, N;
    double s;
    const SolverConfig& cfg;
    std::vector<int> modes = free_modes(N, k);

    std::vector<double> mu_of(const Eigen::VectorXd& x) const
    {
        std::vector<double> mu(N + 1, 0.0);
        for (std::size_t i = 0; i < modes.size(); ++i)
            mu[modes[i]] = x[i + 1];
        return mu;
    }
    PeriodicProfile phi(const Eigen::VectorXd& x) const { return branch_profile(x[0], mu_of(x), k, s); }
    bool admissible(const Eigen::VectorXd& x) const { return x[0] > 0.0 && phi(x).is_positive(); }
    GalerkinResidual residual(const Eigen::VectorXd& x) const
    {
        return residual_galerkin(x[0], mu_of(x), k, s, N, cfg.quad, cfg.threads);
    }
    Eigen::VectorXd scaled(const GalerkinResidual& r) const
    {
        Eigen::VectorXd F(N);
        for (int l = 0; l < N; ++l)
            F[l] = r.modes[l] / s;
        return F;
    }
    // forward differences; each mu column moves phi by fd_eps
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const Eigen::VectorXd& F) const
    {
        Eigen::MatrixXd J(N, N);
        const double d = cfg.fd_eps / std::abs(s);
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXd xp = x;
            const double dj = j == 0 ? std::min(d, 1e-3) * x[0] : d;
            xp[j] += dj;
            J.col(j) = (scaled(residual(xp)) - F) / dj;
        }
        return J;
    }
};

void factor(NewtonCache& c, const Eigen::MatrixXd& J, int N, int k)
{
    c.lu.compute(J);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    c.condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
    if (!std::isfinite(c.condition))
        throw ConvergenceError("newton_solve: singular Jacobian");
    c.valid = true;
    c.N = N;
    c.k = k;
}

} // namespace

void SolverConfig::validate(int k) const
{
    if (k < 1)
        throw DomainError("solver: k must be >= 1");
    if (N < 2 * k)
        throw DomainError("solver: N must be at least 2k");
    if (!(newton_tol > 0.0) || !(fd_eps > 0.0) || !(s_step > 0.0) || !(s_max >= 0.0) || !(verify_tol > 0.0))
        throw DomainError("solver: tolerances and steps must be positive");
    if (max_newton_iters < 1 || verify_grid < 2)
        throw DomainError("solver: iteration and grid counts must be positive");
    quad.validate();
}

PeriodicProfile BranchPoint::profile() const
{
    return branch_profile(lambda, mu.resized(std::max(mu.N(), k)).coefficients(), k, s);
}

double GalerkinResidual::sup() const { return sup_abs(modes); }

GalerkinResidual galerkin_projection(const PeriodicProfile& phi, int N, const QuadratureSpec& quad, int threads)
{
    if (N < 1)
        throw DomainError("galerkin_projection: N must be >= 1");
    phi.require_positive("galerkin_projection");
    const int M = 2 * N;
    std::vector<double> s(M + 1);
    for (int j = 0; j <= M; ++j)
        s[j] = pi * j / M;
    const auto r = residual_at(phi, s, quad, threads);
    GalerkinResidual out;
    out.modes.assign(N, 0.0);
    double mean = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double w = (j == 0 || j == M) ? 0.5 : 1.0;
        mean += w * r[j];
        for (int l = 1; l <= N; ++l)
            out.modes[l - 1] += w * r[j] * std::cos(l * s[j]);
    }
    out.mode0 = mean / M;
    for (double& c : out.modes)
        c *= 2.0 / M;
    return out;
}

GalerkinResidual residual_galerkin(double lambda, const std::vector<double>& mu_coeffs, int k, double s, int N,
                                   const QuadratureSpec& quad, int threads)
{
    if (k < 1 || N < k)
        throw DomainError("residual_galerkin: need 1 <= k <= N");
    if (int(mu_coeffs.size()) > N + 1)
        throw DomainError("residual_galerkin: more coefficients than modes");
    std::vector<double> mu(N + 1, 0.0);
    std::copy(mu_coeffs.begin(), mu_coeffs.end(), mu.begin());
    if (mu[0] != 0.0 || mu[k] != 0.0)
        throw DomainError("residual_galerkin: mu must have no mean and no cos(k.) component");
    return galerkin_projection(branch_profile(lambda, mu, k, s), N, quad, threads);
}

Eigen::MatrixXd galerkin_jacobian(const PeriodicProfile& phi, int N, double fd_eps, const QuadratureSpec& quad,
                                  int threads)
{
    if (!(fd_eps > 0.0))
        throw DomainError("galerkin_jacobian: fd_eps must be positive");
    PeriodicProfile base = phi.resized(std::max(phi.N(), N));
    Eigen::MatrixXd J(N, N);
    for (int m = 1; m <= N; ++m) {
        PeriodicProfile p = base, q = base;
        p.set_coeff(m, base.coeff(m) + fd_eps);
        q.set_coeff(m, base.coeff(m) - fd_eps);
        const auto rp = galerkin_projection(p, N, quad, threads);
        const auto rm = galerkin_projection(q, N, quad, threads);
        for (int l = 1; l <= N; ++l)
            J(l - 1, m - 1) = (rp.modes[l - 1] - rm.modes[l - 1]) / (2.0 * fd_eps);
    }
    return J;
}

BranchPoint newton_solve(int k, double s, const NewtonGuess& initial, const SolverConfig& cfg, NewtonCache* cache)
{
    cfg.validate(k);
    const int N = cfg.N;
    BranchPoint pt;
    pt.k = k;
    pt.s = s;
    pt.mu = PeriodicProfile::constant(0.0, N);

    if (s == 0.0) {
        pt.lambda = find_lambda_star().lambda_star / k;
        pt.min_phi = pt.lambda;
        return pt;
    }

    System sys{k, N, s, cfg};
    Eigen::VectorXd x(N);
    x[0] = initial.lambda;
    for (std::size_t i = 0; i < sys.modes.size(); ++i)
        x[i + 1] = initial.mu.coeff(sys.modes[i]);
    if (!sys.admissible(x))
        throw DomainError("newton_solve: initial profile is not positive");

    NewtonCache local;
    NewtonCache& c = cache ? *cache : local;
    GalerkinResidual R = sys.residual(x);
    Eigen::VectorXd F = sys.scaled(R);
    bool fresh = false;
    if (!c.valid || c.N != N || c.k != k) {
        factor(c, sys.jacobian(x, F), N, k);
        fresh = true;
    }

    int it = 0;
    while (R.sup() > cfg.newton_tol) {
        if (it >= cfg.max_newton_iters)
            throw ConvergenceError("newton_solve: no convergence within the iteration limit");
        ++it;
        const Eigen::VectorXd dx = c.lu.solve(F);
        double t = 1.0;
        Eigen::VectorXd xn = x - dx;
        while (!sys.admissible(xn)) {
            t *= 0.5;
            if (t < 1e-3)
                throw ConvergenceError("newton_solve: profile loses positivity");
            xn = x - t * dx;
        }
        const GalerkinResidual Rn = sys.residual(xn);
        if (Rn.sup() < R.sup()) {
            const bool slow = Rn.sup() > 0.25 * R.sup();
            x = xn;
            R = Rn;
            F = sys.scaled(R);
            fresh = false;
            if (slow && R.sup() > cfg.newton_tol) {
                factor(c, sys.jacobian(x, F), N, k);
                fresh = true;
            }
        } else {
            if (fresh)
                throw ConvergenceError("newton_solve: residual does not decrease");
            factor(c, sys.jacobian(x, F), N, k);
            fresh = true;
        }
    }

    pt.lambda = x[0];
    pt.mu = PeriodicProfile(sys.mu_of(x));
    pt.residual_galerkin = R.sup();
    pt.mode0_residual = R.mode0;
    pt.min_phi = sys.phi(x).min_on_grid();
    pt.newton_iters = it;
    pt.jacobian_condition = c.condition;
    return pt;
}

VerificationReport verify_branch_point(const BranchPoint& point, int dense_grid, const QuadratureSpec& quad,
                                       double tol, int threads)
{
    VerificationReport rep;
    rep.orthogonality = std::abs(point.mu.coeff(point.k));
    const PeriodicProfile phi = point.profile();
    rep.min_phi = phi.min_on_grid();
    if (!(rep.min_phi > 0.0) || dense_grid < 2) {
        rep.sup = INFINITY;
        return rep;
    }
    std::vector<double> s(dense_grid);
    for (int j = 0; j < dense_grid; ++j)
        s[j] = pi * j / (dense_grid - 1);
    std::vector<double> r;
    try {
        r = residual_at(phi, s, quad.refined(), threads);
    } catch (const std::exception&) {
        rep.sup = INFINITY;
        return rep;
    }
    double mean = 0.0;
    for (int j = 0; j < dense_grid; ++j) {
        rep.sup = std::max(rep.sup, std::abs(r[j]));
        mean += (j == 0 || j == dense_grid - 1 ? 0.5 : 1.0) * r[j];
    }
    rep.mode0 = mean / (dense_grid - 1);
    rep.verified = std::isfinite(rep.sup) && rep.sup < tol && rep.orthogonality == 0.0;
    return rep;
}

Branch trace_branch(int k, const SolverConfig& cfg)
{
    cfg.validate(k);
    Branch b;
    b.k = k;

    auto accept = [&](BranchPoint& p) {
        const auto rep = verify_branch_point(p, cfg.verify_grid, cfg.quad, cfg.verify_tol, cfg.threads);
        p.residual_grid_sup = rep.sup;
        p.mode0_residual = rep.mode0;
        p.verified = rep.verified;
        if (std::abs(rep.mode0) > 1e-6)
            b.warnings.push_back("mode-0 residual " + std::to_string(rep.mode0) + " at s = " + std::to_string(p.s));
        return rep.verified;
    };

    BranchPoint origin = newton_solve(k, 0.0, {}, cfg);
    if (!accept(origin)) {
        b.stopped_early = true;
        b.reason = "bifurcation point failed verification";
        b.points.push_back(origin);
        return b;
    }

    std::vector<BranchPoint> sides[2];
    NewtonCache cache;
    for (int side = 0; side < 2; ++side) {
        const double sign = side == 0 ? 1.0 : -1.0;
        std::vector<BranchPoint>& out = sides[side];
        const BranchPoint* prev = nullptr;
        const BranchPoint* last = &origin;
        double h = cfg.s_step;
        while (std::abs(last->s) < cfg.s_max * (1.0 - 1e-12)) {
            const double s_new = sign * std::min(std::abs(last->s) + h, cfg.s_max);
            NewtonGuess g{last->lambda, last->mu};
            if (prev) {
                const double r = (s_new - last->s) / (last->s - prev->s);
                g.lambda = last->lambda + r * (last->lambda - prev->lambda);
                g.mu = last->mu + r * (last->mu - prev->mu);
            }
            BranchPoint p;
            std::string failure;
            try {
                p = newton_solve(k, s_new, g, cfg, &cache);
            } catch (const std::exception& e) {
                failure = e.what();
            }
            if (failure.empty() && !accept(p))
                failure = "verification failed at s = " + std::to_string(s_new) +
                          " (sup " + std::to_string(p.residual_grid_sup) + ")";
            if (!failure.empty()) {
                cache.valid = false;
                if (h > cfg.s_step / 8.0) {
                    h *= 0.5;
                    continue;
                }
                b.stopped_early = true;
                if (!b.reason.empty())
                    b.reason += "; ";
                b.reason += (sign > 0 ? "s > 0: " : "s < 0: ") + failure;
                break;
            }
            out.push_back(p);
            prev = out.size() >= 2 ? &out[out.size() - 2] : &origin;
            last = &out.back();
        }
    }

    for (auto it = sides[1].rbegin(); it != sides[1].rend(); ++it)
        b.points.push_back(*it);
    b.points.push_back(origin);
    for (auto& p : sides[0])
        b.points.push_back(p);
    return b;
}

double extrapolate_lambda0(const Branch& b)
{
    // average the two sides at matching |s|, then Richardson in s^2
    std::vector<std::pair<double, double>> pos, neg;
    for (const auto& p : b.points) {
        if (p.s > 0)
            pos.push_back({p.s, p.lambda});
        else if (p.s < 0)
            neg.push_back({-p.s, p.lambda});
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    if (pos.size() < 2)
        throw DomainError("extrapolate_lambda0: need two points with s > 0");
    double s1 = pos[0].first, s2 = pos[1].first;
    double l1 = pos[0].second, l2 = pos[1].second;
    if (neg.size() >= 2 && neg[0].first == s1 && neg[1].first == s2) {
        l1 = 0.5 * (l1 + neg[0].second);
        l2 = 0.5 * (l2 + neg[1].second);
    }
    return (s2 * s2 * l1 - s1 * s1 * l2) / (s2 * s2 - s1 * s1);
}

} // namespace exdom
