#include "exdom/operator_eval.hpp"
#include "exdom/errors.hpp"
#include "exdom/parallel.hpp"
#include "exdom/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace exdom {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = 0.5 * pi;

void positivity_violation(const char* who)
{
    throw DomainError(std::string(who) + ": profile is not positive at a quadrature node");
}

// ---------------------------------------------------------------------------
// regularized evaluator

struct Center
{
    int N = 0;
    double a0 = 0.0;
    std::vector<double> cs, sn; // a_l cos(l s), a_l sin(l s)
    double f = 0.0, d1 = 0.0;   // phi(s), phi'(s)
};

Center make_center(const PeriodicProfile& phi, double s)
{
    Center c;
    c.N = phi.N();
    c.a0 = phi.coeff(0);
    c.cs.resize(c.N + 1);
    c.sn.resize(c.N + 1);
    for (int l = 1; l <= c.N; ++l) {
        c.cs[l] = phi.coeff(l) * std::cos(l * s);
        c.sn[l] = phi.coeff(l) * std::sin(l * s);
    }
    double d2;
    phi.eval_all(s, c.f, c.d1, d2);
    return c;
}

// Quantities at offsets +-xi, xi >= 0.
struct Pair
{
    double xi = 0.0;
    double Le = 0.0, Lo = 0.0; // 2phi(s) - phi(s-xi) - phi(s+xi), phi(s+xi) - phi(s-xi) - 2 xi phi'(s)
    double fm = 0.0, fp = 0.0; // phi(s -+ xi)
    double dm = 0.0, dp = 0.0; // phi(s) - phi(s -+ xi)
    double Am = 0.0, Ap = 0.0; // phi sqrt(1 + phi'^2) at s -+ xi
};

Pair make_pair(const Center& c, double xi)
{
    Pair q;
    q.xi = xi;
    const double h = 0.5 * xi;
    const double c1 = std::cos(h), s1 = std::sin(h);
    double ch = 1.0, sh = 0.0;
    double le = 0.0, lo = 0.0, P = 0.0, Q = 0.0, Dc = 0.0, Ds = 0.0;
    for (int l = 1; l <= c.N; ++l) {
        const double t = ch * c1 - sh * s1;
        sh = sh * c1 + ch * s1;
        ch = t;
        const double cl = 1.0 - 2.0 * sh * sh; // cos(l xi)
        const double sl = 2.0 * sh * ch;       // sin(l xi)
        const double x = l * xi;
        const double smx = std::abs(x) > 0.5 ? sl - x : sin_minus_x(x);
        le += c.cs[l] * 4.0 * sh * sh;
        lo -= 2.0 * c.sn[l] * smx;
        P += c.cs[l] * cl;
        Q += c.sn[l] * sl;
        Dc += l * (c.sn[l] * cl);
        Ds += l * (c.cs[l] * sl);
    }
    q.Le = le;
    q.Lo = lo;
    q.fm = c.a0 + P + Q;
    q.fp = c.a0 + P - Q;
    q.dm = 0.5 * (le + lo) + xi * c.d1;
    q.dp = 0.5 * (le - lo) - xi * c.d1;
    const double gm = -(Dc - Ds), gp = -(Dc + Ds); // phi'(s -+ xi)
    q.Am = q.fm * std::sqrt(1.0 + gm * gm);
    q.Ap = q.fp * std::sqrt(1.0 + gp * gp);
    if (!(q.fm > 0.0 && q.fp > 0.0))
        positivity_violation("h_regularized");
    return q;
}

// folded integrand at (xi, p^2), xi in [0, pi]
inline double folded(const Center& c, const Pair& q, double p2)
{
    const double xi2 = q.xi * q.xi;
    const double Dm = xi2 + q.dm * q.dm + p2 * c.f * q.fm;
    const double Dp = xi2 + q.dp * q.dp + p2 * c.f * q.fp;
    const double Km = q.Am / (Dm * std::sqrt(Dm));
    const double Kp = q.Ap / (Dp * std::sqrt(Dp));
    return 0.5 * (q.Le * (Km + Kp) + q.Lo * (Km - Kp)) + 0.5 * p2 * (q.fm * Km + q.fp * Kp);
}

inline double p2_of(double th)
{
    const double s = std::sin(th);
    return 4.0 * s * s;
}

// corner boxes: isotropic in the local metric xi^2 (1 + phi'^2) + theta^2 (2 phi)^2
void corner_box(double f, double d1, double theta_max, double scale, double& hx, double& ht)
{
    const double g = std::sqrt(1.0 + d1 * d1);
    ht = std::min(theta_max, pi * g / (scale * f));
    hx = std::min(pi, scale * f * ht / g);
}

// panels [h, 2h], [2h, 4h], ... up to b
std::vector<std::array<double, 2>> doubling_panels(double h, double b)
{
    std::vector<std::array<double, 2>> out;
    double lo = h;
    while (lo < b * (1.0 - 1e-14)) {
        double hi = std::min(2.0 * lo, b);
        if (b - hi < 0.5 * (hi - lo))
            hi = b;
        out.push_back({lo, hi});
        lo = hi;
    }
    return out;
}

double near_regularized(const Center& c, const QuadratureSpec& q)
{
    const int n = q.near_nodes;
    const GaussLegendre& g = gauss_legendre(n);
    double hx, ht;
    corner_box(c.f, c.d1, half_pi, 2.0, hx, ht);

    double total = 0.0;
    // Duffy: triangle xi >= theta-scaled and its mirror
    for (int i = 0; i < n; ++i) {
        const double a = 0.5 * (1.0 + g.x[i]), wa = 0.5 * g.w[i];
        const Pair pa = make_pair(c, hx * a);
        double sa = 0.0, sb = 0.0;
        for (int j = 0; j < n; ++j) {
            const double b = 0.5 * (1.0 + g.x[j]), wb = 0.5 * g.w[j];
            sa += wb * folded(c, pa, p2_of(ht * a * b));
            const Pair pb = make_pair(c, hx * a * b);
            sb += wb * folded(c, pb, p2_of(ht * a));
        }
        total += wa * a * (sa + sb);
    }
    total *= hx * ht;

    auto tensor = [&](double x0, double x1, double t0, double t1) {
        const double cx = 0.5 * (x0 + x1), rx = 0.5 * (x1 - x0);
        const double ct = 0.5 * (t0 + t1), rt = 0.5 * (t1 - t0);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const Pair p = make_pair(c, cx + rx * g.x[i]);
            double inner = 0.0;
            for (int j = 0; j < n; ++j)
                inner += g.w[j] * folded(c, p, p2_of(ct + rt * g.x[j]));
            s += g.w[i] * inner;
        }
        return s * rx * rt;
    };

    const auto xpan = doubling_panels(hx, pi);
    for (const auto& px : xpan)
        total += tensor(px[0], px[1], 0.0, ht);
    if (ht < half_pi) {
        std::vector<std::array<double, 2>> xall{{0.0, hx}};
        xall.insert(xall.end(), xpan.begin(), xpan.end());
        for (const auto& pt : doubling_panels(ht, half_pi))
            for (const auto& px : xall)
                total += tensor(px[0], px[1], pt[0], pt[1]);
    }
    return total;
}

// sum_{j > J} f(x + 2 pi j), f(y) = (al + be y) / (y^2 + c)^{3/2}
inline double lattice_tail(double al, double be, double c, double x, int J)
{
    const double h = 2.0 * pi;
    const double Y = x + h * (J + 0.5);
    const double w = Y * Y + c;
    const double r = std::sqrt(w);
    const double integral = al / (r * (r + Y)) + be / r;
    const double w3 = w * r;          // w^{3/2}
    const double w5 = w3 * w, w7 = w5 * w, w9 = w7 * w;
    const double u1 = -3.0 * Y / w5;  // derivatives of w^{-3/2}
    const double u2 = -3.0 / w5 + 15.0 * Y * Y / w7;
    const double u3 = 45.0 * Y / w7 - 105.0 * Y * Y * Y / w9;
    const double f1 = al * u1 + be * (1.0 / w3 + Y * u1);
    const double f3 = al * u3 + be * (3.0 * u2 + Y * u3);
    return integral / h + h / 24.0 * f1 - 7.0 * h * h * h / 5760.0 * f3;
}

double far_regularized(const Center& c, const QuadratureSpec& q)
{
    const GaussLegendre& gx = gauss_legendre(q.far_x_nodes);
    const GaussLegendre& gt = gauss_legendre(q.far_theta_nodes);
    const int J = q.lattice_terms;
    const double h = 2.0 * pi;

    std::vector<double> p2(q.far_theta_nodes), wt(q.far_theta_nodes);
    for (int k = 0; k < q.far_theta_nodes; ++k) {
        p2[k] = p2_of(half_pi * 0.5 * (1.0 + gt.x[k]));
        wt[k] = half_pi * 0.5 * gt.w[k];
    }

    auto column = [&](double x, double fx, double dx, double A) {
        // int d theta sum_{j != 0} F(x + 2 pi j)
        const double be = -c.d1 * A;
        double s = 0.0;
        for (int k = 0; k < q.far_theta_nodes; ++k) {
            const double al = (dx + 0.5 * p2[k] * fx) * A;
            const double cc = dx * dx + p2[k] * c.f * fx;
            double acc = 0.0;
            for (int j = 1; j <= J; ++j) {
                const double yp = x + h * j, ym = x - h * j;
                const double wp = yp * yp + cc, wm = ym * ym + cc;
                acc += (al + be * yp) / (wp * std::sqrt(wp)) + (al + be * ym) / (wm * std::sqrt(wm));
            }
            acc += lattice_tail(al, be, cc, x, J) + lattice_tail(al, -be, cc, -x, J);
            s += wt[k] * acc;
        }
        return s;
    };

    const int n = q.far_x_nodes;
    double total = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // symmetric nodes share one evaluation of the profile
        const double x = pi * std::abs(gx.x[i]);
        const double w = pi * gx.w[i];
        const Pair pr = make_pair(c, x);
        // offset +x is phi(s - x) = fm; offset -x is phi(s + x) = fp
        if (x == 0.0) {
            total += w * column(0.0, pr.fm, pr.dm, pr.Am);
        } else {
            total += w * column(x, pr.fm, pr.dm, pr.Am);
            total += w * column(-x, pr.fp, pr.dp, pr.Ap);
        }
    }
    return total;
}

double hcal_regularized(const Center& c, const QuadratureSpec& q)
{
    return 4.0 * (near_regularized(c, q) + far_regularized(c, q));
}

// ---------------------------------------------------------------------------
// direct evaluator

struct DirectCenter
{
    const PeriodicProfile* phi;
    double s, f, d1;
};

// profile values at s - t
struct Offset
{
    double t, fm, A;
};

inline Offset offset(const DirectCenter& c, double t)
{
    Offset o;
    o.t = t;
    o.fm = c.phi->eval(c.s - t);
    const double dm = c.phi->eval_deriv(c.s - t);
    o.A = o.fm * std::sqrt(1.0 + dm * dm);
    if (!(o.fm > 0.0))
        positivity_violation("h_direct");
    return o;
}

// raw integrand at (t, p^2)
inline double raw(const DirectCenter& c, const Offset& o, double p2)
{
    const double diff = c.f - o.fm;
    const double D = o.t * o.t + diff * diff + c.f * o.fm * p2;
    const double num = (diff - o.t * c.d1) * o.A + 0.5 * o.fm * p2 * o.A;
    return num / (D * std::sqrt(D));
}

inline double p2_half(double th)
{
    const double s = std::sin(0.5 * th);
    return 4.0 * s * s;
}

// t in [0, pi] (sign = +1) or [-pi, 0] (sign = -1); theta in [0, pi]
double near_direct(const DirectCenter& c, double sign, int n)
{
    const GaussLegendre& g = gauss_legendre(n);
    double hx, ht;
    corner_box(c.f, c.d1, pi, 1.0, hx, ht);

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = 0.5 * (1.0 + g.x[i]), wa = 0.5 * g.w[i];
        const Offset oa = offset(c, sign * hx * a);
        double sa = 0.0, sb = 0.0;
        for (int j = 0; j < n; ++j) {
            const double b = 0.5 * (1.0 + g.x[j]), wb = 0.5 * g.w[j];
            sa += wb * raw(c, oa, p2_half(ht * a * b));
            const Offset ob = offset(c, sign * hx * a * b);
            sb += wb * raw(c, ob, p2_half(ht * a));
        }
        total += wa * a * (sa + sb);
    }
    total *= hx * ht;

    auto tensor = [&](double x0, double x1, double t0, double t1) {
        const double cx = 0.5 * (x0 + x1), rx = 0.5 * (x1 - x0);
        const double ct = 0.5 * (t0 + t1), rt = 0.5 * (t1 - t0);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const Offset o = offset(c, sign * (cx + rx * g.x[i]));
            double inner = 0.0;
            for (int j = 0; j < n; ++j)
                inner += g.w[j] * raw(c, o, p2_half(ct + rt * g.x[j]));
            s += g.w[i] * inner;
        }
        return s * rx * rt;
    };
    const auto xpan = doubling_panels(hx, pi);
    for (const auto& px : xpan)
        total += tensor(px[0], px[1], 0.0, ht);
    if (ht < pi) {
        std::vector<std::array<double, 2>> xall{{0.0, hx}};
        xall.insert(xall.end(), xpan.begin(), xpan.end());
        for (const auto& pt : doubling_panels(ht, pi))
            for (const auto& px : xall)
                total += tensor(px[0], px[1], pt[0], pt[1]);
    }
    return total;
}

// contribution of periods +-j: t in [2 pi j - pi, 2 pi j + pi] and its mirror
double period_direct(const DirectCenter& c, int j, int n, int nt)
{
    const GaussLegendre& g = gauss_legendre(n);
    const GaussLegendre& gt = gauss_legendre(nt);
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        for (int i = 0; i < n; ++i) {
            const double t = sign * (2.0 * pi * j + pi * g.x[i]);
            const Offset o = offset(c, t);
            double inner = 0.0;
            for (int k = 0; k < nt; ++k)
                inner += gt.w[k] * raw(c, o, p2_half(half_pi * (1.0 + gt.x[k])));
            total += pi * g.w[i] * half_pi * inner;
        }
    }
    return total;
}

// sum_{j > J} j^{-m}
double zeta_tail(int m, int J)
{
    const double x = J;
    return std::pow(x, 1 - m) / (m - 1) - 0.5 * std::pow(x, -m) + m / 12.0 * std::pow(x, -m - 1) -
           m * (m + 1.0) * (m + 2.0) / 720.0 * std::pow(x, -m - 3);
}

double hcal_direct(const DirectCenter& c, const QuadratureSpec& q)
{
    const int n = q.direct_nodes;
    double total = near_direct(c, 1.0, n) + near_direct(c, -1.0, n);
    const int J = q.direct_periods;
    std::array<double, 3> last{};
    for (int j = 1; j <= J; ++j) {
        const double pj = period_direct(c, j, q.direct_period_nodes, q.far_theta_nodes - 4);
        total += pj;
        if (j > J - 3)
            last[j - (J - 2)] = pj;
    }
    // P_j ~ a j^-3 + b j^-5 + d j^-7 from the last three periods
    double M[3][4];
    for (int r = 0; r < 3; ++r) {
        const double j = J - 2 + r;
        M[r][0] = std::pow(j, -3);
        M[r][1] = std::pow(j, -5);
        M[r][2] = std::pow(j, -7);
        M[r][3] = last[r];
    }
    for (int col = 0; col < 3; ++col) {
        for (int r = col + 1; r < 3; ++r) {
            const double f = M[r][col] / M[col][col];
            for (int k = col; k < 4; ++k)
                M[r][k] -= f * M[col][k];
        }
    }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double v = M[r][3];
        for (int k = r + 1; k < 3; ++k)
            v -= M[r][k] * coef[k];
        coef[r] = v / M[r][r];
    }
    total += coef[0] * zeta_tail(3, J) + coef[1] * zeta_tail(5, J) + coef[2] * zeta_tail(7, J);
    return 2.0 * total;
}

template <class Eval>
double with_self_check(Eval&& eval, const QuadratureSpec& q, const char* who)
{
    q.validate();
    const double h = eval(q);
    if (q.self_check) {
        QuadratureSpec r = q.refined();
        r.self_check = false;
        const double h2 = eval(r);
        if (!(std::abs(h2 - h) <= q.target_rel_error * (1.0 + std::abs(h))))
            throw QuadratureError(std::string(who) + ": refinement changed the result by " +
                                  std::to_string(std::abs(h2 - h)));
        return h2;
    }
    if (!std::isfinite(h))
        throw QuadratureError(std::string(who) + ": non-finite result");
    return h;
}

} // namespace

void QuadratureSpec::validate() const
{
    if (near_nodes < 2 || far_theta_nodes < 6 || far_x_nodes < 2 || lattice_terms < 1 || direct_nodes < 2 ||
        direct_period_nodes < 2 ||
        direct_periods < 8 || !(target_rel_error > 0.0))
        throw DomainError("QuadratureSpec: counts must be positive (direct_periods >= 8)");
}

QuadratureSpec QuadratureSpec::refined() const
{
    QuadratureSpec r = *this;
    r.near_nodes *= 2;
    r.far_theta_nodes *= 2;
    r.far_x_nodes *= 2;
    r.lattice_terms *= 2;
    r.direct_nodes *= 2;
    r.direct_period_nodes *= 2;
    r.direct_periods *= 2;
    return r;
}

double h_regularized(const PeriodicProfile& phi, double s, const QuadratureSpec& quad)
{
    phi.require_positive("h_regularized");
    const Center c = make_center(phi, s);
    return with_self_check(
        [&](const QuadratureSpec& q) { return -hcal_regularized(c, q) / std::sqrt(1.0 + c.d1 * c.d1); }, quad,
        "h_regularized");
}

double h_direct(const PeriodicProfile& phi, double s, const QuadratureSpec& quad)
{
    phi.require_positive("h_direct");
    DirectCenter c{&phi, s, phi.eval(s), phi.eval_deriv(s)};
    return with_self_check([&](const QuadratureSpec& q) { return -hcal_direct(c, q) / std::sqrt(1.0 + c.d1 * c.d1); },
                           quad, "h_direct");
}

std::vector<double> residual_at(const PeriodicProfile& phi, const std::vector<double>& s,
                                const QuadratureSpec& quad, int threads)
{
    phi.require_positive("equilibrium_residual");
    std::vector<double> out(s.size());
    parallel_for(
        int(s.size()), [&](int j) { out[j] = h_regularized(phi, s[j], quad) + 2.0 * pi; }, threads);
    return out;
}

std::vector<double> equilibrium_residual(const PeriodicProfile& phi, int grid_size, const QuadratureSpec& quad,
                                         int threads)
{
    if (grid_size < 2)
        throw DomainError("equilibrium_residual: grid_size must be >= 2");
    std::vector<double> s(grid_size);
    for (int j = 0; j < grid_size; ++j)
        s[j] = pi * j / (grid_size - 1);
    return residual_at(phi, s, quad, threads);
}

} // namespace exdom
