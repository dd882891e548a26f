#include "exdom/bessel.hpp"
#include "exdom/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace exdom {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr int max_terms = 500;

void check_order(int n, double x, const char* who)
{
    if (n < 0 || n > 2)
        throw DomainError(std::string(who) + ": order must be 0, 1 or 2");
    if (!(x >= 0.0) || std::isinf(x))
        throw DomainError(std::string(who) + ": argument must be finite and non-negative");
}

// sum_m (x/2)^(n+2m) / (m! (m+n)!)
double i_series(int n, double x, double eps)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int j = 1; j <= n; ++j)
        term *= 0.5 * x / j;
    double sum = term;
    for (int m = 1; m < max_terms; ++m) {
        term *= q / (double(m) * (m + n));
        sum += term;
        if (term < eps * sum)
            return sum;
    }
    throw NumericalError("bessel_i: power series did not converge");
}

// sum_k c_k / x^k, c_k = prod_{j<=k} (4n^2 - (2j-1)^2) / (8 j)
// sign = -1 for I (alternating), +1 for K.
double hankel_sum(int n, double x, double sign, double eps)
{
    const double mu = 4.0 * n * n;
    double term = 1.0, sum = 1.0, prev = 2.0;
    for (int k = 1; k < max_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= sign * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) > prev)
            throw NumericalError("bessel: asymptotic series diverged before reaching tolerance");
        sum += term;
        prev = std::abs(term);
        if (prev < eps * std::abs(sum))
            return sum;
    }
    throw NumericalError("bessel: asymptotic series did not converge");
}

void k01_series(double x, double eps, double& k0, double& k1)
{
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x);
    const double i0 = i_series(0, x, eps * 1e-3);
    const double i1 = i_series(1, x, eps * 1e-3);

    // K0 = -(ln(x/2)+gamma) I0 + sum H_k q^k/(k!)^2
    double t = 1.0, h = 0.0, s0 = 0.0;
    // K1 = 1/x + ln(x/2) I1 - (x/4) sum (psi(k+1)+psi(k+2)) q^k/(k!(k+1)!)
    double t1 = 1.0, s1 = 0.0;
    double psi1 = -euler_gamma, psi2 = 1.0 - euler_gamma;
    s1 = psi1 + psi2;
    for (int k = 1; k < max_terms; ++k) {
        t *= q / (double(k) * k);
        h += 1.0 / k;
        s0 += t * h;
        t1 *= q / (double(k) * (k + 1));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        s1 += t1 * (psi1 + psi2);
        if (t * h < eps * 1e-3 * std::abs(s0) && t1 * std::abs(psi1 + psi2) < eps * 1e-3 * std::abs(s1))
            break;
    }
    k0 = -(lg + euler_gamma) * i0 + s0;
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// Steed's method (Temme's CF2 for K_0, with K_1 from the ratio).
void k01_steed(double x, double eps, double& k0, double& k1)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < max_terms; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps * 1e-3)
            break;
    }
    if (i == max_terms)
        throw NumericalError("bessel_k: continued fraction did not converge");
    h *= a1;
    k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

void k01(double x, const BesselAccuracy& acc, double& k0, double& k1)
{
    const double eps = acc.target_rel_error;
    if (x <= acc.series_cutoff) {
        k01_series(x, eps, k0, k1);
    } else if (x <= acc.asymptotic_cutoff) {
        k01_steed(x, eps, k0, k1);
    } else {
        const double pre = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
        k0 = pre * hankel_sum(0, x, 1.0, eps * 1e-3);
        k1 = pre * hankel_sum(1, x, 1.0, eps * 1e-3);
    }
}

} // namespace

double bessel_i(int n, double x, const BesselAccuracy& acc)
{
    check_order(n, x, "bessel_i");
    if (x == 0.0)
        return n == 0 ? 1.0 : 0.0;
    const double eps = acc.target_rel_error * 1e-3;
    if (x <= acc.asymptotic_cutoff)
        return i_series(n, x, eps);
    return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * hankel_sum(n, x, -1.0, eps);
}

double bessel_k(int n, double x, const BesselAccuracy& acc)
{
    check_order(n, x, "bessel_k");
    if (x == 0.0)
        return std::numeric_limits<double>::infinity();
    double k0 = 0.0, k1 = 0.0;
    k01(x, acc, k0, k1);
#ifdef EXDOM_FAULT_K1_SIGN
    k1 = -k1;
#endif
    if (n == 0)
        return k0;
    if (n == 1)
        return k1;
    return k0 + 2.0 * k1 / x;
}

} // namespace exdom
