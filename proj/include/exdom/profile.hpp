#pragma once

#include <vector>

namespace exdom {

// sin(x) - x without cancellation for small x
double sin_minus_x(double x);

// Even 2pi-periodic profile phi(t) = a0 + sum_{l=1..N} a_l cos(l t).
class PeriodicProfile
{
public:
    PeriodicProfile() : a_(1, 0.0) {}
    explicit PeriodicProfile(std::vector<double> coefficients);

    static PeriodicProfile constant(double value, int N = 0);
    // value + amp cos(k t)
    static PeriodicProfile cosine(double value, int k, double amp, int N = -1);

    int N() const { return int(a_.size()) - 1; }
    const std::vector<double>& coefficients() const { return a_; }
    double coeff(int l) const { return l >= 0 && l <= N() ? a_[l] : 0.0; }
    void set_coeff(int l, double v);

    double eval(double t) const;
    double eval_deriv(double t) const;
    // phi, phi', phi'' in one pass
    void eval_all(double t, double& f, double& d1, double& d2) const;

    // (phi(s) - phi(s-t))/t and that minus phi'(s); exact limits at t = 0
    double lambda0(double s, double t) const;
    double lambda1(double s, double t) const;

    // samples at t_j = 2 pi j / M, j = 0..M-1
    std::vector<double> to_samples(int M) const;
    static PeriodicProfile from_samples(const std::vector<double>& values, int N);

    // min over 16N+64 (or `samples`) uniform points of [0, pi]
    double min_on_grid(int samples = 0) const;
    bool is_positive(int samples = 0) const { return min_on_grid(samples) > 0.0; }
    // throws DomainError unless is_positive()
    void require_positive(const char* who) const;

    // sup |phi| + sup |phi'| on the dense grid
    double c1_norm(int samples = 0) const;

    PeriodicProfile resized(int N) const;

private:
    std::vector<double> a_;
};

PeriodicProfile operator+(const PeriodicProfile& a, const PeriodicProfile& b);
PeriodicProfile operator-(const PeriodicProfile& a, const PeriodicProfile& b);
PeriodicProfile operator*(double c, const PeriodicProfile& a);

// int_0^{2pi} f g
double inner_product(const PeriodicProfile& f, const PeriodicProfile& g);

} // namespace exdom
