#pragma once

namespace exdom {

// Modified Bessel functions I_n, K_n for integer order n in {0, 1, 2}.
//
// K: ascending (logarithmic) series below series_cutoff, Steed's continued
// fraction up to asymptotic_cutoff, Hankel asymptotics beyond.
// I: power series below asymptotic_cutoff, asymptotics beyond.
struct BesselAccuracy
{
    double target_rel_error = 1e-12;
    double series_cutoff = 2.0;
    double asymptotic_cutoff = 30.0;
};

double bessel_i(int n, double x, const BesselAccuracy& acc = {});
double bessel_k(int n, double x, const BesselAccuracy& acc = {});

} // namespace exdom
