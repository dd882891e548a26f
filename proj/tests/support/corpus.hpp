#pragma once

#include "exdom/profile.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace corpus {

// Random positive profiles: N <= 8, perturbation sup-norm <= 0.2 a0, min >= 0.3.
inline std::vector<exdom::PeriodicProfile> random_profiles(int count, unsigned seed = 12345)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> NN(1, 8);
    std::uniform_real_distribution<double> A0(0.4, 3.0);
    std::vector<exdom::PeriodicProfile> out;
    while (int(out.size()) < count) {
        int N = NN(rng);
        double a0 = A0(rng);
        std::vector<double> a(N + 1);
        a[0] = a0;
        double l1 = 0.0;
        for (int l = 1; l <= N; ++l) {
            a[l] = U(rng) / (l * l);
            l1 += std::abs(a[l]);
        }
        double amp = 0.2 * a0 * std::abs(U(rng));
        for (int l = 1; l <= N; ++l)
            a[l] *= amp / l1;
        exdom::PeriodicProfile p(a);
        if (p.min_on_grid() >= 0.3)
            out.push_back(p);
    }
    return out;
}

} // namespace corpus
