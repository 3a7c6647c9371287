#pragma once

// Exhaustive resampling oracles for tiny samples. For a pool of k values
// and resamples of size n there are k^n equally likely ordered draws; the
// exact p-value is the fraction whose mean is at least as far from mu0 as
// the observed mean. Cost k^n, so n <= 3 only.
//
// The mean of each draw is computed as sum * (1/n) — the same operation the
// Monte Carlo loop uses — so boundary comparisons agree decision-for-decision
// with the code under test.

#include <cmath>
#include <cstddef>
#include <vector>

#include "mirrorboot/hypothesis.hpp"
#include "mirrorboot/sample.hpp"

namespace enumeration {

inline double exact_p(const std::vector<double>& pool, std::size_t n, double mu0,
                      double observed_distance) {
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<std::size_t> index(n, 0);  // odometer over pool^n
    long extreme = 0;
    long total = 0;
    for (;;) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += pool[index[k]];
        if (std::abs(sum * inv_n - mu0) >= observed_distance) ++extreme;
        ++total;
        std::size_t pos = 0;
        while (pos < n && ++index[pos] == pool.size()) index[pos++] = 0;
        if (pos == n) break;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

inline double exact_mirror_p(const mirrorboot::Sample& s, double mu0) {
    const auto pop = mirrorboot::mirror_population(s, mu0);
    return exact_p(pop.values, s.size(), mu0, std::abs(s.mean() - mu0));
}

inline double exact_shift_p(const mirrorboot::Sample& s, double mu0) {
    const double offset = mu0 - s.mean();
    std::vector<double> shifted;
    shifted.reserve(s.size());
    for (double x : s.values()) shifted.push_back(x + offset);
    return exact_p(shifted, s.size(), mu0, std::abs(s.mean() - mu0));
}

} // namespace enumeration
