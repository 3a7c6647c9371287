#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorboot/rng.hpp"
#include "mirrorboot/sample.hpp"
#include "mirrorboot/special_functions.hpp"

namespace mirrorboot {

// The t-test statistic does not exist because the sample has zero variance.
struct DegenerateSampleError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Method { mirror, shift, t };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::mirror: return "mirror";
        case Method::shift: return "shift";
        case Method::t: return "t";
    }
    return "?";
}

// Settings shared by the resampling tests. All tests here are two-tailed.
struct TestSettings {
    int b_reps = 1000;
    double alpha = 0.05;

    void validate() const {
        if (b_reps < 1) throw std::invalid_argument("TestSettings: b_reps must be >= 1");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("TestSettings: alpha must lie in (0, 1)");
    }
};

// Result of one hypothesis test. `statistic` is the t statistic for the
// t-test and |M - mu0| for the resampling tests; extreme_count is set only
// by the resampling tests and satisfies p_value == extreme_count / b_reps.
struct TestOutcome {
    Method method;
    double p_value;
    bool reject;
    double statistic;
    std::optional<long> extreme_count;
};

// The symmetric 2n-element population obtained by reflecting a sample
// around its hypothesized mean: invariant as a multiset under
// x -> 2*center - x.
struct MirrorPopulation {
    std::vector<double> values;
    double center;
};

inline MirrorPopulation mirror_population(const Sample& sample, double mu0) {
    MirrorPopulation pop;
    pop.center = mu0;
    pop.values.reserve(2 * sample.size());
    for (double x : sample.values()) pop.values.push_back(x);
    for (double x : sample.values()) pop.values.push_back(2.0 * mu0 - x);
    return pop;
}

namespace detail {

inline void require_testable(const Sample& sample) {
    if (sample.size() < 2)
        throw std::invalid_argument("hypothesis test: sample must have n >= 2");
}

// Resamples of size n with replacement from `population`, counting those
// whose mean lies at least as far from mu0 as the observed mean does. The
// closed inequality makes p = 1 exact when the observed distance is zero.
inline long count_extreme_resamples(std::span<const double> population, std::size_t n,
                                    double mu0, double observed_distance, int b_reps,
                                    RngStream& rng) {
    const std::uint64_t size = population.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    long extreme = 0;
    for (int b = 0; b < b_reps; ++b) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += population[rng.next_below(size)];
        if (std::abs(sum * inv_n - mu0) >= observed_distance) ++extreme;
    }
    return extreme;
}

inline TestOutcome resampling_outcome(Method method, double observed_distance,
                                      long extreme, const TestSettings& settings) {
    const double p = static_cast<double>(extreme) / settings.b_reps;
    return {method, p, p < settings.alpha, observed_distance, extreme};
}

} // namespace detail

// Mirror bootstrap test of H0: mu = mu0. Reflects the sample around mu0
// into a symmetric population of 2n values and bootstraps size-n means
// from it.
inline TestOutcome mirror_bootstrap_test(const Sample& sample, double mu0,
                                         const TestSettings& settings, RngStream& rng) {
    detail::require_testable(sample);
    settings.validate();
    const MirrorPopulation pop = mirror_population(sample, mu0);
    const double observed = std::abs(sample.mean() - mu0);
    const long extreme = detail::count_extreme_resamples(
        pop.values, sample.size(), mu0, observed, settings.b_reps, rng);
    return detail::resampling_outcome(Method::mirror, observed, extreme, settings);
}

// Shift bootstrap test of H0: mu = mu0. Translates the sample so its mean
// equals mu0, then bootstraps size-n means from the n shifted values.
inline TestOutcome shift_bootstrap_test(const Sample& sample, double mu0,
                                        const TestSettings& settings, RngStream& rng) {
    detail::require_testable(sample);
    settings.validate();
    const double offset = mu0 - sample.mean();
    std::vector<double> shifted;
    shifted.reserve(sample.size());
    for (double x : sample.values()) shifted.push_back(x + offset);
    const double observed = std::abs(sample.mean() - mu0);
    const long extreme = detail::count_extreme_resamples(
        shifted, sample.size(), mu0, observed, settings.b_reps, rng);
    return detail::resampling_outcome(Method::shift, observed, extreme, settings);
}

// Two-tailed one-sample t-test of H0: mu = mu0. Throws
// DegenerateSampleError when the sample standard deviation is zero.
inline TestOutcome t_test(const Sample& sample, double mu0, double alpha) {
    detail::require_testable(sample);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("t_test: alpha must lie in (0, 1)");
    const double s = sample.sd();
    if (s == 0.0)
        throw DegenerateSampleError("t_test: sample has zero variance");
    const double n = static_cast<double>(sample.size());
    const double t = (sample.mean() - mu0) / (s / std::sqrt(n));
    const double p = student_t_two_tailed_p(t, static_cast<int>(sample.size()) - 1);
    return {Method::t, p, p < alpha, t, std::nullopt};
}

} // namespace mirrorboot
