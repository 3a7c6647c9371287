#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mirrorboot/distributions.hpp"
#include "mirrorboot/hypothesis.hpp"
#include "mirrorboot/rng.hpp"

namespace mirrorboot {

enum class Mode { validity, power };

// One replicated experiment: `reps` samples of size n from `spec`, each
// tested by every requested method against the true (validity) or offset
// (power) null. Replication i draws its randomness from streams keyed by
// (master_seed, i), so results do not depend on scheduling.
struct ExperimentConfig {
    DistributionSpec spec;
    int n = 30;
    int reps = 10000;
    TestSettings settings{};
    std::vector<Method> methods = {Method::mirror, Method::shift, Method::t};
    Mode mode = Mode::validity;
    double effect = 0.0;  // shift of the sampled population, power mode only
    std::uint64_t master_seed = 0;

    void validate() const {
        if (n < 2) throw std::invalid_argument("ExperimentConfig: n must be >= 2");
        if (reps < 1) throw std::invalid_argument("ExperimentConfig: reps must be >= 1");
        if (methods.empty())
            throw std::invalid_argument("ExperimentConfig: at least one method required");
        if (!std::isfinite(effect))
            throw std::invalid_argument("ExperimentConfig: effect must be finite");
        settings.validate();
    }
};

struct MethodTally {
    Method method;
    long rejections = 0;
    long degenerate = 0;  // replications where the statistic did not exist
};

struct ExperimentResult {
    ExperimentConfig config;
    double mu0 = 0.0;
    std::vector<MethodTally> tallies;  // parallel to config.methods
    double elapsed_seconds = 0.0;

    const MethodTally& tally(Method m) const {
        for (const auto& t : tallies)
            if (t.method == m) return t;
        throw std::invalid_argument("ExperimentResult: method not part of this run");
    }
    double rejection_rate(Method m) const {
        return static_cast<double>(tally(m).rejections) / config.reps;
    }
};

// Monte Carlo standard error of an estimated rejection rate.
inline double mc_standard_error(double rate, long reps) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("mc_standard_error: rate must lie in [0, 1]");
    if (reps < 1) throw std::invalid_argument("mc_standard_error: reps must be >= 1");
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps));
}

namespace detail {

// Stream channels within one replication. Each test invocation owns one
// stream; the t-test consumes no randomness.
inline constexpr std::uint64_t kStreamsPerReplication = 4;
inline constexpr std::uint64_t kSampleChannel = 0;
inline constexpr std::uint64_t kMirrorChannel = 1;
inline constexpr std::uint64_t kShiftChannel = 2;

inline std::uint64_t replication_stream(std::uint64_t rep, std::uint64_t channel) {
    return rep * kStreamsPerReplication + channel;
}

// Runs one method on one sample; nullopt when the sample is degenerate for
// that method. Counted as a non-rejection by the caller.
inline std::optional<bool> method_rejects(Method method, const Sample& s, double mu0,
                                          const TestSettings& settings,
                                          std::uint64_t seed, std::uint64_t rep) {
    try {
        switch (method) {
            case Method::mirror: {
                RngStream rng(seed, replication_stream(rep, kMirrorChannel));
                return mirror_bootstrap_test(s, mu0, settings, rng).reject;
            }
            case Method::shift: {
                RngStream rng(seed, replication_stream(rep, kShiftChannel));
                return shift_bootstrap_test(s, mu0, settings, rng).reject;
            }
            case Method::t:
                return t_test(s, mu0, settings.alpha).reject;
        }
    } catch (const DegenerateSampleError&) {
        return std::nullopt;
    }
    throw std::logic_error("method_rejects: unknown method");
}

} // namespace detail

// Runs the configured experiment. `threads` = 0 selects the hardware
// concurrency; any value yields identical results because every
// replication's randomness is a pure function of (master_seed, index) and
// the aggregation is integer counting.
inline ExperimentResult run_experiment(const ExperimentConfig& config,
                                       unsigned threads = 0) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    // Validity tests the true null; power shifts the sampled population by
    // `effect` while still testing the unshifted mean.
    const double mu0 = population_mean(config.spec);
    const DistributionSpec draw_spec =
        config.mode == Mode::power ? config.spec.shifted_by(config.effect) : config.spec;

    const std::size_t n_methods = config.methods.size();
    std::vector<long> rejections(n_methods, 0);
    std::vector<long> degenerate(n_methods, 0);

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (threads > static_cast<unsigned>(config.reps))
        threads = static_cast<unsigned>(config.reps);

    std::atomic<long> next_rep{0};
    std::mutex merge_mutex;
    std::exception_ptr failure;

    auto worker = [&]() {
        std::vector<long> local_rej(n_methods, 0);
        std::vector<long> local_deg(n_methods, 0);
        constexpr long chunk = 8;
        try {
            for (;;) {
                const long begin = next_rep.fetch_add(chunk, std::memory_order_relaxed);
                if (begin >= config.reps) break;
                const long end = std::min<long>(begin + chunk, config.reps);
                for (long rep = begin; rep < end; ++rep) {
                    RngStream sample_rng(
                        config.master_seed,
                        detail::replication_stream(rep, detail::kSampleChannel));
                    const Sample s = sample(draw_spec, config.n, sample_rng);
                    for (std::size_t m = 0; m < n_methods; ++m) {
                        const auto rejected = detail::method_rejects(
                            config.methods[m], s, mu0, config.settings,
                            config.master_seed, rep);
                        if (!rejected.has_value())
                            ++local_deg[m];
                        else if (*rejected)
                            ++local_rej[m];
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(merge_mutex);
            if (!failure) failure = std::current_exception();
            return;
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t m = 0; m < n_methods; ++m) {
            rejections[m] += local_rej[m];
            degenerate[m] += local_deg[m];
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    result.config = config;
    result.mu0 = mu0;
    for (std::size_t m = 0; m < n_methods; ++m)
        result.tallies.push_back({config.methods[m], rejections[m], degenerate[m]});
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

enum class GridAxis { g, h, n };

inline std::string grid_axis_name(GridAxis axis) {
    switch (axis) {
        case GridAxis::g: return "g";
        case GridAxis::h: return "h";
        case GridAxis::n: return "n";
    }
    return "?";
}

// A one-dimensional sweep. The g sweep fixes h = 0 and the h sweep fixes
// g = 0; the n sweep keeps the base population.
struct GridSpec {
    GridAxis axis = GridAxis::n;
    std::vector<double> values;
    ExperimentConfig base;
};

struct GridCell {
    std::size_t axis_index = 0;
    double axis_value = 0.0;
    std::optional<ExperimentResult> result;
    std::string error;  // nonempty when the cell failed
};

namespace detail {

inline ExperimentConfig cell_config(const GridSpec& grid, std::size_t index) {
    ExperimentConfig config = grid.base;
    const double value = grid.values[index];
    switch (grid.axis) {
        case GridAxis::g:
            config.spec = DistributionSpec{Variant::g_and_h, GhParams(value, 0.0),
                                           grid.base.spec.shift};
            break;
        case GridAxis::h:
            config.spec = DistributionSpec{Variant::g_and_h, GhParams(0.0, value),
                                           grid.base.spec.shift};
            break;
        case GridAxis::n: {
            const double rounded = std::nearbyint(value);
            if (!(value == rounded) || rounded < 2.0)
                throw std::invalid_argument("grid: n values must be integers >= 2");
            config.n = static_cast<int>(rounded);
            break;
        }
    }
    // Each cell gets its own seed so replication streams never collide
    // across cells; reproducible in both grid and replication dimensions.
    config.master_seed = derive_seed(grid.base.master_seed, index);
    return config;
}

} // namespace detail

// Runs one experiment per axis value. A failing cell is recorded in-band
// and does not abort the remaining cells.
inline std::vector<GridCell> run_grid(const GridSpec& grid, unsigned threads = 0) {
    if (grid.values.empty())
        throw std::invalid_argument("run_grid: at least one axis value required");
    std::vector<GridCell> cells;
    cells.reserve(grid.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        GridCell cell;
        cell.axis_index = i;
        cell.axis_value = grid.values[i];
        try {
            cell.result = run_experiment(detail::cell_config(grid, i), threads);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

} // namespace mirrorboot
