#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>

#include "mirrorboot/distributions.hpp"
#include "mirrorboot/hypothesis.hpp"
#include "mirrorboot/simulation.hpp"

namespace mirrorboot::csv {

// Shortest decimal string that round-trips to the same double, so output
// is byte-stable across platforms and run configurations.
inline std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string format_int(long long value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) throw std::runtime_error("format_int: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string format_uint(std::uint64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) throw std::runtime_error("format_uint: conversion failed");
    return std::string(buf, res.ptr);
}

// Moments that do not exist are written as the literal token below.
inline constexpr const char* kUndefined = "undefined";

inline std::string format_moment(const std::optional<double>& value) {
    return value.has_value() ? format_double(*value) : std::string(kUndefined);
}

namespace detail {

inline void append_gh_columns(std::string& out, const DistributionSpec& spec) {
    if (spec.variant == Variant::g_and_h) {
        out += format_double(spec.gh.g);
        out += ',';
        out += format_double(spec.gh.h);
    } else {
        out += ',';  // g and h stay empty for the named benchmark populations
    }
}

} // namespace detail

inline constexpr const char* kExperimentHeader =
    "dist,g,h,n,mode,effect,method,reps,b,alpha,rejections,degenerate,rate,mc_se,seed";

inline constexpr const char* kGridHeader =
    "axis,value,dist,g,h,n,mode,effect,method,reps,b,alpha,rejections,degenerate,rate,mc_se,seed";

// One row per method, in the order the experiment ran them. `reported_seed`
// is the user-facing seed that reproduces the run (for grid cells, the seed
// of the whole sweep rather than the internally derived per-cell seed).
inline void append_experiment_rows(std::string& out, const ExperimentResult& result,
                                   std::uint64_t reported_seed) {
    const ExperimentConfig& c = result.config;
    std::string prefix;
    prefix += variant_name(c.spec);
    prefix += ',';
    detail::append_gh_columns(prefix, c.spec);
    prefix += ',';
    prefix += format_int(c.n);
    prefix += ',';
    prefix += c.mode == Mode::validity ? "validity" : "power";
    prefix += ',';
    if (c.mode == Mode::power) prefix += format_double(c.effect);

    for (const MethodTally& tally : result.tallies) {
        const double rate = static_cast<double>(tally.rejections) / c.reps;
        out += prefix;
        out += ',';
        out += method_name(tally.method);
        out += ',';
        out += format_int(c.reps);
        out += ',';
        out += format_int(c.settings.b_reps);
        out += ',';
        out += format_double(c.settings.alpha);
        out += ',';
        out += format_int(tally.rejections);
        out += ',';
        out += format_int(tally.degenerate);
        out += ',';
        out += format_double(rate);
        out += ',';
        out += format_double(mc_standard_error(rate, c.reps));
        out += ',';
        out += format_uint(reported_seed);
        out += '\n';
    }
}

inline std::string experiment_csv(const ExperimentResult& result,
                                  std::uint64_t reported_seed) {
    std::string out(kExperimentHeader);
    out += '\n';
    append_experiment_rows(out, result, reported_seed);
    return out;
}

// Rows for every cell of a sweep; failed cells are skipped (the CLI reports
// them on stderr). Cells are emitted in the order given.
inline std::string grid_csv(GridAxis axis, const std::vector<GridCell>& cells,
                            std::uint64_t reported_seed) {
    std::string out(kGridHeader);
    out += '\n';
    const std::string axis_name = grid_axis_name(axis);
    for (const GridCell& cell : cells) {
        if (!cell.result.has_value()) continue;
        std::string rows;
        append_experiment_rows(rows, *cell.result, reported_seed);
        std::string prefix = axis_name;
        prefix += ',';
        prefix += format_double(cell.axis_value);
        prefix += ',';
        std::size_t pos = 0;
        while (pos < rows.size()) {
            const std::size_t eol = rows.find('\n', pos);
            out += prefix;
            out.append(rows, pos, eol - pos + 1);
            pos = eol + 1;
        }
    }
    return out;
}

inline constexpr const char* kTestHeader = "method,n,mean,mu0,p_value,reject";

inline std::string test_csv(const TestOutcome& outcome, std::size_t n, double sample_mean,
                            double mu0) {
    std::string out(kTestHeader);
    out += '\n';
    out += method_name(outcome.method);
    out += ',';
    out += format_uint(n);
    out += ',';
    out += format_double(sample_mean);
    out += ',';
    out += format_double(mu0);
    out += ',';
    out += format_double(outcome.p_value);
    out += ',';
    out += outcome.reject ? "true" : "false";
    out += '\n';
    return out;
}

inline constexpr const char* kDistHeader = "dist,g,h,mean,sd,skewness,kurtosis";

inline std::string dist_csv(const DistributionSpec& spec) {
    std::string out(kDistHeader);
    out += '\n';
    out += variant_name(spec);
    out += ',';
    detail::append_gh_columns(out, spec);
    out += ',';
    out += format_double(population_mean(spec));  // h >= 1 propagates as an error
    out += ',';
    out += format_moment(population_sd(spec));
    out += ',';
    out += format_moment(skewness(spec));
    out += ',';
    out += format_moment(kurtosis(spec));
    out += '\n';
    return out;
}

} // namespace mirrorboot::csv
