// Command-line front end: exact hypothesis tests on data files, Monte Carlo
// rejection-rate experiments, parameter sweeps, and population moments.
// All numeric output is CSV with LF line endings; given the same flags
// (including --seed and any --threads value) the bytes are identical.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mirrorboot/mirrorboot.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- flag parsing helpers ---------------------------------------------------

mirrorboot::Method parse_method(const std::string& token) {
    if (token == "mirror") return mirrorboot::Method::mirror;
    if (token == "shift") return mirrorboot::Method::shift;
    if (token == "t") return mirrorboot::Method::t;
    throw UsageError("unknown method '" + token + "' (expected mirror, shift, or t)");
}

// Comma-separated subset of {mirror, shift, t}; duplicates rejected. The
// result is put in canonical order so CSV rows sort the same way for any
// spelling of the list.
std::vector<mirrorboot::Method> parse_method_list(const std::string& list) {
    std::vector<mirrorboot::Method> methods;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) throw UsageError("empty entry in --methods list");
        methods.push_back(parse_method(token));
    }
    if (methods.empty()) throw UsageError("--methods list must not be empty");
    std::sort(methods.begin(), methods.end());
    if (std::adjacent_find(methods.begin(), methods.end()) != methods.end())
        throw UsageError("duplicate entry in --methods list");
    return methods;
}

std::vector<double> parse_value_list(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) throw UsageError("empty entry in --values list");
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v))
            throw UsageError("--values entry '" + token + "' is not a finite number");
        values.push_back(v);
    }
    if (values.empty()) throw UsageError("--values list must not be empty");
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
        throw UsageError("duplicate entry in --values list");
    return values;
}

// One decimal literal per line; blank (whitespace-only) lines are ignored.
std::vector<double> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::vector<double> values;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);
        char* parse_end = nullptr;
        const double v = std::strtod(token.c_str(), &parse_end);
        if (parse_end != token.c_str() + token.size() || !std::isfinite(v))
            throw UsageError("line " + std::to_string(line_number) +
                             ": not a number");
        values.push_back(v);
    }
    if (values.empty())
        throw UsageError("input file '" + path + "' contains no data");
    return values;
}

struct DistFlags {
    std::string dist;
    std::optional<double> g;
    std::optional<double> h;
};

void add_dist_flags(CLI::App& cmd, DistFlags& flags, bool required) {
    cmd.set_help_flag("--help", "print help and exit");
    auto* opt = cmd.add_option("--dist", flags.dist,
                               "population: normal, gamma22, gamma22-mirror, bimodal, gh");
    if (required) opt->required();
    cmd.add_option("--g", flags.g, "skewness parameter (gh only)");
    cmd.add_option("--h", flags.h, "tail-weight parameter (gh only)");
}

// `need_mean` enforces h < 1 where the population mean must exist (the
// experiment commands test against it).
mirrorboot::DistributionSpec make_spec(const DistFlags& flags, bool need_mean) {
    if (flags.dist == "gh") {
        if (!flags.g.has_value() || !flags.h.has_value())
            throw UsageError("--dist gh requires both --g and --h");
        mirrorboot::GhParams params(*flags.g, *flags.h);
        if (need_mean && params.h >= 1.0)
            throw UsageError("population mean is undefined for h >= 1");
        return mirrorboot::DistributionSpec::g_and_h(params.g, params.h);
    }
    if (flags.g.has_value() || flags.h.has_value())
        throw UsageError("--g/--h apply only to --dist gh");
    if (flags.dist == "normal") return mirrorboot::DistributionSpec::standard_normal();
    if (flags.dist == "gamma22") return mirrorboot::DistributionSpec::normalized_gamma22();
    if (flags.dist == "gamma22-mirror")
        return mirrorboot::DistributionSpec::mirrored_normalized_gamma22();
    if (flags.dist == "bimodal") return mirrorboot::DistributionSpec::normalized_bimodal();
    throw UsageError("unknown distribution '" + flags.dist + "'");
}

// --- shared experiment flags -------------------------------------------------

struct ExperimentFlags {
    DistFlags dist;
    int n = 0;
    std::string mode;
    std::optional<double> effect;
    std::optional<int> reps;
    int b = 1000;
    double alpha = 0.05;
    std::string methods;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_path;
};

void add_experiment_flags(CLI::App& cmd, ExperimentFlags& flags, bool dist_required,
                          bool n_required) {
    add_dist_flags(cmd, flags.dist, dist_required);
    auto* n_opt = cmd.add_option("--n", flags.n, "sample size (>= 2)");
    if (n_required) n_opt->required();
    cmd.add_option("--mode", flags.mode, "validity or power")->required();
    cmd.add_option("--effect", flags.effect, "mean shift under the alternative (power mode)");
    cmd.add_option("--reps", flags.reps,
                   "Monte Carlo replications (default 10000 validity, 1000 power)");
    cmd.add_option("--b", flags.b, "bootstrap resamples per test (default 1000)");
    cmd.add_option("--alpha", flags.alpha, "significance level (default 0.05)");
    cmd.add_option("--methods", flags.methods, "comma-separated: mirror,shift,t")->required();
    cmd.add_option("--seed", flags.seed, "master seed")->required();
    cmd.add_option("--threads", flags.threads, "worker threads (0 = hardware, default)");
    cmd.add_option("--out", flags.out_path, "write CSV here instead of stdout");
}

mirrorboot::ExperimentConfig make_experiment_config(const ExperimentFlags& flags,
                                                    bool with_spec_and_n) {
    mirrorboot::ExperimentConfig config;
    if (with_spec_and_n) {
        config.spec = make_spec(flags.dist, /*need_mean=*/true);
        if (flags.n < 2) throw UsageError("--n must be at least 2");
        config.n = flags.n;
    }
    if (flags.mode == "validity") {
        config.mode = mirrorboot::Mode::validity;
        if (flags.effect.has_value())
            throw UsageError("--effect is a power-mode flag; validity tests the true mean");
    } else if (flags.mode == "power") {
        config.mode = mirrorboot::Mode::power;
        config.effect = flags.effect.value_or(0.0);
        if (!std::isfinite(config.effect)) throw UsageError("--effect must be finite");
    } else {
        throw UsageError("--mode must be 'validity' or 'power'");
    }
    config.reps =
        flags.reps.value_or(config.mode == mirrorboot::Mode::validity ? 10000 : 1000);
    if (config.reps < 1) throw UsageError("--reps must be at least 1");
    if (flags.b < 1) throw UsageError("--b must be at least 1");
    if (!(flags.alpha > 0.0 && flags.alpha < 1.0))
        throw UsageError("--alpha must lie strictly between 0 and 1");
    config.settings.b_reps = flags.b;
    config.settings.alpha = flags.alpha;
    config.methods = parse_method_list(flags.methods);
    config.master_seed = flags.seed;
    return config;
}

// Full output is assembled in memory and written in one shot, so a failure
// partway through a computation never leaves a truncated file behind.
void write_output(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(csv.data(), 1, csv.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) throw std::runtime_error("failed writing output file '" + out_path + "'");
}

// --- subcommands --------------------------------------------------------------

int run_test(const std::string& input_path, double mu0, const std::string& method_token,
             int b, double alpha, std::uint64_t seed) {
    const mirrorboot::Method method = parse_method(method_token);
    if (b < 1) throw UsageError("--b must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("--alpha must lie strictly between 0 and 1");
    if (!std::isfinite(mu0)) throw UsageError("--mu0 must be finite");

    const mirrorboot::Sample sample(read_data_file(input_path));
    if (sample.size() < 2)
        throw UsageError("need at least 2 observations, got " +
                         std::to_string(sample.size()));
    const mirrorboot::TestSettings settings{b, alpha};
    mirrorboot::TestOutcome outcome;
    switch (method) {
        case mirrorboot::Method::mirror: {
            mirrorboot::RngStream rng(seed, 0);
            outcome = mirrorboot::mirror_bootstrap_test(sample, mu0, settings, rng);
            break;
        }
        case mirrorboot::Method::shift: {
            mirrorboot::RngStream rng(seed, 0);
            outcome = mirrorboot::shift_bootstrap_test(sample, mu0, settings, rng);
            break;
        }
        case mirrorboot::Method::t:
            outcome = mirrorboot::t_test(sample, mu0, alpha);
            break;
    }
    write_output(mirrorboot::csv::test_csv(outcome, sample.size(), sample.mean(), mu0), "");
    return 0;
}

int run_simulate(const ExperimentFlags& flags) {
    const auto config = make_experiment_config(flags, /*with_spec_and_n=*/true);
    const auto result = mirrorboot::run_experiment(config, flags.threads);
    write_output(mirrorboot::csv::experiment_csv(result, flags.seed), flags.out_path);
    return 0;
}

int run_grid(const ExperimentFlags& flags, const std::string& axis_token,
             const std::string& values_list, bool n_given) {
    mirrorboot::GridSpec grid;
    if (axis_token == "g")
        grid.axis = mirrorboot::GridAxis::g;
    else if (axis_token == "h")
        grid.axis = mirrorboot::GridAxis::h;
    else if (axis_token == "n")
        grid.axis = mirrorboot::GridAxis::n;
    else
        throw UsageError("--axis must be g, h, or n");
    grid.values = parse_value_list(values_list);

    if (grid.axis == mirrorboot::GridAxis::n) {
        if (n_given) throw UsageError("--n conflicts with --axis n; sizes come from --values");
        for (double v : grid.values)
            if (v != std::nearbyint(v) || v < 2.0)
                throw UsageError("--axis n values must be integers >= 2");
        if (flags.dist.dist.empty()) throw UsageError("--axis n requires --dist");
        grid.base = make_experiment_config(flags, /*with_spec_and_n=*/false);
        grid.base.spec = make_spec(flags.dist, /*need_mean=*/true);
        grid.base.n = 2;  // placeholder; every cell installs its own size
    } else {
        // The swept parameter comes from --values; the other gh parameter is
        // pinned at 0 so each sweep varies exactly one thing.
        if (flags.dist.dist != "gh")
            throw UsageError("--axis g/h sweeps require --dist gh");
        if (flags.dist.g.has_value() || flags.dist.h.has_value())
            throw UsageError("--g/--h conflict with a g/h sweep; values come from --values");
        for (double v : grid.values) {
            if (grid.axis == mirrorboot::GridAxis::h && !(v >= 0.0 && v < 1.0))
                throw UsageError("--axis h values must lie in [0, 1) so the mean exists");
        }
        grid.base = make_experiment_config(flags, /*with_spec_and_n=*/false);
        grid.base.spec = mirrorboot::DistributionSpec::g_and_h(0.0, 0.0);
        if (flags.n < 2) throw UsageError("--n must be at least 2");
        grid.base.n = flags.n;
    }

    const auto cells = mirrorboot::run_grid(grid, flags.threads);
    int failed = 0;
    for (const auto& cell : cells)
        if (!cell.result.has_value()) {
            std::cerr << "error: " << mirrorboot::grid_axis_name(grid.axis) << " = "
                      << mirrorboot::csv::format_double(cell.axis_value) << ": "
                      << cell.error << "\n";
            ++failed;
        }
    write_output(mirrorboot::csv::grid_csv(grid.axis, cells, flags.seed), flags.out_path);
    return failed == 0 ? 0 : kRuntimeError;
}

int run_dist(const DistFlags& flags) {
    const auto spec = make_spec(flags, /*need_mean=*/false);
    write_output(mirrorboot::csv::dist_csv(spec), "");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resampling hypothesis tests for one mean, with a Monte Carlo "
                 "rejection-rate harness"};
    // --h is a real flag here, so help must not claim the short -h name.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    // test
    auto* test_cmd = app.add_subcommand("test", "run one hypothesis test on a data file");
    test_cmd->set_help_flag("--help", "print help and exit");
    std::string input_path, method_token;
    double mu0 = 0.0;
    int test_b = 1000;
    double test_alpha = 0.05;
    std::uint64_t test_seed = 0;
    test_cmd->add_option("--input", input_path, "data file, one number per line")->required();
    test_cmd->add_option("--mu0", mu0, "hypothesized mean")->required();
    test_cmd->add_option("--method", method_token, "mirror, shift, or t")->required();
    test_cmd->add_option("--b", test_b, "bootstrap resamples (default 1000)");
    test_cmd->add_option("--alpha", test_alpha, "significance level (default 0.05)");
    test_cmd->add_option("--seed", test_seed, "resampling seed (default 0)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "estimate rejection rates by Monte Carlo");
    ExperimentFlags sim_flags;
    add_experiment_flags(*sim_cmd, sim_flags, /*dist_required=*/true, /*n_required=*/true);

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "sweep one axis (g, h, or n)");
    ExperimentFlags grid_flags;
    std::string axis_token, values_list;
    grid_cmd->add_option("--axis", axis_token, "swept parameter: g, h, or n")->required();
    grid_cmd->add_option("--values", values_list, "comma-separated axis values")->required();
    add_experiment_flags(*grid_cmd, grid_flags, /*dist_required=*/false, /*n_required=*/false);

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "print population moments");
    DistFlags dist_flags;
    add_dist_flags(*dist_cmd, dist_flags, /*required=*/true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (test_cmd->parsed())
            return run_test(input_path, mu0, method_token, test_b, test_alpha, test_seed);
        if (sim_cmd->parsed()) return run_simulate(sim_flags);
        if (grid_cmd->parsed())
            return run_grid(grid_flags, axis_token, values_list,
                            grid_cmd->count("--n") > 0);
        if (dist_cmd->parsed()) return run_dist(dist_flags);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return 0;
}
