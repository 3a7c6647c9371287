#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorboot/quadrature.hpp"
#include "mirrorboot/rng.hpp"
#include "mirrorboot/sample.hpp"
#include "mirrorboot/special_functions.hpp"

namespace mirrorboot {

// Drawing produced a non-finite value, so the requested parameters cannot
// be sampled in double precision.
struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A moment that does not exist for the requested parameters was asked for
// in a context that cannot represent "undefined" in-band.
struct UndefinedMomentError : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameters of the g-and-h family: g controls skewness, h tail heaviness.
struct GhParams {
    double g = 0.0;
    double h = 0.0;

    GhParams() = default;
    GhParams(double g_in, double h_in) : g(g_in), h(h_in) {
        if (!std::isfinite(g) || !std::isfinite(h))
            throw std::invalid_argument("GhParams: g and h must be finite");
        if (h < 0.0)
            throw std::invalid_argument("GhParams: h must be >= 0");
    }
};

// Monotone transform defining the g-and-h family: X = T(Z) for standard
// normal Z. The g = 0 branch is the continuous limit of the general one.
inline double gh_transform(double z, const GhParams& p) noexcept {
    const double tail = std::exp(0.5 * p.h * z * z);
    if (p.g == 0.0) return z * tail;
    return (std::expm1(p.g * z) / p.g) * tail;
}

enum class Variant {
    standard_normal,
    normalized_gamma22,
    mirrored_normalized_gamma22,
    normalized_bimodal,
    g_and_h,
};

// A sampleable population. The four benchmark variants have mean 0 and
// standard deviation 1 before the optional location shift; g-and-h moments
// depend on the parameters and may not exist.
struct DistributionSpec {
    Variant variant = Variant::standard_normal;
    GhParams gh{};
    double shift = 0.0;

    static DistributionSpec standard_normal() { return {Variant::standard_normal, {}, 0.0}; }
    static DistributionSpec normalized_gamma22() { return {Variant::normalized_gamma22, {}, 0.0}; }
    static DistributionSpec mirrored_normalized_gamma22() {
        return {Variant::mirrored_normalized_gamma22, {}, 0.0};
    }
    static DistributionSpec normalized_bimodal() { return {Variant::normalized_bimodal, {}, 0.0}; }
    static DistributionSpec g_and_h(double g, double h) {
        return {Variant::g_and_h, GhParams(g, h), 0.0};
    }

    DistributionSpec shifted_by(double delta) const {
        DistributionSpec copy = *this;
        copy.shift += delta;
        return copy;
    }
};

inline std::string variant_name(const DistributionSpec& spec) {
    switch (spec.variant) {
        case Variant::standard_normal: return "normal";
        case Variant::normalized_gamma22: return "gamma22";
        case Variant::mirrored_normalized_gamma22: return "gamma22-mirror";
        case Variant::normalized_bimodal: return "bimodal";
        case Variant::g_and_h: return "gh";
    }
    return "?";
}

namespace detail {

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;
inline constexpr double kQuadHalfWidth = 12.0;  // N(0,1) mass beyond is < 1e-32
inline constexpr double kQuadTol = 1e-8;

inline double normal_density(double z) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

inline double draw_standard_normal(RngStream& rng) {
    return normal_quantile(rng.next_unit());
}

// Gamma(shape 2, scale 2) as the sum of two Exp(scale 2) variates; the
// normalization (G - 4)/(2 sqrt 2) removes mean 4 and sd 2 sqrt 2.
inline double draw_normalized_gamma22(RngStream& rng) {
    const double e1 = -std::log(rng.next_unit());
    const double e2 = -std::log(rng.next_unit());
    const double gamma = 2.0 * (e1 + e2);
    return (gamma - 4.0) / 2.8284271247461903;
}

// Equal mixture of N(-3,1) and N(3,1), scaled by 1/sqrt(10) so the
// variance 1 + 9 becomes 1.
inline double draw_normalized_bimodal(RngStream& rng) {
    const double center = rng.next_unit() < 0.5 ? -3.0 : 3.0;
    return (center + draw_standard_normal(rng)) / 3.1622776601683795;
}

inline double gh_mean_unshifted(const GhParams& p) {
    if (p.h >= 1.0)
        throw UndefinedMomentError("g-and-h mean is undefined for h >= 1");
    if (p.g == 0.0) return 0.0;  // odd transform of a symmetric variate
    return integrate([&](double z) { return gh_transform(z, p) * normal_density(z); },
                      -kQuadHalfWidth, kQuadHalfWidth, kQuadTol);
}

inline double gh_central_moment(const GhParams& p, int k, double mean) {
    return integrate(
        [&](double z) {
            const double d = gh_transform(z, p) - mean;
            double pow = d;
            for (int i = 1; i < k; ++i) pow *= d;
            return pow * normal_density(z);
        },
        -kQuadHalfWidth, kQuadHalfWidth, kQuadTol);
}

} // namespace detail

// Draw n independent observations. Throws SamplingError if a draw is not
// finite (overflow in the g-and-h transform at extreme parameters).
inline Sample sample(const DistributionSpec& spec, std::size_t n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x;
        switch (spec.variant) {
            case Variant::standard_normal:
                x = detail::draw_standard_normal(rng);
                break;
            case Variant::normalized_gamma22:
                x = detail::draw_normalized_gamma22(rng);
                break;
            case Variant::mirrored_normalized_gamma22:
                x = -detail::draw_normalized_gamma22(rng);
                break;
            case Variant::normalized_bimodal:
                x = detail::draw_normalized_bimodal(rng);
                break;
            case Variant::g_and_h:
                x = gh_transform(detail::draw_standard_normal(rng), spec.gh);
                break;
            default:
                throw std::logic_error("sample: unknown variant");
        }
        x += spec.shift;
        if (!std::isfinite(x))
            throw SamplingError("sample: non-finite draw from " + variant_name(spec) +
                                " (parameters not usable in double precision)");
        values.push_back(x);
    }
    return Sample(std::move(values));
}

// Population mean. Exact for the benchmark variants; adaptive quadrature of
// the transformed normal density for g-and-h. Throws UndefinedMomentError
// when the mean does not exist (h >= 1).
inline double population_mean(const DistributionSpec& spec) {
    if (spec.variant == Variant::g_and_h)
        return detail::gh_mean_unshifted(spec.gh) + spec.shift;
    return spec.shift;
}

// Population standard deviation, or nullopt when undefined (h >= 1/2).
inline std::optional<double> population_sd(const DistributionSpec& spec) {
    if (spec.variant != Variant::g_and_h) return 1.0;
    if (spec.gh.h >= 0.5) return std::nullopt;
    const double mean = detail::gh_mean_unshifted(spec.gh);
    return std::sqrt(detail::gh_central_moment(spec.gh, 2, mean));
}

// Skewness mu3 / mu2^(3/2), or nullopt when undefined (h >= 1/3).
inline std::optional<double> skewness(const DistributionSpec& spec) {
    switch (spec.variant) {
        case Variant::standard_normal: return 0.0;
        case Variant::normalized_gamma22: return 1.4142135623730951;   // 2/sqrt(shape)
        case Variant::mirrored_normalized_gamma22: return -1.4142135623730951;
        case Variant::normalized_bimodal: return 0.0;
        case Variant::g_and_h: break;
    }
    if (spec.gh.h >= 1.0 / 3.0) return std::nullopt;
    if (spec.gh.g == 0.0) return 0.0;  // symmetric about 0
    const double mean = detail::gh_mean_unshifted(spec.gh);
    const double mu2 = detail::gh_central_moment(spec.gh, 2, mean);
    const double mu3 = detail::gh_central_moment(spec.gh, 3, mean);
    return mu3 / std::sqrt(mu2 * mu2 * mu2);
}

// Kurtosis mu4 / mu2^2 (normal = 3), or nullopt when undefined (h >= 1/4).
inline std::optional<double> kurtosis(const DistributionSpec& spec) {
    switch (spec.variant) {
        case Variant::standard_normal: return 3.0;
        case Variant::normalized_gamma22: return 6.0;          // 3 + 6/shape
        case Variant::mirrored_normalized_gamma22: return 6.0;
        case Variant::normalized_bimodal: return 1.38;         // E[Y^4]=138, var=10
        case Variant::g_and_h: break;
    }
    if (spec.gh.h >= 0.25) return std::nullopt;
    const double mean = detail::gh_mean_unshifted(spec.gh);
    const double mu2 = detail::gh_central_moment(spec.gh, 2, mean);
    const double mu4 = detail::gh_central_moment(spec.gh, 4, mean);
    return mu4 / (mu2 * mu2);
}

} // namespace mirrorboot
