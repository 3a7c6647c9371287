#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mirrorboot/special_functions.hpp"

using Catch::Matchers::WithinAbs;
using mirrorboot::ibeta;
using mirrorboot::normal_cdf;
using mirrorboot::normal_quantile;
using mirrorboot::student_t_cdf;
using mirrorboot::student_t_two_tailed_p;

TEST_CASE("normal cdf reproduces reference values") {
    REQUIRE(normal_cdf(0.0) == 0.5);
    REQUIRE_THAT(normal_cdf(-3.0), WithinAbs(0.0013498980316300933, 1e-17));
    REQUIRE_THAT(normal_cdf(-1.0), WithinAbs(0.15865525393145707, 1e-16));
    REQUIRE_THAT(normal_cdf(1.96), WithinAbs(0.9750021048517795, 1e-15));
    REQUIRE_THAT(normal_cdf(5.0), WithinAbs(0.9999997133484281, 1e-15));
}

TEST_CASE("normal quantile reproduces reference values") {
    REQUIRE(normal_quantile(0.5) == 0.0);
    REQUIRE_THAT(normal_quantile(0.025), WithinAbs(-1.9599639845400545, 1e-14));
    REQUIRE_THAT(normal_quantile(0.975), WithinAbs(1.959963984540054, 1e-14));
    REQUIRE_THAT(normal_quantile(0.3), WithinAbs(-0.5244005127080409, 1e-14));
    REQUIRE_THAT(normal_quantile(0.9999), WithinAbs(3.719016485455709, 1e-13));
    REQUIRE_THAT(normal_quantile(1e-12), WithinAbs(-7.034483825301131, 1e-13));
    REQUIRE_THAT(normal_quantile(1.0 - 1e-12), WithinAbs(7.0344869100478356, 1e-13));
}

TEST_CASE("normal quantile rejects arguments outside (0, 1)") {
    REQUIRE_THROWS_AS(normal_quantile(0.0), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(1.0), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(normal_quantile(std::nan("")), std::domain_error);
}

TEST_CASE("normal quantile and cdf are mutually consistent") {
    for (double p = 0.001; p < 1.0; p += 0.001) {
        const double z = normal_quantile(p);
        REQUIRE_THAT(normal_cdf(z), WithinAbs(p, 1e-12));
    }
    // Exact antisymmetry whenever p and 1-p are both exact binary fractions.
    REQUIRE(normal_quantile(0.25) == -normal_quantile(0.75));
    REQUIRE(normal_quantile(0.125) == -normal_quantile(0.875));
}

TEST_CASE("regularized incomplete beta endpoints and monotonicity") {
    REQUIRE(ibeta(2.0, 3.0, 0.0) == 0.0);
    REQUIRE(ibeta(2.0, 3.0, 1.0) == 1.0);
    double prev = 0.0;
    for (double x = 0.05; x < 1.0; x += 0.05) {
        const double v = ibeta(2.5, 0.5, x);
        REQUIRE(v >= prev);
        prev = v;
    }
    REQUIRE_THROWS_AS(ibeta(0.0, 1.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(ibeta(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("t cdf reproduces reference values") {
    // Reference: independently computed Student-t CDF values.
    REQUIRE_THAT(student_t_cdf(1.0, 1), WithinAbs(0.75, 1e-14));
    REQUIRE_THAT(student_t_cdf(2.0, 2), WithinAbs(0.908248290463863, 1e-14));
    REQUIRE_THAT(student_t_cdf(-1.5, 5), WithinAbs(0.09695184012123657, 1e-14));
    REQUIRE_THAT(student_t_cdf(0.5, 10), WithinAbs(0.6860531971285135, 1e-14));
    REQUIRE_THAT(student_t_cdf(3.0, 30), WithinAbs(0.997305017967174, 1e-13));
    REQUIRE_THAT(student_t_cdf(-2.5, 100), WithinAbs(0.007022894562038583, 1e-14));
    REQUIRE_THAT(student_t_cdf(1.2, 200), WithinAbs(0.8842205654844669, 1e-13));
    REQUIRE(student_t_cdf(0.0, 7) == 0.5);
}

TEST_CASE("t cdf agrees with the df=1 and df=2 closed forms") {
    const double pi = 3.141592653589793;
    for (double t = -10.0; t <= 10.0; t += 0.125) {
        REQUIRE_THAT(student_t_cdf(t, 1), WithinAbs(0.5 + std::atan(t) / pi, 1e-13));
        REQUIRE_THAT(student_t_cdf(t, 2),
                     WithinAbs(0.5 + t / (2.0 * std::sqrt(2.0 + t * t)), 1e-13));
    }
}

TEST_CASE("t cdf is symmetric: F(-t) + F(t) = 1") {
    for (int df : {1, 2, 3, 5, 10, 30, 100, 200}) {
        for (double t = 0.0; t <= 8.0; t += 0.37) {
            REQUIRE_THAT(student_t_cdf(-t, df) + student_t_cdf(t, df),
                         WithinAbs(1.0, 1e-14));
        }
    }
    REQUIRE_THROWS_AS(student_t_cdf(1.0, 0), std::domain_error);
}

TEST_CASE("two-tailed p-value follows from the cdf") {
    REQUIRE(student_t_two_tailed_p(0.0, 5) == 1.0);
    // I_x(1, 1/2) = 1 - sqrt(1 - x) with x = df/(df + t^2), df = 2, t = 2.
    REQUIRE_THAT(student_t_two_tailed_p(2.0, 2),
                 WithinAbs(1.0 - std::sqrt(2.0 / 3.0), 1e-14));
    // Equal tails: p(t) == p(-t) exactly, since both reduce to the same x.
    for (double t : {0.3, 1.7, 4.4})
        REQUIRE(student_t_two_tailed_p(t, 9) == student_t_two_tailed_p(-t, 9));
    // Consistency with 2 * (1 - F(|t|)).
    for (double t = 0.25; t <= 6.0; t += 0.25)
        REQUIRE_THAT(student_t_two_tailed_p(t, 12),
                     WithinAbs(2.0 * (1.0 - student_t_cdf(t, 12)), 1e-13));
}
