#pragma once

#include <cmath>
#include <cstddef>

namespace mirrorboot {

namespace detail {

template <typename F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance abs_tol.
// The interval is pre-split into `panels` equal pieces so narrow features
// away from the midpoint are not missed by the first error estimate.
//
// The recursion depth is capped: when |f| is large relative to abs_tol,
// rounding noise in the refinement estimate never drops below the per-level
// tolerance, and an uncapped subdivision would expand an astronomically large
// tree. At the cap the extrapolated estimate is returned, which is already at
// the accuracy floor double precision allows for that integrand.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol, int panels = 32) {
    if (a == b) return 0.0;
    constexpr int kMaxDepth = 16;
    const double width = (b - a) / panels;
    const double panel_tol = abs_tol / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : a + (i + 1) * width;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo);
        const double fmid = f(mid);
        const double fhi = f(hi);
        const double whole = ((hi - lo) / 6.0) * (flo + 4.0 * fmid + fhi);
        total += detail::adaptive_simpson_step(f, lo, hi, flo, fmid, fhi, whole,
                                               panel_tol, kMaxDepth);
    }
    return total;
}

} // namespace mirrorboot
