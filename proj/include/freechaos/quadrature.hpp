#pragma once

#include <cmath>
#include <functional>

#include "freechaos/errors.hpp"

namespace freechaos {

namespace detail {

struct SimpsonState {
    double tol = 0.0;
    int max_depth = 0;
    // Symmetric integrands can make the two-panel and four-panel estimates
    // coincide on a coarse split; refuse to accept before this depth.
    int min_depth = 6;
    bool failed = false;
    double unresolved = 0.0;  // sum of error estimates on exhausted intervals

    template <class F>
    double recurse(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol_here, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= min_depth && std::abs(delta) <= 15.0 * tol_here)
            return left + right + delta / 15.0;
        if (depth >= max_depth) {
            failed = true;
            unresolved += std::abs(delta);
            return left + right + delta / 15.0;
        }
        return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol_here, depth + 1) +
               recurse(f, m, b, fm, frm, fb, right, 0.5 * tol_here, depth + 1);
    }
};

}  // namespace detail

// Adaptive Simpson rule: interval bisection around a fixed-order base rule.
// `tol` is an absolute error target.  Throws QuadratureError when refinement
// stalls, carrying the achieved estimate and its error bound.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    detail::SimpsonState state;
    state.tol = tol;
    state.max_depth = max_depth;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = state.recurse(f, a, b, fa, fm, fb, whole, tol, 0);
    if (state.failed)
        throw QuadratureError("adaptive refinement did not converge", value, state.unresolved);
    return value;
}

}  // namespace freechaos
