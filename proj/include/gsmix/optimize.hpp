#pragma once

#include <cmath>
#include <stdexcept>

namespace gsmix {

// Golden-section search for the minimum of a unimodal f on [a, b].
// Returns the midpoint of the final bracket once it is narrower than tol.
template <class F>
double golden_min(F&& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    if (b < a) std::swap(a, b);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
    return golden_min([&](double x) { return -f(x); }, a, b, tol);
}

// Bisection for the root of f on [lo, hi]; f(lo) and f(hi) must have
// opposite signs. Stops when the bracket is narrower than tol.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::runtime_error("bisect_root: endpoints do not bracket a root");
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace gsmix
