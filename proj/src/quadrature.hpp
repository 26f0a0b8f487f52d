// Adaptive Simpson quadrature for scalar, matrix and superoperator integrands.
#pragma once

#include <cmath>

namespace qdmap::detail {

template <class T, class F, class Norm>
class AdaptiveSimpson {
public:
    AdaptiveSimpson(F& f, Norm& norm) : f_(f), norm_(norm) {}

    T integrate(double a, double b, double tol, int max_depth) {
        const T fa = f_(a);
        const T fm = f_(0.5 * (a + b));
        const T fb = f_(b);
        return recurse(a, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, max_depth);
    }

private:
    static T rule(double lo, double hi, const T& flo, const T& fmid, const T& fhi) {
        return T(((hi - lo) / 6.0) * (flo + 4.0 * fmid + fhi));
    }

    T recurse(double lo, double hi, const T& flo, const T& fmid, const T& fhi, const T& whole, double eps,
              int depth) {
        const double mid = 0.5 * (lo + hi);
        const T fl = f_(0.5 * (lo + mid));
        const T fr = f_(0.5 * (mid + hi));
        const T left = rule(lo, mid, flo, fl, fmid);
        const T right = rule(mid, hi, fmid, fr, fhi);
        const T both = T(left + right);
        const T diff = T(both - whole);
        if (depth <= 0 || norm_(diff) <= 15.0 * eps)
            return T(both + (1.0 / 15.0) * diff);
        return T(recurse(lo, mid, flo, fl, fmid, left, 0.5 * eps, depth - 1) +
                 recurse(mid, hi, fmid, fr, fhi, right, 0.5 * eps, depth - 1));
    }

    F& f_;
    Norm& norm_;
};

// The integral of f over [a, b], split into `panels` equal pieces so that a
// periodic integrand cannot fool the first error estimate.
template <class T, class F, class Norm>
T adaptive_simpson(F f, double a, double b, double tol, Norm norm, const T& zero, int panels = 1,
                   int max_depth = 40) {
    if (a == b)
        return zero;
    AdaptiveSimpson<T, F, Norm> s(f, norm);
    T acc = zero;
    const double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * w;
        const double hi = k + 1 == panels ? b : lo + w;
        acc = T(acc + s.integrate(lo, hi, tol / panels, max_depth));
    }
    return acc;
}

template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int panels = 1, int max_depth = 40) {
    return adaptive_simpson<double>(f, a, b, tol, [](double x) { return std::abs(x); }, 0.0, panels, max_depth);
}

// Panel count giving roughly `per_unit` panels per unit length.
inline int panels_for(double a, double b, double per_unit = 16.0) {
    const double n = std::ceil(std::abs(b - a) * per_unit);
    return n < 1.0 ? 1 : static_cast<int>(n);
}

} // namespace qdmap::detail
