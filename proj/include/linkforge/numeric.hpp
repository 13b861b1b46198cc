#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "linkforge/errors.hpp"

namespace linkforge::num {

/// Brent root refinement on a bracket [a,b] with f(a)*f(b) <= 0.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb,
                  double xtol = 1e-14, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw NumericalFailure("brent_root: invalid bracket");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc; r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

template <class F>
double brent_root(F&& f, double a, double b, double xtol = 1e-14) {
    return brent_root(f, a, b, f(a), f(b), xtol);
}

/// Golden-section minimization on [a,b]; returns argmin.
template <class F>
double golden_min(F&& f, double a, double b, double xtol = 1e-11, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

/// Roots of q2*s^2 + q1*s + q0 = 0, numerically stable form.
/// Returns number of real roots; roots in ascending order.
inline int solve_quadratic(double q2, double q1, double q0, double& r0, double& r1) {
    if (q2 == 0.0) {
        if (q1 == 0.0) return 0;
        r0 = r1 = -q0 / q1;
        return 1;
    }
    const double disc = q1 * q1 - 4.0 * q2 * q0;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (q1 + (q1 >= 0 ? sq : -sq));
    double a = (q != 0.0) ? q0 / q : -q1 / (2.0 * q2);
    double b = q / q2;
    if (a > b) std::swap(a, b);
    r0 = a; r1 = b;
    return disc == 0.0 ? 1 : 2;
}

/// Real roots of a3 r^3 + a2 r^2 + a1 r + a0 = 0, ascending. Returns the
/// count (0..3). Roots are Newton-polished on the input polynomial.
inline int cubic_roots(double a3, double a2, double a1, double a0, double out[3]) {
    const double scale = std::max({std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
    if (scale == 0.0) return 0;
    int n = 0;
    if (std::abs(a3) < 1e-14 * scale) {
        double r0, r1;
        const int m = solve_quadratic(a2, a1, a0, r0, r1);
        if (m >= 1) out[n++] = r0;
        if (m == 2) out[n++] = r1;
    } else {
        const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
        const double p = c - b * b / 3.0;
        const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        const double shift = -b / 3.0;
        const double disc = 0.25 * q * q + p * p * p / 27.0;
        if (disc > 0.0) {
            const double sq = std::sqrt(disc);
            const double u = std::cbrt(-0.5 * q + sq);
            const double v = std::cbrt(-0.5 * q - sq);
            out[n++] = u + v + shift;
        } else {
            const double rho = std::sqrt(std::max(-p / 3.0, 0.0));
            const double arg = std::clamp(rho == 0.0 ? 0.0 : -0.5 * q / (rho * rho * rho), -1.0, 1.0);
            const double theta = std::acos(arg) / 3.0;
            for (int k = 0; k < 3; ++k)
                out[n++] = 2.0 * rho * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift;
        }
    }
    auto poly = [&](double r) { return ((a3 * r + a2) * r + a1) * r + a0; };
    auto dpoly = [&](double r) { return (3.0 * a3 * r + 2.0 * a2) * r + a1; };
    for (int i = 0; i < n; ++i) {
        double r = out[i];
        for (int it = 0; it < 6; ++it) {
            const double f = poly(r), df = dpoly(r);
            if (df == 0.0) break;
            const double step = f / df;
            r -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
        }
        out[i] = r;
    }
    std::sort(out, out + n);
    return n;
}

/// Richardson-extrapolated central difference of f at x with base step h.
template <class F>
double richardson_diff(F&& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

/// Plain central difference.
template <class F>
double central_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double wrap_angle(double phi) {
    const double two_pi = 2.0 * M_PI;
    phi = std::fmod(phi, two_pi);
    return phi < 0 ? phi + two_pi : phi;
}

/// Cyclic distance between two angles in [0, 2pi).
inline double angle_dist(double a, double b) {
    double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, 2.0 * M_PI - d);
}

} // namespace linkforge::num
