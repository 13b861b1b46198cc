#pragma once
#include <cmath>
#include <random>
#include <vector>

#include "linkforge/geometry.hpp"
#include "linkforge/potential.hpp"
#include "linkforge/quad_moduli.hpp"

namespace lft {

using namespace linkforge;

inline Linkage example_linkage() { return Linkage::quad(6.0, 6.5, 6.2, 5.8); }

constexpr double kGolden = 1.6180339887498949;

/// Dense energy sweep over the oval; returns the refined argmin angle.
/// Value-based oracle, independent of the derivative root-finder.
inline double sweep_argmin_phi(const OvalModel& model, const ChargeSystem& charges,
                               const PotentialSpec& spec, int n) {
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    double hint = -1.0;
    std::vector<double> energies(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * M_PI * i / n;
        const double r = model.ray_radius(phi, hint);
        hint = r;
        const double w = model.w0() + r * std::cos(phi);
        const double z = model.z0() + r * std::sin(phi);
        const double e = quad_energy_xy(charges, spec, std::sqrt(w), std::sqrt(z));
        energies[static_cast<size_t>(i)] = e;
        if (e < best) { best = e; best_i = i; }
    }
    const double step = 2.0 * M_PI / n;
    const double lo = best_i * step - step, hi = best_i * step + step;
    auto f = [&](double phi) {
        const OvalPoint p = oval_point(model, phi);
        return quad_energy_xy(charges, spec, p.x, p.y);
    };
    // golden-section refinement
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 120 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - invphi * (b - a); f1 = f(x1); }
        else { a = x1; x1 = x2; f1 = f2; x2 = a + invphi * (b - a); f2 = f(x2); }
    }
    return 0.5 * (a + b);
}

/// Count of local minima/maxima seen in a dense energy sweep (value oracle).
struct SweepCensus {
    int minima = 0, maxima = 0;
};
inline SweepCensus sweep_extrema(const OvalModel& model, const ChargeSystem& charges,
                                 const PotentialSpec& spec, int n) {
    std::vector<double> e(static_cast<size_t>(n));
    double hint = -1.0;
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * M_PI * i / n;
        const double r = model.ray_radius(phi, hint);
        hint = r;
        const double w = model.w0() + r * std::cos(phi);
        const double z = model.z0() + r * std::sin(phi);
        e[static_cast<size_t>(i)] = quad_energy_xy(charges, spec, std::sqrt(w), std::sqrt(z));
    }
    SweepCensus out;
    for (int i = 0; i < n; ++i) {
        const double prev = e[static_cast<size_t>((i + n - 1) % n)];
        const double next = e[static_cast<size_t>((i + 1) % n)];
        const double cur = e[static_cast<size_t>(i)];
        if (cur < prev && cur < next) out.minima++;
        if (cur > prev && cur > next) out.maxima++;
    }
    return out;
}

} // namespace lft
