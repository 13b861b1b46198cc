#pragma once
#include <random>

#include "linkforge/quad_moduli.hpp"

namespace linkforge {

using Rng = std::mt19937_64;

/// Uniform sides in [lo, hi]^4 with rejection on empty moduli spaces and on
/// near-degenerate side combinations (relative margin `margin`).
Linkage random_quad_linkage(Rng& rng, double lo = 1.0, double hi = 10.0, double margin = 1e-6);

/// Uniform angle on the strictly convex arc, kept away from the aligned
/// endpoints by `endpoint_margin` (fraction of the arc length).
double random_convex_phi(const OvalModel& model, Rng& rng, double endpoint_margin = 1e-3);

/// Random strictly convex target configuration.
QuadConfig random_convex_quad(const OvalModel& model, Rng& rng, double endpoint_margin = 1e-3);

/// Uniform chart point over the strict-convexity region of the unit
/// equilateral pentagon, with the given margin from the chart boundary.
PentagonConfig random_convex_pentagon(Rng& rng, double boundary_margin = 1e-3);

} // namespace linkforge
