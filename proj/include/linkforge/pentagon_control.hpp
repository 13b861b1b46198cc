#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "linkforge/potential.hpp"

namespace linkforge {

/// Partial derivatives of the dependent diagonals with respect to the chart
/// coordinates (x35, x13): the 1-set holds x13 fixed, the 2-set holds x35
/// fixed. All values are dimensionless.
///
/// Sign pattern on the strictly convex region: alpha1, beta1, beta2, gamma2
/// are strictly negative, while gamma1 and alpha2 are strictly positive (at
/// the regular pentagon the criticality identities force
/// gamma1 = -1 - alpha1 - beta1 = 1/phi > 0 and alpha2 = -1 - beta2 - gamma2).
struct PartialSet {
    double alpha1;   ///< d x14 / d x35
    double beta1;    ///< d x24 / d x35
    double gamma1;   ///< d x25 / d x35
    double alpha2;   ///< d x14 / d x13
    double beta2;    ///< d x24 / d x13
    double gamma2;   ///< d x25 / d x13
};

/// The unique positive controlling pair for a strictly convex configuration,
/// together with the quadratic A + B s + C s^2 it came from and the companion
/// (negative) root with its recovered t.
struct StabilizingPair {
    double s, t;
    double A, B, C;
    double s_neg;
    double t_companion;
};

struct MixedSignReport {
    double s_neg;
    double t_companion;
    double ac;
    bool consistent;   ///< s_neg < 0 and t_companion <= 1e-10
};

/// Richardson-extrapolated central differences of the reconstruction map,
/// base step 1e-5 in side units.
PartialSet diagonal_partials(const PentagonConfig& config);

/// Solves the two criticality equations of the diagonal potential for (s, t):
/// eliminating t yields A + B s + C s^2 = 0 with AC < 0; the unique positive
/// root and its recovered t make the configuration critical (finite-difference
/// gradient certificate at 1e-6 of E/side).
StabilizingPair stabilize_pentagon(const PentagonConfig& config);

/// Scaled norm (by side/E) of the finite-difference chart gradient of the
/// diagonal potential at (config, s, t).
double verify_critical(const PentagonConfig& config, double s, double t);

/// First-order derivative of the diagonal potential along the pulling flex of
/// the aligned vertex (displaced orthogonally to its collinear edges, all
/// other vertices fixed to first order). Strictly negative for positive
/// charges.
double boundary_descent_check(const PentagonConfig& config, double s, double t);

MixedSignReport mixed_sign_consistency(const PentagonConfig& config);

enum class ProbeVerdict { no_lower_found, lower_found };

struct ProbeWitness {
    double x13, x35;
    std::array<int, 3> branches;
    double energy;
};

struct ProbeReport {
    ProbeVerdict verdict;
    double reference_energy;
    double best_energy;
    int descents = 0;
    int converged = 0;          ///< descents ending with scaled gradient <= 1e-6
    bool vacuous = false;       ///< seeds == 0
    std::optional<ProbeWitness> witness;
};

/// Multi-start local descent of the diagonal potential over the pentagon
/// moduli space, seeded across all branch-sign charts. Heuristic evidence
/// only: no_lower_found is not a proof of global minimality.
ProbeReport global_min_probe(const PentagonConfig& config, double s, double t, int seeds,
                             std::uint64_t seed = 0);

} // namespace linkforge
