#pragma once
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "linkforge/potential.hpp"

namespace linkforge {

enum class MorseType { minimum, maximum, degenerate };
const char* to_string(MorseType t);

/// An equilibrium of the potential on the moduli circle.
struct CriticalPoint {
    double phi;
    double x, y;
    double energy;
    MorseType morse_type;
    QuadRegion region;
    bool is_global_min;
};

struct FlowSample {
    double phi, x, y, energy;
};

/// One descent run under a fixed controlling charge.
struct FlowStage {
    double t;
    std::vector<FlowSample> iterates;
    bool converged;
};

/// Record of a navigation run: charge schedule and all iterates.
struct FlowTrace {
    std::vector<FlowStage> stages;
    bool converged;
    QuadConfig final_config;
};

/// All zeros of dE/dphi on [0, 2pi), typed and classified. Dense sampling at
/// `samples` points with sign-change bracketing; complete for critical points
/// separated by more than 2pi/samples.
std::vector<CriticalPoint> critical_points(const OvalModel& model, const ChargeSystem& charges,
                                           const PotentialSpec& spec = PotentialSpec::coulomb(),
                                           int samples = 4096);

/// Convenience overload: charge t at `controlled_vertex`, remaining charges +1.
std::vector<CriticalPoint> critical_points(const OvalModel& model, double t,
                                           const PotentialSpec& spec = PotentialSpec::coulomb(),
                                           int samples = 4096, int controlled_vertex = 1);

/// The unique charge making `target` a critical (and global minimum) point of
/// the effective potential, with the controlling charge at `controlled_vertex`.
/// Strictly convex targets give a finite positive charge; aligned targets give
/// the boundary limits 0 or +infinity. Other regions raise NotConvex.
double stabilize_quad(const OvalModel& model, const QuadConfig& target,
                      int controlled_vertex = 1,
                      const PotentialSpec& spec = PotentialSpec::coulomb());

/// The global-minimum configuration for charge t >= 0 (t may be +infinity);
/// inverse of stabilize_quad.
QuadConfig charge_to_minimum(const OvalModel& model, double t, int controlled_vertex = 1,
                             const PotentialSpec& spec = PotentialSpec::coulomb());

struct FlowOptions {
    double step = 1e-2;        ///< initial step scale (rad per unit gradient)
    double tol = 0.0;          ///< |dE/dphi| threshold; 0 picks 1e-11 * max(1, |E0|)
    int max_iter = 20000;
    double max_step = 0.2;     ///< bound on |delta phi| per iterate
    bool polish = true;        ///< root-polish the critical angle at the end
};

/// Backtracking descent of E(phi); energy is non-increasing along the trace.
FlowStage gradient_flow(const OvalModel& model, const ChargeSystem& charges, double start_phi,
                        const PotentialSpec& spec = PotentialSpec::coulomb(),
                        const FlowOptions& options = {});

/// Two-stage navigation: flow under t = 0 to the unique minimum, then flow
/// under the stabilizing charge of `target`.
FlowTrace navigate(const OvalModel& model, const QuadConfig& start, const QuadConfig& target,
                   int controlled_vertex = 1, const FlowOptions& options = {});

struct CensusOptions {
    int trials = 1000;
    double sides_lo = 1.0, sides_hi = 10.0;
    double t_lo = 0.0, t_hi = 5.0;     ///< t drawn uniformly from (t_lo, t_hi]
    bool t_zero = false;               ///< force t = 0 in every trial
    std::vector<double> fixed_sides;   ///< when non-empty, use these sides always
    double fixed_t = std::numeric_limits<double>::quiet_NaN();
    PotentialSpec spec = PotentialSpec::coulomb();
    std::uint64_t seed = 0;
    int samples = 4096;
};

struct CensusRow {
    int trial;
    std::array<double, 4> sides;
    double t;
    int count;
    std::vector<MorseType> types;
};

struct CensusReport {
    CensusOptions options;
    std::vector<CensusRow> rows;
    std::map<int, int> histogram;
    int max_count = 0;
    std::vector<int> exceed_trials;   ///< trials with more than four critical points
    int skipped = 0;
};

/// Randomized critical-point census; a conjecture probe, not a theorem check.
/// Trials whose oval construction or enumeration fails are skipped and counted.
CensusReport census(const CensusOptions& options);

} // namespace linkforge
