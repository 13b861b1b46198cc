#include "linkforge/quad_control.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "linkforge/numeric.hpp"

namespace linkforge {

const char* to_string(MorseType t) {
    switch (t) {
        case MorseType::minimum: return "minimum";
        case MorseType::maximum: return "maximum";
        case MorseType::degenerate: return "degenerate";
    }
    return "?";
}

namespace {

QuadConfig config_at(const OvalModel& model, const OvalPoint& p) {
    return reconstruct_quad(model.linkage(), p.x, p.y, 1e-6 * model.diag_scale());
}

} // namespace

std::vector<CriticalPoint> critical_points(const OvalModel& model, const ChargeSystem& charges,
                                           const PotentialSpec& spec, int samples) {
    if (samples < 16) throw SolverError("sampling density too low");
    const int N = samples;
    std::vector<double> dvals(static_cast<size_t>(N));
    double e_lo = std::numeric_limits<double>::infinity();
    double e_hi = -std::numeric_limits<double>::infinity();
    double hint = -1.0;
    for (int i = 0; i < N; ++i) {
        const double phi = 2.0 * M_PI * i / N;
        const double r = model.ray_radius(phi, hint);
        hint = r;
        const double w = model.w0() + r * std::cos(phi);
        const double z = model.z0() + r * std::sin(phi);
        const double e = quad_energy_xy(charges, spec, std::sqrt(w), std::sqrt(z));
        e_lo = std::min(e_lo, e);
        e_hi = std::max(e_hi, e);
        dvals[static_cast<size_t>(i)] = quad_potential_derivative(model, charges, phi, spec, r);
    }

    std::vector<double> roots;
    for (int i = 0; i < N; ++i) {
        const int j = (i + 1) % N;
        const double v1 = dvals[static_cast<size_t>(i)], v2 = dvals[static_cast<size_t>(j)];
        const double p1 = 2.0 * M_PI * i / N;
        const double p2 = p1 + 2.0 * M_PI / N;
        if (v1 == 0.0) { roots.push_back(p1); continue; }
        if (v1 * v2 < 0.0) {
            auto f = [&](double phi) { return quad_potential_derivative(model, charges, phi, spec); };
            roots.push_back(num::brent_root(f, p1, p2, v1, v2, 1e-14));
        }
    }
    // Merge duplicates across the wrap.
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (!unique_roots.empty() && num::angle_dist(unique_roots.back(), r) < 1e-9) continue;
        unique_roots.push_back(r);
    }
    if (unique_roots.size() >= 2 &&
        num::angle_dist(unique_roots.front(), unique_roots.back()) < 1e-9)
        unique_roots.pop_back();

    const double dd_scale = std::max(e_hi - e_lo, 1e-300);
    std::vector<CriticalPoint> out;
    out.reserve(unique_roots.size());
    for (double phi : unique_roots) {
        const OvalPoint p = oval_point(model, phi);
        CriticalPoint cp;
        cp.phi = phi;
        cp.x = p.x;
        cp.y = p.y;
        cp.energy = quad_energy_xy(charges, spec, p.x, p.y);
        const double h = 1e-5;
        const double d2 = (quad_potential_derivative(model, charges, phi + h, spec) -
                           quad_potential_derivative(model, charges, phi - h, spec)) / (2.0 * h);
        if (d2 > 1e-8 * dd_scale) cp.morse_type = MorseType::minimum;
        else if (d2 < -1e-8 * dd_scale) cp.morse_type = MorseType::maximum;
        else cp.morse_type = MorseType::degenerate;
        cp.region = classify_quad(config_at(model, p));
        cp.is_global_min = false;
        out.push_back(cp);
    }
    double best = std::numeric_limits<double>::infinity();
    int best_i = -1;
    for (int i = 0; i < static_cast<int>(out.size()); ++i) {
        if (out[static_cast<size_t>(i)].energy < best) {
            best = out[static_cast<size_t>(i)].energy;
            best_i = i;
        }
    }
    if (best_i >= 0) out[static_cast<size_t>(best_i)].is_global_min = true;
    return out;
}

std::vector<CriticalPoint> critical_points(const OvalModel& model, double t,
                                           const PotentialSpec& spec, int samples,
                                           int controlled_vertex) {
    return critical_points(model, ChargeSystem::quad(t, controlled_vertex), spec, samples);
}

double stabilize_quad(const OvalModel& model, const QuadConfig& target, int controlled_vertex,
                      const PotentialSpec& spec) {
    const QuadRegion region = classify_quad(target);
    const bool on_x = (controlled_vertex == 1 || controlled_vertex == 3);
    if (region == QuadRegion::aligned) {
        // Boundary of the convex part: the x-maximal or the y-maximal configuration.
        const double dx = std::abs(target.x - model.x_hi());
        const double dy = std::abs(target.y - model.y_hi());
        const bool at_x_max = dx < dy;
        // Charge on x13: E = t f(x) + f(y); t -> infinity pushes the minimum to x-max,
        // t = 0 leaves the y-max minimum. Swapped for a charge on x24.
        if (on_x) return at_x_max ? std::numeric_limits<double>::infinity() : 0.0;
        return at_x_max ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (region != QuadRegion::strictly_convex)
        throw NotConvex("stabilizing charge exists only for convex configurations");

    const double w = target.x * target.x, z = target.y * target.y;
    OvalPoint p;
    p.phi = oval_phi_of(model, w, z);
    p.w = w; p.z = z; p.x = target.x; p.y = target.y;
    p.sgn_fx = p.sgn_fy = 0;
    const double yprime = branch_first_derivative(model, p);
    // Criticality of t f(x) + f(y) along the branch y(x): t f'(x) + f'(y) y' = 0.
    // For coulomb this is t = -x^2 y' / y^2 (charge on x13) and its reciprocal
    // form for a charge on x24.
    const double t = on_x ? -spec.dterm(target.y) * yprime / spec.dterm(target.x)
                          : -spec.dterm(target.x) / (spec.dterm(target.y) * yprime);
    if (!(t > 0.0)) throw NumericalFailure("stabilizing charge came out non-positive");
    return t;
}

QuadConfig charge_to_minimum(const OvalModel& model, double t, int controlled_vertex,
                             const PotentialSpec& spec) {
    if (std::isnan(t) || t < 0.0) throw SolverError("charge must be nonnegative");
    const bool on_x = (controlled_vertex == 1 || controlled_vertex == 3);
    const auto at_phi = [&](double phi) { return oval_point(model, phi); };

    if (t == 0.0 || std::isinf(t)) {
        // Boundary charges: the free diagonal term alone decides the minimum;
        // pick the lower-energy extremum of that diagonal.
        const bool free_is_y = (t == 0.0) ? on_x : !on_x;
        const OvalPoint a = free_is_y ? at_phi(model.phi_y_max()) : at_phi(model.phi_x_max());
        const OvalPoint b = free_is_y ? at_phi(model.phi_y_min()) : at_phi(model.phi_x_min());
        const double ea = free_is_y ? spec.term(a.y) : spec.term(a.x);
        const double eb = free_is_y ? spec.term(b.y) : spec.term(b.x);
        const OvalPoint& pick = (ea <= eb) ? a : b;
        return reconstruct_quad(model.linkage(), pick.x, pick.y, 1e-6 * model.diag_scale());
    }

    const auto cps = critical_points(model, ChargeSystem::quad(t, controlled_vertex), spec);
    const CriticalPoint* found = nullptr;
    for (const auto& cp : cps) {
        if (cp.region == QuadRegion::strictly_convex) {
            if (found) throw NumericalFailure("multiple convex critical points");
            found = &cp;
        }
    }
    if (!found) throw NumericalFailure("no convex critical point located");
    return reconstruct_quad(model.linkage(), found->x, found->y, 1e-6 * model.diag_scale());
}

FlowStage gradient_flow(const OvalModel& model, const ChargeSystem& charges, double start_phi,
                        const PotentialSpec& spec, const FlowOptions& options) {
    FlowStage stage;
    stage.t = charges.controlled_vertex() ? charges.charge(charges.controlled_vertex())
                                          : std::numeric_limits<double>::quiet_NaN();
    stage.converged = false;

    double phi = num::wrap_angle(start_phi);
    double energy = quad_potential_at(model, charges, phi, spec);
    const double tol = options.tol > 0.0 ? options.tol : 1e-11 * std::max(1.0, std::abs(energy));
    auto record = [&](double p, double e) {
        const OvalPoint pt = oval_point(model, p);
        stage.iterates.push_back({p, pt.x, pt.y, e});
    };
    record(phi, energy);

    double eta = options.step;
    int flat = 0;
    for (int it = 0; it < options.max_iter; ++it) {
        const double d = quad_potential_derivative(model, charges, phi, spec);
        if (std::abs(d) < tol) { stage.converged = true; break; }
        double dphi = -eta * d;
        dphi = std::clamp(dphi, -options.max_step, options.max_step);
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            const double cand = num::wrap_angle(phi + dphi);
            const double e_cand = quad_potential_at(model, charges, cand, spec);
            if (e_cand <= energy) {
                if (e_cand == energy) flat++; else flat = 0;
                phi = cand;
                energy = e_cand;
                accepted = true;
                if (bt == 0) eta = std::min(eta * 1.5, options.step * 1e3);
                else eta = std::max(eta * std::pow(0.5, bt), options.step * 1e-6);
                break;
            }
            dphi *= 0.5;
        }
        if (!accepted || flat > 8) break;   // stalled below floating-point resolution
        record(phi, energy);
    }

    if (options.polish) {
        // Widen a probe window until it brackets a minimum of E; a window
        // whose smallest resolving scale shows a maximum shape means the flow
        // is parked on a maximum and must stay there.
        for (double h = 1e-7; h < 0.6; h *= 4.0) {
            const double dm = quad_potential_derivative(model, charges, phi - h, spec);
            const double dp = quad_potential_derivative(model, charges, phi + h, spec);
            if (dm == 0.0 || dp == 0.0) continue;
            if (dm > 0.0 && dp < 0.0) break;
            if (dm < 0.0 && dp > 0.0) {
                auto f = [&](double q) { return quad_potential_derivative(model, charges, q, spec); };
                const double root = num::brent_root(f, phi - h, phi + h, dm, dp, 1e-15);
                const double e_root = quad_potential_at(model, charges, root, spec);
                // allow an ulp of noise; the recorded energy keeps the trace monotone
                if (e_root <= energy + 1e-14 * std::abs(energy) + 1e-300) {
                    phi = num::wrap_angle(root);
                    energy = std::min(e_root, energy);
                    record(phi, energy);
                    stage.converged = true;
                }
                break;
            }
        }
    }
    if (!stage.converged)
        stage.converged = std::abs(quad_potential_derivative(model, charges, phi, spec)) < tol;
    return stage;
}

FlowTrace navigate(const OvalModel& model, const QuadConfig& start, const QuadConfig& target,
                   int controlled_vertex, const FlowOptions& options) {
    const double t_prime = stabilize_quad(model, target, controlled_vertex);
    if (std::isinf(t_prime) || t_prime == 0.0)
        throw NotConvex("navigation target must be strictly convex");

    const double start_phi = oval_phi_of(model, start.x * start.x, start.y * start.y);
    FlowStage s1 = gradient_flow(model, ChargeSystem::quad(0.0, controlled_vertex), start_phi,
                                 PotentialSpec::coulomb(), options);
    const double mid_phi = s1.iterates.back().phi;
    FlowStage s2 = gradient_flow(model, ChargeSystem::quad(t_prime, controlled_vertex), mid_phi,
                                 PotentialSpec::coulomb(), options);

    const FlowSample last = s2.iterates.back();
    QuadConfig final_config =
        reconstruct_quad(model.linkage(), last.x, last.y, 1e-6 * model.diag_scale());
    const bool reached =
        std::hypot(last.x - target.x, last.y - target.y) <= 1e-6 * model.diag_scale();
    FlowTrace trace{{}, reached, std::move(final_config)};
    trace.stages.push_back(std::move(s1));
    trace.stages.push_back(std::move(s2));
    return trace;
}

CensusReport census(const CensusOptions& options) {
    CensusReport report;
    report.options = options;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> side_dist(options.sides_lo, options.sides_hi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto sample_sides = [&]() -> std::array<double, 4> {
        if (options.fixed_sides.size() == 4) {
            return {options.fixed_sides[0], options.fixed_sides[1], options.fixed_sides[2],
                    options.fixed_sides[3]};
        }
        for (int guard = 0; guard < 100000; ++guard) {
            std::array<double, 4> s{side_dist(rng), side_dist(rng), side_dist(rng), side_dist(rng)};
            Linkage l = Linkage::quad(s[0], s[1], s[2], s[3]);
            if (!l.moduli_nonempty()) continue;
            // Practical nondegeneracy margin keeps the oval well conditioned.
            double m = l.perimeter();
            for (int s1 : {1, -1})
                for (int s2 : {1, -1})
                    for (int s3 : {1, -1})
                        m = std::min(m, std::abs(s[0] + s1 * s[1] + s2 * s[2] + s3 * s[3]));
            if (m <= 1e-6 * l.perimeter()) continue;
            return s;
        }
        throw NumericalFailure("census side sampler failed to find a valid linkage");
    };

    for (int trial = 0; trial < options.trials; ++trial) {
        const std::array<double, 4> sides = sample_sides();
        double t;
        if (options.t_zero) t = 0.0;
        else if (!std::isnan(options.fixed_t)) t = options.fixed_t;
        else t = options.t_lo + (options.t_hi - options.t_lo) * (1.0 - unit(rng));

        try {
            const OvalModel model = build_oval(Linkage::quad(sides[0], sides[1], sides[2], sides[3]));
            const auto cps = critical_points(model, ChargeSystem::quad(t), options.spec,
                                             options.samples);
            CensusRow row;
            row.trial = trial;
            row.sides = sides;
            row.t = t;
            row.count = static_cast<int>(cps.size());
            for (const auto& cp : cps) row.types.push_back(cp.morse_type);
            report.histogram[row.count]++;
            report.max_count = std::max(report.max_count, row.count);
            if (row.count > 4) report.exceed_trials.push_back(trial);
            report.rows.push_back(std::move(row));
        } catch (const SolverError&) {
            report.skipped++;
        }
    }
    return report;
}

} // namespace linkforge
