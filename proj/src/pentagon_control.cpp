#include "linkforge/pentagon_control.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "linkforge/numeric.hpp"

namespace linkforge {

namespace {

constexpr double kChartMargin = 1e-6;

// Slack of every reconstruction triangle inequality at (x13, x35), side 1.
double chart_slack(double x13, double x35) {
    double m = 2.0 - x13;
    m = std::min(m, 2.0 - x35);
    m = std::min(m, x13 + x35 - 1.0);
    m = std::min(m, 1.0 - std::abs(x13 - x35));
    m = std::min(m, std::min(x13, x35));
    return m;
}

void require_chart_interior(double x13, double x35, double margin) {
    if (chart_slack(x13, x35) < margin)
        throw ChartBoundary("configuration too close to a reconstruction-triangle fold");
}

// Dependent diagonals (x14, x24, x25) in side units for the chart of `cfg`.
std::array<double, 3> dependent_diagonals(double x13, double x35, const std::array<int, 3>& br) {
    const PentagonConfig c = reconstruct_pentagon(x13, x35, br);
    return {c.diagonals[1], c.diagonals[2], c.diagonals[3]};
}

std::array<double, 5> chart_diagonals(double x13, double x35, const std::array<int, 3>& br) {
    return reconstruct_pentagon(x13, x35, br).diagonals;
}

double chart_energy(const ChargeSystem& q, double x13, double x35, const std::array<int, 3>& br) {
    return pentagon_energy(q, PotentialSpec::coulomb(), chart_diagonals(x13, x35, br));
}

// Richardson central difference of the chart energy; h in side units.
std::array<double, 2> chart_energy_gradient(const ChargeSystem& q, double x13, double x35,
                                            const std::array<int, 3>& br, double h) {
    auto e13 = [&](double u) { return chart_energy(q, u, x35, br); };
    auto e35 = [&](double v) { return chart_energy(q, x13, v, br); };
    return {num::richardson_diff(e13, x13, h), num::richardson_diff(e35, x35, h)};
}

} // namespace

PartialSet diagonal_partials(const PentagonConfig& config) {
    const double h = 1e-5;
    require_chart_interior(config.x13, config.x35, std::max(kChartMargin, 2.0 * h));
    const auto& br = config.branches;

    PartialSet p{};
    for (int k = 0; k < 3; ++k) {
        auto f35 = [&](double v) { return dependent_diagonals(config.x13, v, br)[static_cast<size_t>(k)]; };
        auto f13 = [&](double u) { return dependent_diagonals(u, config.x35, br)[static_cast<size_t>(k)]; };
        const double d1 = num::richardson_diff(f35, config.x35, h);
        const double d2 = num::richardson_diff(f13, config.x13, h);
        if (k == 0) { p.alpha1 = d1; p.alpha2 = d2; }
        else if (k == 1) { p.beta1 = d1; p.beta2 = d2; }
        else { p.gamma1 = d1; p.gamma2 = d2; }
    }
    return p;
}

StabilizingPair stabilize_pentagon(const PentagonConfig& config) {
    if (!is_strictly_convex(config))
        throw NotStrictlyConvex("stabilizing pair exists only for strictly convex pentagons");
    const PartialSet p = diagonal_partials(config);
    const double x13 = config.x13, x35 = config.x35;
    const auto d = chart_diagonals(x13, x35, config.branches);
    const double x14 = d[1], x24 = d[2], x25 = d[3];

    const double A = p.alpha1 / (x14 * x14) + p.beta1 / (x24 * x24);
    const double B = p.gamma1 / (x25 * x25) -
                     (x13 * x13 / (x35 * x35)) * (p.alpha2 / (x14 * x14) + p.beta2 / (x24 * x24));
    const double C = -(x13 * x13) * p.gamma2 / (x35 * x35 * x25 * x25);

    const double coeff_scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    if (std::abs(C) < 1e-14 * coeff_scale)
        throw QuadraticDegenerate("leading coefficient vanished");
    if (!(A * C < 0.0))
        throw NumericalFailure("quadratic has no sign-split root pair (AC >= 0)");

    double r0 = 0.0, r1 = 0.0;
    if (num::solve_quadratic(C, B, A, r0, r1) == 0)
        throw NumericalFailure("quadratic lost its real roots");
    const double s_pos = (r0 > 0.0) ? r0 : r1;
    const double s_neg = (r0 > 0.0) ? r1 : r0;

    auto recover_t = [&](double s) {
        return -(x13 * x13) *
               (p.alpha2 / (x14 * x14) + p.beta2 / (x24 * x24) + s * p.gamma2 / (x25 * x25));
    };
    StabilizingPair pair{s_pos, recover_t(s_pos), A, B, C, s_neg, recover_t(s_neg)};
    if (!(pair.s > 0.0) || !(pair.t > 0.0))
        throw NumericalFailure("stabilizing pair not positive");
    const double cert = verify_critical(config, pair.s, pair.t);
    if (!(cert <= 1e-6))
        throw NumericalFailure("gradient certificate exceeded tolerance");
    return pair;
}

double verify_critical(const PentagonConfig& config, double s, double t) {
    const double h = 1e-4;
    require_chart_interior(config.x13, config.x35, std::max(kChartMargin, 2.0 * h));
    const ChargeSystem q = ChargeSystem::pentagon(s, t);
    const auto g = chart_energy_gradient(q, config.x13, config.x35, config.branches, h);
    const double energy = chart_energy(q, config.x13, config.x35, config.branches);
    return std::hypot(g[0], g[1]) / std::abs(energy);   // side = 1 in chart units
}

double boundary_descent_check(const PentagonConfig& config, double s, double t) {
    const int k = aligned_pentagon_vertex(config);
    if (k == 0) throw NotAligned("no aligned vertex");
    const auto& v = config.vertices;
    const size_t i = static_cast<size_t>(k - 1);
    const Vec2 edge = v[(i + 1) % 5] - v[i];
    Vec2 n(-edge.y(), edge.x());
    n.normalize();
    // Pull away from the polygon body.
    Vec2 centroid(0, 0);
    for (const auto& pt : v) centroid += pt / 5.0;
    if (n.dot(v[i] - centroid) < 0.0) n = -n;

    const std::vector<double> q = ChargeSystem::pentagon(s, t).charges();
    double deriv = 0.0;
    for (size_t off : {2, 3}) {   // the two non-neighbors of vertex k
        const size_t j = (i + off) % 5;
        const Vec2 d = v[i] - v[j];
        const double dist = d.norm();
        deriv += q[i] * q[j] * (-n.dot(d) / (dist * dist * dist));
    }
    return deriv;
}

MixedSignReport mixed_sign_consistency(const PentagonConfig& config) {
    const StabilizingPair pair = stabilize_pentagon(config);
    MixedSignReport rep;
    rep.s_neg = pair.s_neg;
    rep.t_companion = pair.t_companion;
    rep.ac = pair.A * pair.C;
    rep.consistent = pair.s_neg < 0.0 && pair.t_companion <= 1e-10;
    return rep;
}

namespace {

struct ChartState {
    double x13, x35;
    std::array<int, 3> br;
};

// Reflect a proposed chart point back into the valid region, flipping the
// branch signs belonging to the crossed fold: the apex folds (x13 or x35 at 2)
// flip their own apex, the central-triangle folds flip both apex signs (the
// third sign is a reflection gauge and never changes the distances).
// Best-effort continuation; the caller's line search guards every transition.
void reflect_into_chart(ChartState& st, double margin) {
    for (int guard = 0; guard < 16; ++guard) {
        if (st.x13 > 2.0 - margin) { st.x13 = 2.0 * (2.0 - margin) - st.x13; st.br[0] = -st.br[0]; continue; }
        if (st.x35 > 2.0 - margin) { st.x35 = 2.0 * (2.0 - margin) - st.x35; st.br[1] = -st.br[1]; continue; }
        if (st.x13 + st.x35 < 1.0 + margin) {
            const double c = 1.0 + margin;
            const double u = st.x13, v = st.x35;
            st.x13 = c - v; st.x35 = c - u;
            st.br[0] = -st.br[0]; st.br[1] = -st.br[1];
            continue;
        }
        if (st.x13 - st.x35 > 1.0 - margin) {
            const double c = 1.0 - margin;
            const double u = st.x13, v = st.x35;
            st.x13 = v + c; st.x35 = u - c;
            st.br[0] = -st.br[0]; st.br[1] = -st.br[1];
            continue;
        }
        if (st.x35 - st.x13 > 1.0 - margin) {
            const double c = 1.0 - margin;
            const double u = st.x13, v = st.x35;
            st.x13 = v - c; st.x35 = u + c;
            st.br[0] = -st.br[0]; st.br[1] = -st.br[1];
            continue;
        }
        if (st.x13 < margin) { st.x13 = 2.0 * margin - st.x13; continue; }
        if (st.x35 < margin) { st.x35 = 2.0 * margin - st.x35; continue; }
        return;
    }
}

struct DescentResult {
    double energy;
    ChartState state;
    bool converged;
};

// One gradient-descent pass with backtracking and fold reflections.
// Returns true when the scaled gradient met the target.
bool descent_pass(const ChargeSystem& q, ChartState& st, double& energy, int max_iter,
                  double grad_tol) {
    const double margin = 1e-5;
    const double grad_h = 1e-6;
    double eta = 0.02;
    for (int it = 0; it < max_iter; ++it) {
        auto g13 = [&](double u) { return chart_energy(q, u, st.x35, st.br); };
        auto g35 = [&](double v) { return chart_energy(q, st.x13, v, st.br); };
        const double gx = num::central_diff(g13, st.x13, grad_h);
        const double gy = num::central_diff(g35, st.x35, grad_h);
        const double gn = std::hypot(gx, gy);
        if (gn <= grad_tol * std::abs(energy)) return true;

        bool accepted = false;
        double step = eta;
        for (int bt = 0; bt < 50; ++bt) {
            ChartState cand = st;
            cand.x13 -= step * gx / std::max(gn, 1e-300) * std::min(gn, 1.0);
            cand.x35 -= step * gy / std::max(gn, 1e-300) * std::min(gn, 1.0);
            reflect_into_chart(cand, margin);
            const double e_cand = chart_energy(q, cand.x13, cand.x35, cand.br);
            if (e_cand < energy) {
                st = cand;
                energy = e_cand;
                accepted = true;
                eta = (bt == 0) ? std::min(eta * 1.4, 0.2)
                                : std::max(eta * std::pow(0.5, bt), 1e-10);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return false;   // pinned, typically on a fold seam
    }
    return false;
}

// Newton polish on the 2x2 finite-difference Hessian near a minimum.
void newton_pass(const ChargeSystem& q, ChartState& st, double& energy) {
    for (int polish = 0; polish < 12; ++polish) {
        const double h = 1e-5;
        auto E = [&](double u, double v) { return chart_energy(q, u, v, st.br); };
        if (chart_slack(st.x13, st.x35) < 4.0 * h) return;
        const double gx = (E(st.x13 + h, st.x35) - E(st.x13 - h, st.x35)) / (2 * h);
        const double gy = (E(st.x13, st.x35 + h) - E(st.x13, st.x35 - h)) / (2 * h);
        if (std::hypot(gx, gy) <= 1e-10 * std::abs(energy)) return;
        const double e0 = E(st.x13, st.x35);
        const double hxx = (E(st.x13 + h, st.x35) - 2 * e0 + E(st.x13 - h, st.x35)) / (h * h);
        const double hyy = (E(st.x13, st.x35 + h) - 2 * e0 + E(st.x13, st.x35 - h)) / (h * h);
        const double hxy = (E(st.x13 + h, st.x35 + h) - E(st.x13 + h, st.x35 - h) -
                            E(st.x13 - h, st.x35 + h) + E(st.x13 - h, st.x35 - h)) / (4 * h * h);
        const double det = hxx * hyy - hxy * hxy;
        if (!(det > 0.0) || !(hxx > 0.0)) return;
        ChartState cand = st;
        cand.x13 -= (hyy * gx - hxy * gy) / det;
        cand.x35 -= (hxx * gy - hxy * gx) / det;
        if (chart_slack(cand.x13, cand.x35) < 2.0 * h) return;
        const double e_cand = chart_energy(q, cand.x13, cand.x35, cand.br);
        if (e_cand > energy + 1e-12 * std::abs(energy)) return;
        st = cand;
        energy = e_cand;
    }
}

DescentResult descend_chart(const ChargeSystem& q, ChartState st, int max_iter,
                            std::uint64_t restart_seed) {
    const double margin = 1e-5;
    reflect_into_chart(st, margin);
    double energy = chart_energy(q, st.x13, st.x35, st.br);
    std::mt19937_64 restart_rng(restart_seed);
    std::uniform_real_distribution<double> u13(0.55, 1.95), u35(0.55, 1.95);

    ChartState best = st;
    double best_energy = energy;
    for (int attempt = 0; attempt < 12; ++attempt) {
        descent_pass(q, st, energy, max_iter, 1e-7);
        newton_pass(q, st, energy);
        if (energy < best_energy) { best = st; best_energy = energy; }

        auto g13 = [&](double u) { return chart_energy(q, u, best.x35, best.br); };
        auto g35 = [&](double v) { return chart_energy(q, best.x13, v, best.br); };
        const double gn = std::hypot(num::central_diff(g13, best.x13, 1e-6),
                                     num::central_diff(g35, best.x35, 1e-6));
        if (gn <= 1e-6 * std::abs(best_energy)) return {best_energy, best, true};

        // Pinned away from a genuine minimum: resume from a fresh interior
        // point of a random sign chart.
        ChartState fresh{u13(restart_rng), u35(restart_rng),
                         {restart_rng() & 1 ? 1 : -1, restart_rng() & 1 ? 1 : -1, 1}};
        reflect_into_chart(fresh, margin);
        st = fresh;
        energy = chart_energy(q, st.x13, st.x35, st.br);
    }
    return {best_energy, best, false};
}

} // namespace

ProbeReport global_min_probe(const PentagonConfig& config, double s, double t, int seeds,
                             std::uint64_t seed) {
    const ChargeSystem q = ChargeSystem::pentagon(s, t);
    ProbeReport rep;
    rep.reference_energy = pentagon_energy(q, PotentialSpec::coulomb(),
                                           chart_diagonals(config.x13, config.x35, config.branches));
    rep.best_energy = rep.reference_energy;
    rep.verdict = ProbeVerdict::no_lower_found;
    if (seeds <= 0) {
        rep.vacuous = true;
        return rep;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const std::array<std::array<int, 3>, 8> all_branches{{{1, 1, 1}, {1, 1, -1}, {1, -1, 1},
                                                          {1, -1, -1}, {-1, 1, 1}, {-1, 1, -1},
                                                          {-1, -1, 1}, {-1, -1, -1}}};
    for (int k = 0; k < seeds; ++k) {
        const auto br = all_branches[static_cast<size_t>(k) % all_branches.size()];
        // Uniform over the chart triangle with a pole-clamped margin.
        double x13 = 0.0, x35 = 0.0;
        for (int guard = 0; guard < 1000; ++guard) {
            x13 = 0.05 + 1.94 * pick(rng);
            x35 = 0.05 + 1.94 * pick(rng);
            if (chart_slack(x13, x35) > 1e-3) break;
        }
        DescentResult res = descend_chart(q, {x13, x35, br}, 600,
                                          seed ^ (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k)));
        rep.descents++;
        if (res.converged) rep.converged++;
        if (res.energy < rep.best_energy) {
            rep.best_energy = res.energy;
            rep.witness = ProbeWitness{res.state.x13, res.state.x35, res.state.br, res.energy};
        }
    }
    if (rep.best_energy < rep.reference_energy - 1e-9 * std::abs(rep.reference_energy))
        rep.verdict = ProbeVerdict::lower_found;
    else
        rep.witness.reset();
    return rep;
}

} // namespace linkforge
