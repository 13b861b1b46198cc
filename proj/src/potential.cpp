#include "linkforge/potential.hpp"

#include <cmath>

#include "linkforge/numeric.hpp"

namespace linkforge {

ChargeSystem ChargeSystem::quad(double t, int controlled_vertex) {
    if (controlled_vertex < 1 || controlled_vertex > 4)
        throw SolverError("controlled vertex must be 1..4");
    std::vector<double> q(4, 1.0);
    q[static_cast<size_t>(controlled_vertex - 1)] = t;
    return ChargeSystem(std::move(q), false, controlled_vertex);
}

ChargeSystem ChargeSystem::pentagon(double s, double t) {
    // t scales the x13 term, s the x25 term, st the x35 term.
    std::vector<double> q{1.0, 1.0, t, 1.0, s};
    return ChargeSystem(std::move(q), false, 0);
}

ChargeSystem ChargeSystem::generic(std::vector<double> charges) {
    if (charges.size() != 4 && charges.size() != 5)
        throw SolverError("generic charges require 4 or 5 values");
    return ChargeSystem(std::move(charges), true, 0);
}

std::pair<double, double> ChargeSystem::quad_diagonal_coefficients() const {
    if (n() != 4) throw SolverError("quad charge system required");
    return {q_[0] * q_[2], q_[1] * q_[3]};
}

std::array<double, 5> ChargeSystem::pentagon_diagonal_coefficients() const {
    if (n() != 5) throw SolverError("pentagon charge system required");
    return {q_[0] * q_[2], q_[0] * q_[3], q_[1] * q_[3], q_[1] * q_[4], q_[2] * q_[4]};
}

PotentialSpec PotentialSpec::power(double alpha) {
    if (!(alpha > 0.0)) throw InvalidAlpha("alpha must be positive");
    return {Kind::power, alpha};
}

double PotentialSpec::term(double dist) const {
    switch (kind) {
        case Kind::coulomb: return 1.0 / dist;
        case Kind::power: return std::pow(dist, -alpha);
        case Kind::log: return std::log(dist);
    }
    return 0.0;
}

double PotentialSpec::dterm(double dist) const {
    switch (kind) {
        case Kind::coulomb: return -1.0 / (dist * dist);
        case Kind::power: return -alpha * std::pow(dist, -alpha - 1.0);
        case Kind::log: return 1.0 / dist;
    }
    return 0.0;
}

namespace {

template <size_t N>
double pair_sum(const std::array<Vec2, N>& v, const std::vector<double>& q,
                const PotentialSpec& spec, bool diagonals_only, double scale) {
    double sum = 0.0;
    const int n = static_cast<int>(N);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (diagonals_only && adjacent) continue;
            const double d = (v[static_cast<size_t>(j)] - v[static_cast<size_t>(i)]).norm();
            if (d < 1e-12 * scale) throw PoleHit("coincident charged vertices");
            sum += q[static_cast<size_t>(i)] * q[static_cast<size_t>(j)] * spec.term(d);
        }
    }
    return sum;
}

double quad_scale(const QuadConfig& c) { return c.linkage.perimeter(); }
double pent_scale(const PentagonConfig& c) { return 5.0 * c.scale; }

void check_n(const ChargeSystem& charges, int n) {
    if (charges.n() != n) throw SolverError("charge count does not match the linkage");
}

} // namespace

double full_potential(const QuadConfig& config, const ChargeSystem& charges) {
    check_n(charges, 4);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::coulomb(), false,
                    quad_scale(config));
}

double full_potential(const PentagonConfig& config, const ChargeSystem& charges) {
    check_n(charges, 5);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::coulomb(), false,
                    pent_scale(config));
}

double effective_potential(const QuadConfig& config, const ChargeSystem& charges) {
    check_n(charges, 4);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::coulomb(), true,
                    quad_scale(config));
}

double effective_potential(const PentagonConfig& config, const ChargeSystem& charges) {
    check_n(charges, 5);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::coulomb(), true,
                    pent_scale(config));
}

double potential_alpha(const QuadConfig& config, const ChargeSystem& charges, double alpha) {
    check_n(charges, 4);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::power(alpha), true,
                    quad_scale(config));
}

double potential_alpha(const PentagonConfig& config, const ChargeSystem& charges, double alpha) {
    check_n(charges, 5);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::power(alpha), true,
                    pent_scale(config));
}

double potential_log(const QuadConfig& config, const ChargeSystem& charges) {
    check_n(charges, 4);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::logarithmic(), true,
                    quad_scale(config));
}

double potential_log(const PentagonConfig& config, const ChargeSystem& charges) {
    check_n(charges, 5);
    return pair_sum(config.vertices, charges.charges(), PotentialSpec::logarithmic(), true,
                    pent_scale(config));
}

double quad_energy_xy(const ChargeSystem& charges, const PotentialSpec& spec,
                      double x, double y) {
    const auto [c13, c24] = charges.quad_diagonal_coefficients();
    return c13 * spec.term(x) + c24 * spec.term(y);
}

double pentagon_energy(const ChargeSystem& charges, const PotentialSpec& spec,
                       const std::array<double, 5>& diag) {
    const auto c = charges.pentagon_diagonal_coefficients();
    double sum = 0.0;
    for (int i = 0; i < 5; ++i)
        sum += c[static_cast<size_t>(i)] * spec.term(diag[static_cast<size_t>(i)]);
    return sum;
}

double quad_potential_at(const OvalModel& model, const ChargeSystem& charges,
                         double phi, const PotentialSpec& spec, double hint) {
    const OvalPoint p = oval_point(model, phi, hint);
    const double floor = 1e-9 * model.diag_scale();
    if (p.x < floor || p.y < floor) throw PoleHit("diagonal underflow on the oval");
    return quad_energy_xy(charges, spec, p.x, p.y);
}

double quad_potential_derivative(const OvalModel& model, const ChargeSystem& charges,
                                 double phi, const PotentialSpec& spec, double hint) {
    phi = num::wrap_angle(phi);
    const double r = model.ray_radius(phi, hint);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double w = model.w0() + r * cphi, z = model.z0() + r * sphi;
    const double x = std::sqrt(w), y = std::sqrt(z);
    const double floor = 1e-9 * model.diag_scale();
    if (x < floor || y < floor) throw PoleHit("diagonal underflow on the oval");

    const double gw = cubic_gw(model.cubic(), w, z);
    const double gz = cubic_gz(model.cubic(), w, z);
    const double denom = gw * cphi + gz * sphi;
    if (denom == 0.0) throw NumericalFailure("ray tangent to the oval");
    const double rprime = -r * (-gw * sphi + gz * cphi) / denom;
    const double dw = rprime * cphi - r * sphi;
    const double dz = rprime * sphi + r * cphi;

    const auto [c13, c24] = charges.quad_diagonal_coefficients();
    // dE/dw = c13 f'(x) / (2x), likewise for z.
    const double Ew = c13 * spec.dterm(x) / (2.0 * x);
    const double Ez = c24 * spec.dterm(y) / (2.0 * y);
    return Ew * dw + Ez * dz;
}

} // namespace linkforge
