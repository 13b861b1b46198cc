#include "linkforge/quad_moduli.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "linkforge/numeric.hpp"

namespace linkforge {

double cubic_eval(const CubicCoeffs& c, double w, double z) {
    return c.cwwz * w * w * z + c.cwzz * w * z * z + c.cwz * w * z + c.cw * w + c.cz * z + c.c0;
}

double cubic_gw(const CubicCoeffs& c, double w, double z) {
    return 2.0 * c.cwwz * w * z + c.cwzz * z * z + c.cwz * z + c.cw;
}

double cubic_gz(const CubicCoeffs& c, double w, double z) {
    return c.cwwz * w * w + 2.0 * c.cwzz * w * z + c.cwz * w + c.cz;
}

double cubic_gww(const CubicCoeffs& c, double /*w*/, double z) { return 2.0 * c.cwwz * z; }
double cubic_gwz(const CubicCoeffs& c, double w, double z) {
    return 2.0 * c.cwwz * w + 2.0 * c.cwzz * z + c.cwz;
}
double cubic_gzz(const CubicCoeffs& c, double w, double /*z*/) { return 2.0 * c.cwzz * w; }

double cubic_abs_scale(const CubicCoeffs& c, double w, double z) {
    const double aw = std::abs(w), az = std::abs(z);
    return std::abs(c.cwwz) * aw * aw * az + std::abs(c.cwzz) * aw * az * az +
           std::abs(c.cwz) * aw * az + std::abs(c.cw) * aw + std::abs(c.cz) * az +
           std::abs(c.c0);
}

double cayley_menger(const Linkage& linkage, double x, double y) {
    if (linkage.n() != 4) throw SolverError("cayley_menger: quad linkage required");
    if (x < 0.0 || y < 0.0) throw SolverError("cayley_menger: diagonals must be nonnegative");
    const double A = linkage.side(0) * linkage.side(0);
    const double B = linkage.side(1) * linkage.side(1);
    const double C = linkage.side(2) * linkage.side(2);
    const double D = linkage.side(3) * linkage.side(3);
    const double W = x * x, Z = y * y;
    Eigen::Matrix<double, 5, 5> M;
    M << 0, 1, 1, 1, 1,
         1, 0, A, W, D,
         1, A, 0, B, Z,
         1, W, B, 0, C,
         1, D, Z, C, 0;
    return M.determinant();
}

CubicCoeffs corrected_cubic(const Linkage& linkage) {
    if (linkage.n() != 4) throw SolverError("corrected_cubic: quad linkage required");
    const double A = linkage.side(0) * linkage.side(0);
    const double B = linkage.side(1) * linkage.side(1);
    const double C = linkage.side(2) * linkage.side(2);
    const double D = linkage.side(3) * linkage.side(3);
    CubicCoeffs c;
    c.cwwz = -2.0;
    c.cwzz = -2.0;
    c.cwz = 2.0 * (A + B + C + D);
    c.cw = -2.0 * (A - D) * (B - C);
    c.cz = 2.0 * (A - B) * (C - D);
    c.c0 = -2.0 * (A * C - B * D) * (A - B + C - D);
    return c;
}

double truncated_cubic_reference(const Linkage& linkage, double w, double z) {
    CubicCoeffs c = corrected_cubic(linkage);
    c.cwz = 0.0;   // the dropped cross term
    return cubic_eval(c, w, z);
}

std::optional<std::pair<double, double>> cubic_z_roots(const CubicCoeffs& c, double w) {
    const double q2 = c.cwzz * w;
    const double q1 = c.cwwz * w * w + c.cwz * w + c.cz;
    const double q0 = c.cw * w + c.c0;
    double disc = q1 * q1 - 4.0 * q2 * q0;
    if (disc < 0.0) {
        if (disc > -1e-9 * (q1 * q1 + std::abs(4.0 * q2 * q0))) disc = 0.0;
        else return std::nullopt;
    }
    double r0, r1;
    if (num::solve_quadratic(q2, q1, q0, r0, r1) == 0) {
        const double sq = std::sqrt(disc);
        r0 = (-q1 - sq) / (2.0 * q2);
        r1 = (-q1 + sq) / (2.0 * q2);
        if (r0 > r1) std::swap(r0, r1);
    }
    return std::make_pair(r0, r1);
}

std::optional<std::pair<double, double>> cubic_w_roots(const CubicCoeffs& c, double z) {
    const double q2 = c.cwwz * z;
    const double q1 = c.cwzz * z * z + c.cwz * z + c.cw;
    const double q0 = c.cz * z + c.c0;
    double disc = q1 * q1 - 4.0 * q2 * q0;
    if (disc < 0.0) {
        if (disc > -1e-9 * (q1 * q1 + std::abs(4.0 * q2 * q0))) disc = 0.0;
        else return std::nullopt;
    }
    double r0, r1;
    if (num::solve_quadratic(q2, q1, q0, r0, r1) == 0) {
        const double sq = std::sqrt(disc);
        r0 = (-q1 - sq) / (2.0 * q2);
        r1 = (-q1 + sq) / (2.0 * q2);
        if (r0 > r1) std::swap(r0, r1);
    }
    return std::make_pair(r0, r1);
}

QuadRegion region_from_signs(int sgn_fx, int sgn_fy) {
    if (sgn_fx == 0 || sgn_fy == 0) return QuadRegion::aligned;
    if (sgn_fx > 0 && sgn_fy > 0) return QuadRegion::strictly_convex;
    if (sgn_fx < 0 && sgn_fy < 0) return QuadRegion::self_intersecting;
    return QuadRegion::nonconvex_simple;
}

double OvalModel::ray_radius(double phi, double hint) const {
    (void)hint;   // the closed-form solve needs no warm start
    const double c = std::cos(phi), s = std::sin(phi);
    // g restricted to the ray is a cubic in r; its smallest positive root is
    // the boundary of the positive component containing the interior point.
    const auto& q = cubic_;
    const double a3 = q.cwwz * c * c * s + q.cwzz * s * s * c;
    const double a2 = q.cwwz * (2.0 * w0_ * c * s + c * c * z0_) +
                      q.cwzz * (2.0 * z0_ * s * c + s * s * w0_) + q.cwz * c * s;
    const double a1 = q.cwwz * (w0_ * w0_ * s + 2.0 * w0_ * c * z0_) +
                      q.cwzz * (z0_ * z0_ * c + 2.0 * z0_ * s * w0_) +
                      q.cwz * (w0_ * s + z0_ * c) + q.cw * c + q.cz * s;
    const double a0 = cubic_eval(q, w0_, z0_);

    double roots[3];
    const int n = num::cubic_roots(a3, a2, a1, a0, roots);
    for (int i = 0; i < n; ++i) {
        if (roots[i] > 1e-12 * rbox_ && roots[i] <= 1.02 * rbox_) {
            // Final Newton steps on the direct evaluation; the expanded ray
            // coefficients above carry cancellation the direct form avoids.
            double r = roots[i];
            for (int it = 0; it < 4; ++it) {
                const double w = w0_ + r * c, z = z0_ + r * s;
                const double f = cubic_eval(q, w, z);
                const double df = cubic_gw(q, w, z) * c + cubic_gz(q, w, z) * s;
                if (df == 0.0) break;
                const double step = f / df;
                r -= step;
                if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(r))
                    break;
            }
            return r;
        }
    }
    throw NumericalFailure("oval ray has no positive crossing");
}

OvalModel build_oval(const Linkage& linkage) {
    if (linkage.n() != 4) throw SolverError("build_oval: quad linkage required");
    if (!linkage.moduli_nonempty()) throw EmptyModuliSpace("longest side reaches the others");
    if (linkage.is_degenerate()) throw DegenerateLinkage("degenerate 4-bar linkage");

    OvalModel m(linkage);
    m.cubic_ = corrected_cubic(linkage);
    const double a = linkage.side(0), b = linkage.side(1), c = linkage.side(2), d = linkage.side(3);
    m.x_lo_ = std::max(std::abs(a - b), std::abs(c - d));
    m.x_hi_ = std::min(a + b, c + d);
    m.y_hi_ = std::min(b + c, d + a);

    const double xm = 0.5 * (m.x_lo_ + m.x_hi_);
    m.w0_ = xm * xm;
    const auto zr = cubic_z_roots(m.cubic_, m.w0_);
    if (!zr || !(zr->first > 0.0))
        throw NumericalFailure("interior point seeding failed");
    m.z0_ = 0.5 * (zr->first + zr->second);
    if (!(cubic_eval(m.cubic_, m.w0_, m.z0_) > 0.0))
        throw NumericalFailure("interior point not strictly inside the oval");
    m.rbox_ = 1.0001 * std::hypot(m.x_hi_ * m.x_hi_, m.y_hi_ * m.y_hi_) + 1e-12;

    // Star-shapedness sweep; also collect gradient signs for the landmarks.
    constexpr int kRays = 1024;
    std::array<double, kRays> gw_s{}, gz_s{}, ws{}, zs{};
    double hint = -1.0;
    for (int i = 0; i < kRays; ++i) {
        const double phi = 2.0 * M_PI * i / kRays;
        double r;
        try {
            r = m.ray_radius(phi, hint);
        } catch (const NumericalFailure&) {
            throw DegenerateLinkage("oval validation failed (pinched or missing oval)");
        }
        hint = r;
        ws[static_cast<size_t>(i)] = m.w0_ + r * std::cos(phi);
        zs[static_cast<size_t>(i)] = m.z0_ + r * std::sin(phi);
        gw_s[static_cast<size_t>(i)] = cubic_gw(m.cubic_, ws[static_cast<size_t>(i)], zs[static_cast<size_t>(i)]);
        gz_s[static_cast<size_t>(i)] = cubic_gz(m.cubic_, ws[static_cast<size_t>(i)], zs[static_cast<size_t>(i)]);
    }

    auto refine_landmarks = [&](const std::array<double, kRays>& vals, auto partial,
                                double& lm_small, double& lm_large, bool use_w) {
        struct Root { double phi, coord; };
        std::vector<Root> roots;
        for (int i = 0; i < kRays; ++i) {
            const int j = (i + 1) % kRays;
            const double v1 = vals[static_cast<size_t>(i)], v2 = vals[static_cast<size_t>(j)];
            if (v1 == 0.0 || v1 * v2 < 0.0) {
                const double p1 = 2.0 * M_PI * i / kRays;
                const double p2 = p1 + 2.0 * M_PI / kRays;
                auto f = [&](double phi) {
                    const double r = m.ray_radius(phi);
                    return partial(m.cubic_, m.w0_ + r * std::cos(phi), m.z0_ + r * std::sin(phi));
                };
                const double phi_root = (v1 == 0.0) ? p1 : num::brent_root(f, p1, p2, 1e-13);
                const double r = m.ray_radius(phi_root);
                const double coord = use_w ? m.w0_ + r * std::cos(phi_root)
                                           : m.z0_ + r * std::sin(phi_root);
                roots.push_back({phi_root, coord});
            }
        }
        if (roots.size() != 2)
            throw DegenerateLinkage("oval tangency landmarks not in general position");
        if (roots[0].coord < roots[1].coord) { lm_small = roots[0].phi; lm_large = roots[1].phi; }
        else { lm_small = roots[1].phi; lm_large = roots[0].phi; }
    };
    // gz = 0 at the w-extrema (vertical tangents); gw = 0 at the z-extrema.
    refine_landmarks(gz_s, [](const CubicCoeffs& cc, double w, double z) { return cubic_gz(cc, w, z); },
                     m.phi_x_min_, m.phi_x_max_, true);
    refine_landmarks(gw_s, [](const CubicCoeffs& cc, double w, double z) { return cubic_gw(cc, w, z); },
                     m.phi_y_min_, m.phi_y_max_, false);
    return m;
}

OvalPoint oval_point(const OvalModel& model, double phi, double hint) {
    phi = num::wrap_angle(phi);
    const double r = model.ray_radius(phi, hint);
    OvalPoint p;
    p.phi = phi;
    p.w = model.w0() + r * std::cos(phi);
    p.z = model.z0() + r * std::sin(phi);
    p.x = std::sqrt(std::max(p.w, 0.0));
    p.y = std::sqrt(std::max(p.z, 0.0));
    const double gw = cubic_gw(model.cubic(), p.w, p.z);
    const double gz = cubic_gz(model.cubic(), p.w, p.z);
    p.sgn_fx = (gw < 0.0) ? 1 : (gw > 0.0 ? -1 : 0);
    p.sgn_fy = (gz < 0.0) ? 1 : (gz > 0.0 ? -1 : 0);
    return p;
}

double oval_phi_of(const OvalModel& model, double w, double z) {
    return num::wrap_angle(std::atan2(z - model.z0(), w - model.w0()));
}

namespace {
double grad_z_scale(const CubicCoeffs& c, double w, double z) {
    return std::abs(c.cwwz) * w * w + 2.0 * std::abs(c.cwzz) * w * std::abs(z) +
           std::abs(c.cwz) * w + std::abs(c.cz);
}
} // namespace

double branch_first_derivative(const OvalModel& model, const OvalPoint& point) {
    const auto& c = model.cubic();
    const double gw = cubic_gw(c, point.w, point.z);
    const double gz = cubic_gz(c, point.w, point.z);
    if (std::abs(gz) < 1e-10 * grad_z_scale(c, point.w, point.z))
        throw TangentVertical("dg/dz vanishes; branch y(x) not differentiable here");
    return -(point.x * gw) / (point.y * gz);
}

double branch_second_derivative(const OvalModel& model, const OvalPoint& point) {
    const auto& c = model.cubic();
    const double gw = cubic_gw(c, point.w, point.z);
    const double gz = cubic_gz(c, point.w, point.z);
    if (std::abs(gz) < 1e-10 * grad_z_scale(c, point.w, point.z))
        throw TangentVertical("dg/dz vanishes; branch y(x) not differentiable here");
    const double zp = -gw / gz;   // dz/dw along the curve
    const double zpp = -(cubic_gww(c, point.w, point.z) + 2.0 * cubic_gwz(c, point.w, point.z) * zp +
                         cubic_gzz(c, point.w, point.z) * zp * zp) / gz;
    const double x = point.x, y = point.y;
    return (zp + 2.0 * x * x * zpp) / y - (x * x * zp * zp) / (y * y * y);
}

} // namespace linkforge
