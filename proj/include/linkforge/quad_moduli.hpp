#pragma once
#include <array>
#include <optional>
#include <utility>

#include "linkforge/geometry.hpp"

namespace linkforge {

/// Coefficients of the diagonal-relation cubic g(w, z), w = x^2, z = y^2:
///   g = cwwz w^2 z + cwzz w z^2 + cwz w z + cw w + cz z + c0.
/// g(x^2, y^2) equals the 5x5 bordered squared-distance determinant identically.
struct CubicCoeffs {
    double cwwz, cwzz, cwz, cw, cz, c0;
};

double cubic_eval(const CubicCoeffs& c, double w, double z);
double cubic_gw(const CubicCoeffs& c, double w, double z);
double cubic_gz(const CubicCoeffs& c, double w, double z);
double cubic_gww(const CubicCoeffs& c, double w, double z);
double cubic_gwz(const CubicCoeffs& c, double w, double z);
double cubic_gzz(const CubicCoeffs& c, double w, double z);
/// Sum of absolute term magnitudes at (w, z); the natural residual scale.
double cubic_abs_scale(const CubicCoeffs& c, double w, double z);

/// Bordered squared-distance determinant of the four vertices with sides
/// (l1..l4) and diagonals (x, y); evaluated as a 5x5 determinant. Vanishes
/// exactly when the six distances embed in the plane.
double cayley_menger(const Linkage& linkage, double x, double y);

/// Cubic with g(x^2, y^2) == cayley_menger(linkage, x, y) identically.
CubicCoeffs corrected_cubic(const Linkage& linkage);

/// Shorter expansion lacking the 2*(a^2+b^2+c^2+d^2) w z term; retained only
/// as a negative control against the determinant identity (it fails the
/// unit-square test).
double truncated_cubic_reference(const Linkage& linkage, double w, double z);

/// The two z with g(w, z) = 0, ascending, or nullopt if the vertical line
/// misses the curve. Near-tangent discriminants are clamped to zero.
std::optional<std::pair<double, double>> cubic_z_roots(const CubicCoeffs& c, double w);
std::optional<std::pair<double, double>> cubic_w_roots(const CubicCoeffs& c, double z);

/// A point of the moduli oval, located by the polar angle around the model's
/// interior point. The sign pair uses the curve function oriented negative
/// inside the oval; with that orientation the strictly convex arc is (+,+)
/// and the self-intersecting arc is (-,-).
struct OvalPoint {
    double phi;
    double w, z;
    double x, y;
    int sgn_fx, sgn_fy;
};

QuadRegion region_from_signs(int sgn_fx, int sgn_fy);

/// Polar model of the 4-bar moduli circle: the compact component of the
/// diagonal-relation cubic, star-shaped around a verified interior point.
class OvalModel {
public:
    const Linkage& linkage() const { return linkage_; }
    const CubicCoeffs& cubic() const { return cubic_; }
    double w0() const { return w0_; }
    double z0() const { return z0_; }
    double ray_bound() const { return rbox_; }

    /// Distance from the interior point to the oval along the ray at phi.
    /// `hint` (a nearby radius) accelerates dense sweeps.
    double ray_radius(double phi, double hint = -1.0) const;

    /// Landmark angles: the two curve points with vertical / horizontal
    /// tangent in (w, z), i.e. the x- and y-extrema of the moduli circle.
    double phi_x_min() const { return phi_x_min_; }
    double phi_x_max() const { return phi_x_max_; }
    double phi_y_min() const { return phi_y_min_; }
    double phi_y_max() const { return phi_y_max_; }

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_hi() const { return y_hi_; }
    /// Characteristic diagonal length, used for relative tolerances.
    double diag_scale() const { return std::max(x_hi_, y_hi_); }

    friend OvalModel build_oval(const Linkage& linkage);

private:
    explicit OvalModel(Linkage l) : linkage_(std::move(l)), cubic_{} {}
    Linkage linkage_;
    CubicCoeffs cubic_;
    double w0_ = 0, z0_ = 0, rbox_ = 0;
    double x_lo_ = 0, x_hi_ = 0, y_hi_ = 0;
    double phi_x_min_ = 0, phi_x_max_ = 0, phi_y_min_ = 0, phi_y_max_ = 0;
};

/// Locates the interior point (midpoint of the x-range with the mid planar z)
/// and validates star-shapedness with a 1024-ray sweep.
OvalModel build_oval(const Linkage& linkage);

OvalPoint oval_point(const OvalModel& model, double phi, double hint = -1.0);

/// Angle of a curve point (w, z) around the model's interior point.
double oval_phi_of(const OvalModel& model, double w, double z);

/// y''(x) of the branch through `point` by implicit differentiation of g.
/// Throws TangentVertical near z-branch folds (|dg/dz| too small).
double branch_second_derivative(const OvalModel& model, const OvalPoint& point);

/// dy/dx of the branch through `point`.
double branch_first_derivative(const OvalModel& model, const OvalPoint& point);

} // namespace linkforge
