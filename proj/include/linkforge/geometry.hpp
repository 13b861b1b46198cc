#pragma once
#include <array>
#include <vector>

#include <Eigen/Core>

#include "linkforge/errors.hpp"

namespace linkforge {

using Vec2 = Eigen::Vector2d;

/// A closed chain of rigid bars joined by revolving joints.
/// Sides are indexed so that side i connects vertex i to vertex i+1 (1-based,
/// cyclic). Only n = 4 and n = 5 are supported.
class Linkage {
public:
    static Linkage quad(double l1, double l2, double l3, double l4);
    static Linkage pentagon(double l1, double l2, double l3, double l4, double l5);
    static Linkage equilateral_pentagon(double side = 1.0);

    int n() const { return static_cast<int>(sides_.size()); }
    double side(int i) const { return sides_[static_cast<size_t>(i)]; }   // 0-based
    const std::vector<double>& sides() const { return sides_; }
    double perimeter() const;

    /// max side strictly shorter than the sum of the others.
    bool moduli_nonempty() const { return nonempty_; }
    /// Quad only: some signed combination +-l1+-l2+-l3+-l4 vanishes
    /// (relative tolerance 1e-12); such linkages admit collinear configurations.
    bool is_degenerate() const { return degenerate_; }
    /// Pentagon only: all sides equal to 1e-12 relative.
    bool is_equilateral() const { return equilateral_; }

private:
    explicit Linkage(std::vector<double> sides);
    std::vector<double> sides_;
    bool nonempty_ = false;
    bool degenerate_ = false;
    bool equilateral_ = false;
};

/// Region of the 4-bar moduli circle a configuration belongs to.
enum class QuadRegion { strictly_convex, aligned, nonconvex_simple, self_intersecting };

const char* to_string(QuadRegion r);

/// Planar 4-bar configuration in the canonical frame: p1 at the origin, p2 on
/// the positive x-axis, p3 in the closed upper half-plane. The frame quotients
/// all plane isometries including reflections.
struct QuadConfig {
    Linkage linkage;
    std::array<Vec2, 4> vertices;
    double x;   ///< |p1 p3|
    double y;   ///< |p2 p4|
};

/// Planar equilateral 5-bar configuration. Chart coordinates are the
/// diagonals (x13, x35) in side units together with three orientation
/// branches; `scale` multiplies all lengths (sides are scale * 1).
struct PentagonConfig {
    std::array<Vec2, 5> vertices;
    std::array<double, 5> diagonals;   ///< x13, x14, x24, x25, x35 (scaled)
    double x13;                        ///< chart coordinate, side units
    double x35;                        ///< chart coordinate, side units
    std::array<int, 3> branches;       ///< apex2, apex4, central orientation signs
    double scale = 1.0;
};

/// Unique canonical-frame configuration with diagonals (x, y).
/// The y value is snapped onto the nearer planar branch; inputs farther than
/// `snap_tol` (absolute, defaults to 0.5% of the diagonal range) raise NotOnCurve.
QuadConfig reconstruct_quad(const Linkage& linkage, double x, double y,
                            double snap_tol = -1.0);

std::array<double, 2> diagonals(const QuadConfig& config);
std::array<double, 5> diagonals(const PentagonConfig& config);

/// Classification by signed turning at the vertices; a turn within 1e-7 rad
/// of zero marks the configuration aligned.
QuadRegion classify_quad(const QuadConfig& config);

struct AlignedQuad {
    QuadConfig config;
    int aligned_vertex;   ///< 1-based vertex whose interior angle equals pi
};

/// The two convex-aligned configurations bounding the convex part of the
/// moduli circle: the x-maximal and the y-maximal configuration.
/// Returned in that order.
std::array<AlignedQuad, 2> aligned_configurations(const Linkage& linkage);

/// Builds the pentagon from chart values. Branch sign +1 places apex 2 (resp. 4)
/// on the far side of its base from the remaining triangle, and the central
/// triangle with p5 in the upper half-plane; all-positive branches with valid
/// chart values give the strictly convex representative.
PentagonConfig reconstruct_pentagon(double x13, double x35,
                                    std::array<int, 3> branches = {1, 1, 1},
                                    double scale = 1.0);

/// Recovers chart coordinates and branches from vertex positions and rebuilds
/// the canonical representative (used for relabelings and mirrors).
PentagonConfig pentagon_from_vertices(const std::array<Vec2, 5>& vertices);

/// Relabels (1<->2, 3<->5, 4 fixed) and reflects; swaps the roles of the two
/// controlled vertices.
PentagonConfig mirror_pentagon(const PentagonConfig& config);

bool is_strictly_convex(const PentagonConfig& config, double tol_rel = 1e-9);

/// 1-based index of the unique vertex with interior angle pi, or 0 if none.
/// Throws DegenerateConfig when more than one vertex is aligned.
int aligned_pentagon_vertex(const PentagonConfig& config, double tol = 1e-7);

/// Boundary configuration of the convex pentagon region with vertex `vertex`
/// aligned; u in (0,1) parametrizes the family.
PentagonConfig aligned_pentagon(int vertex, double u);

namespace detail {
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
double cross2(const Vec2& a, const Vec2& b);
} // namespace detail

} // namespace linkforge
