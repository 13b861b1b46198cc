#include "linkforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linkforge/numeric.hpp"

namespace linkforge {

namespace {

// Intersection of circles (origin, r1) and ((base,0), r2); returns the
// nonnegative apex height, foot = abscissa of the intersection.
double circle_apex_height(double base, double r1, double r2, double& foot) {
    foot = (base * base + r1 * r1 - r2 * r2) / (2.0 * base);
    const double h2 = r1 * r1 - foot * foot;
    if (h2 < 0.0) {
        if (h2 > -1e-12 * r1 * r1) return 0.0;
        throw TriangleViolation("circle intersection is empty");
    }
    return std::sqrt(h2);
}

} // namespace

Linkage::Linkage(std::vector<double> sides) : sides_(std::move(sides)) {
    for (double l : sides_) {
        if (!(l > 0.0)) throw SolverError("side lengths must be positive");
    }
    const double total = perimeter();
    const double lmax = *std::max_element(sides_.begin(), sides_.end());
    nonempty_ = lmax < total - lmax;

    if (sides_.size() == 4) {
        double m = total;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1})
                    m = std::min(m, std::abs(sides_[0] + s1 * sides_[1] + s2 * sides_[2] + s3 * sides_[3]));
        degenerate_ = m <= 1e-12 * total;
    }
    if (sides_.size() == 5) {
        const double l0 = sides_[0];
        equilateral_ = std::all_of(sides_.begin(), sides_.end(), [&](double l) {
            return std::abs(l - l0) <= 1e-12 * l0;
        });
    }
}

Linkage Linkage::quad(double l1, double l2, double l3, double l4) {
    return Linkage({l1, l2, l3, l4});
}

Linkage Linkage::pentagon(double l1, double l2, double l3, double l4, double l5) {
    return Linkage({l1, l2, l3, l4, l5});
}

Linkage Linkage::equilateral_pentagon(double side) {
    return Linkage({side, side, side, side, side});
}

double Linkage::perimeter() const {
    return std::accumulate(sides_.begin(), sides_.end(), 0.0);
}

const char* to_string(QuadRegion r) {
    switch (r) {
        case QuadRegion::strictly_convex: return "strictly_convex";
        case QuadRegion::aligned: return "aligned";
        case QuadRegion::nonconvex_simple: return "nonconvex_simple";
        case QuadRegion::self_intersecting: return "self_intersecting";
    }
    return "?";
}

double detail::cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool detail::segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        const double v = detail::cross2(q - p, r - p);
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

QuadConfig reconstruct_quad(const Linkage& linkage, double x, double y, double snap_tol) {
    if (linkage.n() != 4) throw SolverError("reconstruct_quad: quad linkage required");
    const double a = linkage.side(0), b = linkage.side(1), c = linkage.side(2), d = linkage.side(3);
    const double slack = 1e-9 * linkage.perimeter();
    if (x < std::abs(a - b) - slack || x > a + b + slack)
        throw TriangleViolation("diagonal x violates triangle (l1,l2,x)");
    if (x < std::abs(c - d) - slack || x > c + d + slack)
        throw TriangleViolation("diagonal x violates triangle (l3,l4,x)");
    x = std::clamp(x, std::max(std::abs(a - b), std::abs(c - d)), std::min(a + b, c + d));

    const Vec2 p1(0.0, 0.0), p2(a, 0.0);
    double f3;
    const double h3 = circle_apex_height(a, x, b, f3);   // p3 on circles (p1,x), (p2,b)
    const Vec2 p3(f3, h3);

    // p4 on circles (p1, l4), (p3, l3); branch selected by nearness of |p2 p4| to y
    const Vec2 u = (p3 - p1) / x;
    const Vec2 n(-u.y(), u.x());
    double f4;
    const double h4 = circle_apex_height(x, d, c, f4);
    const Vec2 base = p1 + f4 * u;
    const Vec2 cand1 = base + h4 * n;
    const Vec2 cand2 = base - h4 * n;
    const double y1 = (cand1 - p2).norm(), y2 = (cand2 - p2).norm();
    Vec2 p4;
    double y_on;
    if (std::abs(y1 - y) <= std::abs(y2 - y)) { p4 = cand1; y_on = y1; }
    else { p4 = cand2; y_on = y2; }

    const double x_hi = std::min(a + b, c + d);
    const double y_hi = std::min(b + c, d + a);
    if (snap_tol < 0.0) snap_tol = 5e-3 * std::max(x_hi, y_hi);
    if (std::abs(y_on - y) > snap_tol)
        throw NotOnCurve("requested (x, y) is not on the diagonal relation");

    // With p3 on the axis both p4 signs are mirror images; pick the upper one.
    if (h3 == 0.0 && p4.y() < 0.0) p4.y() = -p4.y();

    return QuadConfig{linkage, {p1, p2, p3, p4}, x, y_on};
}

std::array<double, 2> diagonals(const QuadConfig& config) {
    const auto& v = config.vertices;
    return {(v[2] - v[0]).norm(), (v[3] - v[1]).norm()};
}

std::array<double, 5> diagonals(const PentagonConfig& config) {
    const auto& v = config.vertices;
    return {(v[2] - v[0]).norm(), (v[3] - v[0]).norm(), (v[3] - v[1]).norm(),
            (v[4] - v[1]).norm(), (v[4] - v[2]).norm()};
}

QuadRegion classify_quad(const QuadConfig& config) {
    const auto& v = config.vertices;
    const double scale = config.linkage.perimeter();
    for (int i = 0; i < 4; ++i) {
        const Vec2& q0 = v[static_cast<size_t>(i)];
        const Vec2& q1 = v[static_cast<size_t>((i + 1) % 4)];
        const Vec2& q2 = v[static_cast<size_t>((i + 2) % 4)];
        if ((q1 - q0).norm() < 1e-12 * scale && (q2 - q1).norm() < 1e-12 * scale)
            throw DegenerateConfig("three consecutive vertices coincide");
    }
    int sign_sum = 0;
    bool any_zero = false;
    for (int i = 0; i < 4; ++i) {
        const Vec2 e1 = v[static_cast<size_t>((i + 1) % 4)] - v[static_cast<size_t>(i)];
        const Vec2 e2 = v[static_cast<size_t>((i + 2) % 4)] - v[static_cast<size_t>((i + 1) % 4)];
        const double s = detail::cross2(e1, e2) / (e1.norm() * e2.norm());
        if (std::abs(s) <= 1e-7) { any_zero = true; continue; }
        sign_sum += (s > 0.0) ? 1 : -1;
    }
    if (any_zero) return QuadRegion::aligned;
    if (sign_sum == 4 || sign_sum == -4) return QuadRegion::strictly_convex;
    const bool cross = detail::segments_cross(v[0], v[1], v[2], v[3]) ||
                       detail::segments_cross(v[1], v[2], v[3], v[0]);
    return cross ? QuadRegion::self_intersecting : QuadRegion::nonconvex_simple;
}

std::array<AlignedQuad, 2> aligned_configurations(const Linkage& linkage) {
    if (linkage.n() != 4) throw SolverError("aligned_configurations: quad linkage required");
    if (linkage.is_degenerate())
        throw DegenerateLinkage("linkage admits a fully collinear configuration");
    if (!linkage.moduli_nonempty()) throw EmptyModuliSpace("moduli space is empty");
    const double a = linkage.side(0), b = linkage.side(1), c = linkage.side(2), d = linkage.side(3);
    const double tight = 1e-9 * linkage.perimeter();

    // x-maximal configuration: path p1-p2-p3 (vertex 2) or p3-p4-p1 (vertex 4) straightened.
    auto make_x_aligned = [&]() -> AlignedQuad {
        const double x = std::min(a + b, c + d);
        if (a + b < c + d) {
            const Vec2 p1(0, 0), p2(a, 0), p3(a + b, 0);
            double f; const double h = circle_apex_height(x, d, c, f);
            const Vec2 p4(f, h);
            return {QuadConfig{linkage, {p1, p2, p3, p4}, x, (p4 - p2).norm()}, 2};
        }
        // vertex 4 between p3 and p1 on the diagonal; p3 from the rigid triangle (a,b,x)
        double f; const double h = circle_apex_height(a, x, b, f);
        const Vec2 p1(0, 0), p2(a, 0), p3(f, h);
        const Vec2 p4 = p3 + (c / x) * (p1 - p3);
        return {QuadConfig{linkage, {p1, p2, p3, p4}, x, (p4 - p2).norm()}, 4};
    };

    // y-maximal configuration: path p4-p1-p2 (vertex 1) or p2-p3-p4 (vertex 3) straightened.
    auto make_y_aligned = [&]() -> AlignedQuad {
        const double y = std::min(b + c, d + a);
        if (d + a < b + c) {
            const Vec2 p1(0, 0), p2(a, 0), p4(-d, 0);
            double f; const double h = circle_apex_height(a + d, b, c, f);
            const Vec2 p3(a - f, h);   // foot measured from p2 toward p4
            return {QuadConfig{linkage, {p1, p2, p3, p4}, (p3 - p1).norm(), y}, 1};
        }
        // vertex 3 aligned; build in a temp frame on the y-diagonal, re-canonicalize
        double f; const double h = circle_apex_height(y, a, d, f);
        const Vec2 q2(0, 0), q4(y, 0), q1(f, h);
        const Vec2 q3 = q2 + (b / y) * (q4 - q2);
        const double x = (q3 - q1).norm();
        return {reconstruct_quad(linkage, x, y, tight), 3};
    };
    return {make_x_aligned(), make_y_aligned()};
}

PentagonConfig reconstruct_pentagon(double x13, double x35, std::array<int, 3> branches,
                                    double scale) {
    if (!(scale > 0.0)) throw SolverError("scale must be positive");
    for (int s : branches)
        if (s != 1 && s != -1) throw SolverError("branch signs must be +-1");
    const double eps = 1e-12;
    if (x13 <= eps || x35 <= eps || x13 > 2.0 + eps || x35 > 2.0 + eps)
        throw TriangleViolation("chart value outside apex triangle range");
    if (x13 + x35 < 1.0 - eps || std::abs(x13 - x35) > 1.0 + eps)
        throw TriangleViolation("central triangle (x13, x35, 1) infeasible");
    x13 = std::min(x13, 2.0);
    x35 = std::min(x35, 2.0);

    const int e1 = branches[0], e2 = branches[1], e3 = branches[2];
    const Vec2 p1(0, 0), p3(x13, 0);
    double f5;
    const double h5 = circle_apex_height(x13, 1.0, x35, f5);
    const Vec2 p5(f5, e3 * h5);

    const double h2 = std::sqrt(std::max(1.0 - 0.25 * x13 * x13, 0.0));
    // +1 branch: p2 on the opposite side of line(p1,p3) from p5
    const double side5 = (p5.y() >= 0.0) ? 1.0 : -1.0;
    const Vec2 p2(0.5 * x13, -e1 * side5 * h2);

    const Vec2 d35 = p5 - p3;
    const double L = d35.norm();
    if (L < eps) throw TriangleViolation("central triangle degenerate");
    const Vec2 nrm(-d35.y() / L, d35.x() / L);
    const double h4sq = 1.0 - 0.25 * L * L;
    if (h4sq < -1e-12) throw TriangleViolation("apex triangle (1,1,x35) infeasible");
    const double h4 = std::sqrt(std::max(h4sq, 0.0));
    const double s_p1 = (nrm.dot(p1 - p3) >= 0.0) ? 1.0 : -1.0;
    const Vec2 p4 = 0.5 * (p3 + p5) + (-e2 * s_p1 * h4) * nrm;

    PentagonConfig cfg;
    cfg.vertices = {scale * p1, scale * p2, scale * p3, scale * p4, scale * p5};
    cfg.diagonals = diagonals(cfg);
    cfg.x13 = x13;
    cfg.x35 = x35;
    cfg.branches = branches;
    cfg.scale = scale;
    return cfg;
}

PentagonConfig pentagon_from_vertices(const std::array<Vec2, 5>& v) {
    const double l = (v[1] - v[0]).norm();
    const double x13 = (v[2] - v[0]).norm() / l;
    const double x35 = (v[4] - v[2]).norm() / l;
    auto side_of = [](const Vec2& a, const Vec2& b, const Vec2& p) {
        return detail::cross2(b - a, p - a);
    };
    const double s5 = side_of(v[0], v[2], v[4]);
    const double s2 = side_of(v[0], v[2], v[1]);
    const double s1 = side_of(v[2], v[4], v[0]);
    const double s4 = side_of(v[2], v[4], v[3]);
    const int e1 = (s2 * s5 <= 0.0) ? 1 : -1;   // p2 opposite p5
    const int e2 = (s4 * s1 <= 0.0) ? 1 : -1;   // p4 opposite p1
    return reconstruct_pentagon(x13, x35, {e1, e2, 1}, l);
}

PentagonConfig mirror_pentagon(const PentagonConfig& config) {
    const auto& v = config.vertices;
    return pentagon_from_vertices({v[1], v[0], v[4], v[3], v[2]});
}

bool is_strictly_convex(const PentagonConfig& config, double tol_rel) {
    const auto& v = config.vertices;
    const double tol = tol_rel * config.scale * config.scale;
    double first = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Vec2 e1 = v[static_cast<size_t>((i + 1) % 5)] - v[static_cast<size_t>(i)];
        const Vec2 e2 = v[static_cast<size_t>((i + 2) % 5)] - v[static_cast<size_t>((i + 1) % 5)];
        const double c = detail::cross2(e1, e2);
        if (std::abs(c) <= tol) return false;
        if (i == 0) first = c;
        else if (c * first < 0.0) return false;
    }
    return true;
}

int aligned_pentagon_vertex(const PentagonConfig& config, double tol) {
    const auto& v = config.vertices;
    int found = 0;
    for (int i = 0; i < 5; ++i) {
        const Vec2 e1 = v[static_cast<size_t>(i)] - v[static_cast<size_t>((i + 4) % 5)];
        const Vec2 e2 = v[static_cast<size_t>((i + 1) % 5)] - v[static_cast<size_t>(i)];
        const double s = detail::cross2(e1, e2) / (e1.norm() * e2.norm());
        if (std::abs(s) <= tol && e1.dot(e2) > 0.0) {
            if (found != 0) throw DegenerateConfig("more than one aligned vertex");
            found = i + 1;
        }
    }
    return found;
}

PentagonConfig aligned_pentagon(int vertex, double u) {
    if (vertex < 1 || vertex > 5) throw SolverError("vertex index must be 1..5");
    if (!(u > 0.0 && u < 1.0)) throw SolverError("parameter u must lie in (0,1)");
    // Vertex-2-aligned family: x13 = 2, x35 in (1, 2); then rotate labels.
    // Re-frame by rigid motion only: a chart rebuild would blur the exact
    // collinearity at the fold.
    const double x35 = 1.0 + u;
    PentagonConfig base = reconstruct_pentagon(2.0, x35, {1, 1, 1});
    const int shift = vertex - 2;   // base has vertex 2 aligned
    std::array<Vec2, 5> v;
    for (int i = 0; i < 5; ++i) {
        const int src = ((i - shift) % 5 + 5) % 5;
        v[static_cast<size_t>(i)] = base.vertices[static_cast<size_t>(src)];
    }
    const Vec2 origin = v[0];
    const Vec2 axis = (v[2] - v[0]).normalized();
    const Vec2 perp(-axis.y(), axis.x());
    const double flip = (perp.dot(v[4] - v[0]) >= 0.0) ? 1.0 : -1.0;
    for (auto& p : v) {
        const Vec2 d = p - origin;
        p = Vec2(axis.dot(d), flip * perp.dot(d));
    }
    PentagonConfig cfg;
    cfg.vertices = v;
    cfg.diagonals = diagonals(cfg);
    cfg.x13 = cfg.diagonals[0];
    cfg.x35 = cfg.diagonals[4];
    const double s5 = detail::cross2(v[2] - v[0], v[4] - v[0]);
    const double s2 = detail::cross2(v[2] - v[0], v[1] - v[0]);
    const double s1 = detail::cross2(v[4] - v[2], v[0] - v[2]);
    const double s4 = detail::cross2(v[4] - v[2], v[3] - v[2]);
    cfg.branches = {(s2 * s5 <= 0.0) ? 1 : -1, (s4 * s1 <= 0.0) ? 1 : -1, 1};
    cfg.scale = 1.0;
    return cfg;
}

} // namespace linkforge
