#include "linkforge/sampling.hpp"

#include <cmath>

#include "linkforge/numeric.hpp"

namespace linkforge {

Linkage random_quad_linkage(Rng& rng, double lo, double hi, double margin) {
    std::uniform_real_distribution<double> dist(lo, hi);
    for (int guard = 0; guard < 100000; ++guard) {
        const double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
        Linkage l = Linkage::quad(a, b, c, d);
        if (!l.moduli_nonempty()) continue;
        double m = l.perimeter();
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1})
                    m = std::min(m, std::abs(a + s1 * b + s2 * c + s3 * d));
        if (m <= margin * l.perimeter()) continue;
        return l;
    }
    throw NumericalFailure("quad linkage sampler exhausted");
}

double random_convex_phi(const OvalModel& model, Rng& rng, double endpoint_margin) {
    // The strictly convex arc runs between the x-max and y-max landmarks
    // (the two aligned configurations). Walk from phi_x_max toward phi_y_max
    // in the direction avoiding the other two landmarks.
    const double a = model.phi_x_max();
    const double b = model.phi_y_max();
    double lo = a, span = num::wrap_angle(b - a);
    // The arc not containing phi_x_min is the convex one.
    const double to_xmin = num::wrap_angle(model.phi_x_min() - a);
    if (to_xmin < span) {
        lo = b;
        span = 2.0 * M_PI - span;
    }
    std::uniform_real_distribution<double> u(endpoint_margin, 1.0 - endpoint_margin);
    return num::wrap_angle(lo + span * u(rng));
}

QuadConfig random_convex_quad(const OvalModel& model, Rng& rng, double endpoint_margin) {
    for (int guard = 0; guard < 1000; ++guard) {
        const double phi = random_convex_phi(model, rng, endpoint_margin);
        const OvalPoint p = oval_point(model, phi);
        QuadConfig cfg = reconstruct_quad(model.linkage(), p.x, p.y, 1e-6 * model.diag_scale());
        if (classify_quad(cfg) == QuadRegion::strictly_convex) return cfg;
    }
    throw NumericalFailure("convex quad sampler exhausted");
}

PentagonConfig random_convex_pentagon(Rng& rng, double boundary_margin) {
    std::uniform_real_distribution<double> u(0.5, 2.0 - boundary_margin);
    for (int guard = 0; guard < 100000; ++guard) {
        const double x13 = u(rng), x35 = u(rng);
        if (x13 + x35 < 1.0 + boundary_margin) continue;
        if (std::abs(x13 - x35) > 1.0 - boundary_margin) continue;
        PentagonConfig cfg = reconstruct_pentagon(x13, x35);
        if (!is_strictly_convex(cfg, 1e-3)) continue;
        // Keep the mirrored chart (x25, x35) away from its folds as well, so
        // finite differences stay accurate on both charts.
        const double x25 = cfg.diagonals[3];
        bool ok = true;
        for (double d : cfg.diagonals) ok = ok && d < 2.0 - boundary_margin;
        ok = ok && std::abs(x25 - x35) < 1.0 - boundary_margin &&
             x25 + x35 > 1.0 + boundary_margin;
        if (ok) return cfg;
    }
    throw NumericalFailure("convex pentagon sampler exhausted");
}

} // namespace linkforge
