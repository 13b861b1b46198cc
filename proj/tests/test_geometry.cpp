#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "linkforge/sampling.hpp"

using namespace linkforge;

TEST_CASE("linkage flags") {
    CHECK(Linkage::quad(1, 1, 1, 1).is_degenerate());
    CHECK_FALSE(Linkage::quad(6, 6.5, 6.2, 5.8).is_degenerate());
    CHECK_FALSE(Linkage::quad(10, 1, 1, 1).moduli_nonempty());
    CHECK(Linkage::equilateral_pentagon().is_equilateral());
    CHECK_FALSE(Linkage::pentagon(1, 1, 1, 1, 1.01).is_equilateral());
    CHECK_THROWS_AS(Linkage::quad(1, -1, 1, 1), SolverError);
}

TEST_CASE("reconstruct_quad unit square") {
    const double r2 = std::sqrt(2.0);
    const QuadConfig sq = reconstruct_quad(Linkage::quad(1, 1, 1, 1), r2, r2);
    CHECK(sq.vertices[0].isApprox(Vec2(0, 0), 1e-12));
    CHECK(sq.vertices[1].isApprox(Vec2(1, 0), 1e-12));
    CHECK(sq.vertices[2].isApprox(Vec2(1, 1), 1e-9));
    CHECK(sq.vertices[3].isApprox(Vec2(0, 1), 1e-9));
    const auto d = diagonals(sq);
    CHECK(d[0] == doctest::Approx(r2).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(r2).epsilon(1e-12));
    CHECK(classify_quad(sq) == QuadRegion::strictly_convex);
}

TEST_CASE("reconstruct_quad paper configuration") {
    const QuadConfig cfg = reconstruct_quad(lft::example_linkage(), 9.59, 7.60);
    CHECK(classify_quad(cfg) == QuadRegion::strictly_convex);
    const auto d = diagonals(cfg);
    CHECK(d[0] == doctest::Approx(9.59).epsilon(1e-9));
    CHECK(std::abs(d[1] - 7.60) < 0.011);   // snapped onto the curve
    // side lengths are exact by construction
    const auto& v = cfg.vertices;
    CHECK((v[1] - v[0]).norm() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK((v[2] - v[1]).norm() == doctest::Approx(6.5).epsilon(1e-12));
    CHECK((v[3] - v[2]).norm() == doctest::Approx(6.2).epsilon(1e-12));
    CHECK((v[0] - v[3]).norm() == doctest::Approx(5.8).epsilon(1e-12));
}

TEST_CASE("reconstruct_quad triangle violation") {
    CHECK_THROWS_AS(reconstruct_quad(Linkage::quad(3, 4, 5, 6), 12.0, 3.0), TriangleViolation);
    CHECK_THROWS_AS(reconstruct_quad(lft::example_linkage(), 9.59, 3.0), NotOnCurve);
}

TEST_CASE("classify_quad regions of the example linkage") {
    const Linkage l = lft::example_linkage();
    CHECK(classify_quad(reconstruct_quad(l, 9.59, 7.60)) == QuadRegion::strictly_convex);
    // frozen from the sign-pair evaluation; edge-crossing oracle agrees
    const QuadConfig self_x = reconstruct_quad(l, 4.11, 0.30);
    CHECK(classify_quad(self_x) == QuadRegion::self_intersecting);
    const auto& v = self_x.vertices;
    const bool crosses = detail::segments_cross(v[0], v[1], v[2], v[3]) ||
                         detail::segments_cross(v[1], v[2], v[3], v[0]);
    CHECK(crosses);
}

TEST_CASE("aligned_configurations") {
    SUBCASE("x-alignment at l1+l2") {
        const auto pair = aligned_configurations(Linkage::quad(2, 1, 2, 2));
        CHECK(pair[0].aligned_vertex == 2);
        CHECK(pair[0].config.x == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(classify_quad(pair[0].config) == QuadRegion::aligned);
    }
    SUBCASE("example linkage, frozen extremal diagonals") {
        const auto pair = aligned_configurations(lft::example_linkage());
        CHECK(pair[0].aligned_vertex == 4);   // c + d = 12.0 < a + b
        CHECK(pair[0].config.x == doctest::Approx(12.0).epsilon(1e-12));
        CHECK(pair[0].config.y == doctest::Approx(1.7495237447).epsilon(1e-6));
        CHECK(pair[1].aligned_vertex == 1);   // d + a = 11.8 < b + c
        CHECK(pair[1].config.y == doctest::Approx(11.8).epsilon(1e-12));
        CHECK(pair[1].config.x == doctest::Approx(2.3479164943).epsilon(1e-6));
        CHECK(classify_quad(pair[0].config) == QuadRegion::aligned);
        CHECK(classify_quad(pair[1].config) == QuadRegion::aligned);
    }
    SUBCASE("degenerate rhombus rejected") {
        CHECK_THROWS_AS(aligned_configurations(Linkage::quad(1, 1, 1, 1)), DegenerateLinkage);
    }
}

TEST_CASE("oval roundtrip and sign-pair agreement") {
    Rng rng(2024);
    int checked = 0, mismatches = 0, roundtrip_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Linkage l = random_quad_linkage(rng, 1.0, 10.0, 1e-4);
        const OvalModel model = build_oval(l);
        for (int k = 0; k < 64; ++k) {
            const double phi = 2.0 * M_PI * k / 64;
            const OvalPoint p = oval_point(model, phi);
            const QuadConfig cfg = reconstruct_quad(l, p.x, p.y, 1e-6 * model.diag_scale());
            const auto d = diagonals(cfg);
            if (std::abs(d[0] - p.x) > 1e-9 * model.diag_scale() ||
                std::abs(d[1] - p.y) > 1e-9 * model.diag_scale())
                roundtrip_bad++;
            const QuadRegion geometric = classify_quad(cfg);
            if (geometric == QuadRegion::aligned) continue;   // sampling landed on a seam
            if (geometric != region_from_signs(p.sgn_fx, p.sgn_fy)) mismatches++;
            ++checked;
        }
    }
    CHECK(checked > 60000);
    CHECK(mismatches == 0);
    CHECK(roundtrip_bad == 0);
}

TEST_CASE("pentagon reconstruction") {
    SUBCASE("regular pentagon") {
        const PentagonConfig p = reconstruct_pentagon(lft::kGolden, lft::kGolden);
        for (double d : p.diagonals) CHECK(d == doctest::Approx(lft::kGolden).epsilon(1e-12));
        CHECK(is_strictly_convex(p));
        for (int i = 0; i < 5; ++i) {
            const double side =
                (p.vertices[static_cast<size_t>((i + 1) % 5)] - p.vertices[static_cast<size_t>(i)]).norm();
            CHECK(side == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("chart point (1.5, 1.7)") {
        const PentagonConfig p = reconstruct_pentagon(1.5, 1.7);
        CHECK(is_strictly_convex(p));
        for (int i = 0; i < 5; ++i) {
            const double side =
                (p.vertices[static_cast<size_t>((i + 1) % 5)] - p.vertices[static_cast<size_t>(i)]).norm();
            CHECK(side == doctest::Approx(1.0).epsilon(1e-12));
        }
        const auto d = diagonals(p);
        CHECK(d[0] == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(d[4] == doctest::Approx(1.7).epsilon(1e-12));
    }
    SUBCASE("infeasible chart") {
        CHECK_THROWS_AS(reconstruct_pentagon(2.5, 1.5), TriangleViolation);
        CHECK_THROWS_AS(reconstruct_pentagon(0.4, 1.6), TriangleViolation);
    }
    SUBCASE("scale factor") {
        const PentagonConfig p = reconstruct_pentagon(1.5, 1.7, {1, 1, 1}, 3.0);
        CHECK(p.diagonals[0] == doctest::Approx(4.5).epsilon(1e-12));
        CHECK((p.vertices[1] - p.vertices[0]).norm() == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("pentagon chart continuity under small perturbations") {
    Rng rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const PentagonConfig p = random_convex_pentagon(rng, 1e-2);
        const double dx = 1e-6 * u(rng), dy = 1e-6 * u(rng);
        const PentagonConfig p2 = reconstruct_pentagon(p.x13 + dx, p.x35 + dy, p.branches);
        for (int i = 0; i < 5; ++i) {
            const double moved = (p2.vertices[static_cast<size_t>(i)] -
                                  p.vertices[static_cast<size_t>(i)]).norm();
            CHECK(moved < 1e-3);   // no branch flips
        }
    }
}

TEST_CASE("canonical frame idempotence") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Linkage l = random_quad_linkage(rng);
        const OvalModel model = build_oval(l);
        const QuadConfig cfg = random_convex_quad(model, rng);
        const QuadConfig again = reconstruct_quad(l, cfg.x, cfg.y, 1e-6 * model.diag_scale());
        for (int i = 0; i < 4; ++i)
            CHECK((again.vertices[static_cast<size_t>(i)] - cfg.vertices[static_cast<size_t>(i)]).norm() <
                  1e-12 * l.perimeter());
    }
    // pentagon: rebuild from vertices reproduces the configuration
    Rng rng2(12);
    for (int trial = 0; trial < 50; ++trial) {
        const PentagonConfig p = random_convex_pentagon(rng2);
        const PentagonConfig q = pentagon_from_vertices(p.vertices);
        for (int i = 0; i < 5; ++i)
            CHECK((q.vertices[static_cast<size_t>(i)] - p.vertices[static_cast<size_t>(i)]).norm() < 1e-12);
    }
}

TEST_CASE("mirror pentagon swaps the chart") {
    const PentagonConfig p = reconstruct_pentagon(1.5, 1.7);
    const PentagonConfig m = mirror_pentagon(p);
    CHECK(m.x35 == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(m.x13 == doctest::Approx(p.diagonals[3]).epsilon(1e-12));   // old x25
    const auto dm = diagonals(m);
    CHECK(dm[3] == doctest::Approx(1.5).epsilon(1e-9));               // new x25 = old x13
    CHECK(dm[1] == doctest::Approx(p.diagonals[2]).epsilon(1e-9));    // x14 <-> x24
}

TEST_CASE("aligned pentagon construction") {
    for (int vertex = 1; vertex <= 5; ++vertex) {
        const PentagonConfig p = aligned_pentagon(vertex, 0.5);
        CHECK(aligned_pentagon_vertex(p) == vertex);
        CHECK_FALSE(is_strictly_convex(p));
        for (int i = 0; i < 5; ++i) {
            const double side =
                (p.vertices[static_cast<size_t>((i + 1) % 5)] - p.vertices[static_cast<size_t>(i)]).norm();
            CHECK(side == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    CHECK(aligned_pentagon_vertex(reconstruct_pentagon(1.5, 1.7)) == 0);
}
