#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "linkforge/numeric.hpp"
#include "linkforge/pentagon_control.hpp"
#include "linkforge/sampling.hpp"

using namespace linkforge;

namespace {

// Plain central-difference oracle for the diagonal partials, step and scheme
// independent of the Richardson path under test.
PartialSet plain_fd_partials(const PentagonConfig& cfg, double h) {
    auto dep = [&](double x13, double x35, int k) {
        const PentagonConfig c = reconstruct_pentagon(x13, x35, cfg.branches);
        return c.diagonals[static_cast<size_t>(k + 1)];   // x14, x24, x25
    };
    PartialSet p{};
    p.alpha1 = (dep(cfg.x13, cfg.x35 + h, 0) - dep(cfg.x13, cfg.x35 - h, 0)) / (2 * h);
    p.beta1 = (dep(cfg.x13, cfg.x35 + h, 1) - dep(cfg.x13, cfg.x35 - h, 1)) / (2 * h);
    p.gamma1 = (dep(cfg.x13, cfg.x35 + h, 2) - dep(cfg.x13, cfg.x35 - h, 2)) / (2 * h);
    p.alpha2 = (dep(cfg.x13 + h, cfg.x35, 0) - dep(cfg.x13 - h, cfg.x35, 0)) / (2 * h);
    p.beta2 = (dep(cfg.x13 + h, cfg.x35, 1) - dep(cfg.x13 - h, cfg.x35, 1)) / (2 * h);
    p.gamma2 = (dep(cfg.x13 + h, cfg.x35, 2) - dep(cfg.x13 - h, cfg.x35, 2)) / (2 * h);
    return p;
}

} // namespace

TEST_CASE("diagonal partials at the regular pentagon") {
    const PentagonConfig reg = reconstruct_pentagon(lft::kGolden, lft::kGolden);
    const PartialSet p = diagonal_partials(reg);
    // criticality identities at the symmetric point pin every value
    CHECK(p.alpha1 == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(p.beta1 == doctest::Approx(-1.0 / lft::kGolden).epsilon(1e-8));
    CHECK(p.gamma1 == doctest::Approx(1.0 / lft::kGolden).epsilon(1e-8));
    CHECK(p.alpha2 == doctest::Approx(1.0 / lft::kGolden).epsilon(1e-8));
    CHECK(p.beta2 == doctest::Approx(-1.0 / lft::kGolden).epsilon(1e-8));
    CHECK(p.gamma2 == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(p.alpha1 + p.beta1 + p.gamma1 + 1.0 == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(p.alpha2 + p.beta2 + p.gamma2 + 1.0 == doctest::Approx(0.0).epsilon(1e-8));
    // mirror symmetry of the regular pentagon exchanges the two sets
    CHECK(p.alpha1 == doctest::Approx(p.gamma2).epsilon(1e-8));
    CHECK(p.beta1 == doctest::Approx(p.beta2).epsilon(1e-8));
    CHECK(p.gamma1 == doctest::Approx(p.alpha2).epsilon(1e-8));
}

TEST_CASE("partials match an independent finite-difference oracle") {
    const PentagonConfig cfg = reconstruct_pentagon(1.5, 1.7);
    const PartialSet a = diagonal_partials(cfg);
    const PartialSet b = plain_fd_partials(cfg, 1e-6);
    CHECK(a.alpha1 == doctest::Approx(b.alpha1).epsilon(1e-5));
    CHECK(a.beta1 == doctest::Approx(b.beta1).epsilon(1e-5));
    CHECK(a.gamma1 == doctest::Approx(b.gamma1).epsilon(1e-5));
    CHECK(a.alpha2 == doctest::Approx(b.alpha2).epsilon(1e-5));
    CHECK(a.beta2 == doctest::Approx(b.beta2).epsilon(1e-5));
    CHECK(a.gamma2 == doctest::Approx(b.gamma2).epsilon(1e-5));
}

TEST_CASE("partial sign pattern over the convex region") {
    // alpha1, beta1, beta2, gamma2 negative; gamma1, alpha2 positive
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const PentagonConfig cfg = random_convex_pentagon(rng);
        const PartialSet p = diagonal_partials(cfg);
        CHECK(p.alpha1 < 0.0);
        CHECK(p.beta1 < 0.0);
        CHECK(p.beta2 < 0.0);
        CHECK(p.gamma2 < 0.0);
        CHECK(p.gamma1 > 0.0);
        CHECK(p.alpha2 > 0.0);
    }
}

TEST_CASE("chart boundary guard") {
    const PentagonConfig near_fold = reconstruct_pentagon(2.0 - 1e-8, 1.5);
    CHECK_THROWS_AS(diagonal_partials(near_fold), ChartBoundary);
}

TEST_CASE("stabilize_pentagon") {
    SUBCASE("regular pentagon gives (1, 1)") {
        const StabilizingPair p = stabilize_pentagon(reconstruct_pentagon(lft::kGolden, lft::kGolden));
        CHECK(p.s == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(p.t == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(p.A * p.C < 0.0);
    }
    SUBCASE("chart point (1.5, 1.7) with certificate") {
        const PentagonConfig cfg = reconstruct_pentagon(1.5, 1.7);
        const StabilizingPair p = stabilize_pentagon(cfg);
        CHECK(p.s > 0.0);
        CHECK(p.t > 0.0);
        CHECK(verify_critical(cfg, p.s, p.t) <= 1e-8);
        // frozen from an independent prototype of the criticality system
        CHECK(p.s == doctest::Approx(1.9614926).epsilon(1e-5));
        CHECK(p.t == doctest::Approx(0.7739677).epsilon(1e-5));
    }
    SUBCASE("quadratic residual at the returned root") {
        Rng rng(33);
        for (int k = 0; k < 50; ++k) {
            const PentagonConfig cfg = random_convex_pentagon(rng);
            const StabilizingPair p = stabilize_pentagon(cfg);
            const double res = p.A + p.B * p.s + p.C * p.s * p.s;
            const double scale = std::max({std::abs(p.A), std::abs(p.B * p.s),
                                           std::abs(p.C * p.s * p.s)});
            CHECK(std::abs(res) <= 1e-10 * scale);
            // both criticality equations vanish at (s, t)
            const PartialSet ps = diagonal_partials(cfg);
            const auto d = cfg.diagonals;
            const double x14 = d[1], x24 = d[2], x25 = d[3];
            const double eq1 = ps.alpha1 / (x14 * x14) + ps.beta1 / (x24 * x24) +
                               p.s * ps.gamma1 / (x25 * x25) +
                               p.s * p.t / (cfg.x35 * cfg.x35);
            const double eq2 = ps.alpha2 / (x14 * x14) + ps.beta2 / (x24 * x24) +
                               p.t / (cfg.x13 * cfg.x13) + p.s * ps.gamma2 / (x25 * x25);
            const double term = 1.0 / (x14 * x14) + 1.0 / (x24 * x24) +
                                (1.0 + p.s + p.t + p.s * p.t);
            CHECK(std::abs(eq1) <= 1e-8 * term);
            CHECK(std::abs(eq2) <= 1e-8 * term);
        }
    }
    SUBCASE("aligned input rejected") {
        CHECK_THROWS_AS(stabilize_pentagon(aligned_pentagon(2, 0.5)), NotStrictlyConvex);
    }
}

TEST_CASE("mirror equivariance of the stabilizing pair") {
    Rng rng(44);
    for (int k = 0; k < 40; ++k) {
        const PentagonConfig cfg = random_convex_pentagon(rng);
        const StabilizingPair p = stabilize_pentagon(cfg);
        const StabilizingPair q = stabilize_pentagon(mirror_pentagon(cfg));
        CHECK(q.s == doctest::Approx(p.t).epsilon(1e-8));
        CHECK(q.t == doctest::Approx(p.s).epsilon(1e-8));
    }
}

TEST_CASE("verify_critical") {
    const PentagonConfig reg = reconstruct_pentagon(lft::kGolden, lft::kGolden);
    CHECK(verify_critical(reg, 1.0, 1.0) <= 1e-8);
    CHECK(verify_critical(reg, 2.0, 1.0) > 1e-3);
    // The certificate vanishes on both charts at a critical pair. (Away from
    // critical pairs the two chart-gradient norms need not agree: the mirror
    // is a chart change, not an isometry of the chart plane.)
    const PentagonConfig cfg = reconstruct_pentagon(1.4, 1.75);
    const StabilizingPair p = stabilize_pentagon(cfg);
    CHECK(verify_critical(cfg, p.s, p.t) <= 1e-8);
    CHECK(verify_critical(mirror_pentagon(cfg), p.t, p.s) <= 1e-8);
    CHECK(verify_critical(mirror_pentagon(cfg), 3.0, 2.0) > 1e-3);
}

TEST_CASE("boundary pulling flex decreases the potential") {
    SUBCASE("single aligned configuration, unit charges") {
        const PentagonConfig cfg = aligned_pentagon(2, 0.5);
        CHECK(boundary_descent_check(cfg, 1.0, 1.0) < 0.0);
    }
    SUBCASE("random positive charges") {
        Rng rng(66);
        std::uniform_real_distribution<double> st(1e-3, 10.0);
        const PentagonConfig cfg = aligned_pentagon(4, 0.4);
        for (int k = 0; k < 10; ++k)
            CHECK(boundary_descent_check(cfg, st(rng), st(rng)) < 0.0);
    }
    SUBCASE("finite-difference oracle along the constructed flex") {
        const PentagonConfig cfg = aligned_pentagon(2, 0.5);
        const double s = 1.3, t = 0.8;
        const int k = aligned_pentagon_vertex(cfg);
        REQUIRE(k == 2);
        const auto& v = cfg.vertices;
        Vec2 n(0, 0);
        {
            const Vec2 e = v[2] - v[1];
            n = Vec2(-e.y(), e.x()).normalized();
            Vec2 centroid(0, 0);
            for (const auto& pt : v) centroid += pt / 5.0;
            if (n.dot(v[1] - centroid) < 0.0) n = -n;
        }
        auto energy_displaced = [&](double delta) {
            std::array<Vec2, 5> moved = v;
            moved[1] += delta * n;
            double sum = 0.0;
            const std::vector<double> q = ChargeSystem::pentagon(s, t).charges();
            for (int i = 0; i < 5; ++i)
                for (int j = i + 2; j < 5; ++j) {
                    if (i == 0 && j == 4) continue;
                    sum += q[static_cast<size_t>(i)] * q[static_cast<size_t>(j)] /
                           (moved[static_cast<size_t>(j)] - moved[static_cast<size_t>(i)]).norm();
                }
            return sum;
        };
        const double fd = num::central_diff(energy_displaced, 0.0, 1e-7);
        CHECK(boundary_descent_check(cfg, s, t) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(fd < 0.0);
    }
    SUBCASE("strictly convex input rejected") {
        CHECK_THROWS_AS(boundary_descent_check(reconstruct_pentagon(1.5, 1.7), 1.0, 1.0),
                        NotAligned);
    }
}

TEST_CASE("mixed-sign companion root") {
    SUBCASE("regular pentagon") {
        const MixedSignReport rep = mixed_sign_consistency(reconstruct_pentagon(lft::kGolden, lft::kGolden));
        CHECK(rep.s_neg < 0.0);
        CHECK(rep.t_companion <= 0.0);
        CHECK(rep.ac < 0.0);
        CHECK(rep.consistent);
        CHECK(rep.s_neg == doctest::Approx(-lft::kGolden).epsilon(1e-6));
        CHECK(rep.t_companion == doctest::Approx(-lft::kGolden).epsilon(1e-6));
    }
    SUBCASE("randomized") {
        Rng rng(88);
        for (int k = 0; k < 60; ++k) {
            const MixedSignReport rep = mixed_sign_consistency(random_convex_pentagon(rng));
            CHECK(rep.consistent);
            CHECK(rep.ac < 0.0);
        }
    }
}

TEST_CASE("global minimum probe") {
    const PentagonConfig reg = reconstruct_pentagon(lft::kGolden, lft::kGolden);

    SUBCASE("certified pair finds nothing lower") {
        const ProbeReport rep = global_min_probe(reg, 1.0, 1.0, 64, 2024);
        CHECK(rep.verdict == ProbeVerdict::no_lower_found);
        CHECK(rep.descents == 64);
        CHECK(rep.converged == rep.descents);
        CHECK_FALSE(rep.vacuous);
    }
    SUBCASE("perturbed charges expose a descent") {
        const ProbeReport rep = global_min_probe(reg, 1.5, 1.0, 64, 2024);
        CHECK(rep.verdict == ProbeVerdict::lower_found);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->energy < rep.reference_energy);
    }
    SUBCASE("zero seeds is vacuous") {
        const ProbeReport rep = global_min_probe(reg, 1.0, 1.0, 0);
        CHECK(rep.verdict == ProbeVerdict::no_lower_found);
        CHECK(rep.vacuous);
        CHECK(rep.descents == 0);
    }
}
