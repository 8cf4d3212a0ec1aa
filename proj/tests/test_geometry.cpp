#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "indicatrix/errors.hpp"
#include "indicatrix/geometry.hpp"
#include "indicatrix/rng.hpp"
#include "indicatrix/theorem3.hpp"
#include "oracles.hpp"

using namespace indicatrix;
using namespace indicatrix::geometry;

TEST_CASE("boundary sampling normals") {
    // Unit disk: normals are radial.
    BoundarySampling disk = sample_boundary(DomainSpec::disk(1.0), 1e-2);
    for (std::size_t i = 0; i < disk.size(); ++i) {
        Vec2 radial = normalized(disk.points[i]);
        CHECK((disk.normals[i] - radial).norm() < 1e-9);
        CHECK(std::abs(disk.normals[i].norm() - 1.0) < 1e-12);
    }

    // Flat-top special domain: graph normals are (0, 1).
    Profile flat = Profile::constant(1.0, 0.0, 1.0);
    BoundarySampling sp = sample_boundary(DomainSpec::special(0.0, 1.0, flat), 1e-2);
    int top = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        if (sp.points[i].y > 0.99 && sp.points[i].x > 0.01 && sp.points[i].x < 0.99) {
            CHECK((sp.normals[i] - Vec2{0.0, 1.0}).norm() < 1e-12);
            ++top;
        }
    }
    CHECK(top > 50);

    // Linear profile: graph normals are (-1, 1)/sqrt(2).
    BoundarySampling tri =
        sample_boundary(DomainSpec::special(0.0, 1.0, Profile::linear(0.0, 1.0)), 1e-2);
    Vec2 expect = Vec2{-1.0, 1.0} / std::sqrt(2.0);
    int graph = 0;
    for (std::size_t i = 0; i < tri.size(); ++i) {
        if ((tri.normals[i] - expect).norm() < 1e-9) ++graph;
    }
    CHECK(graph > 50);

    CHECK_THROWS_AS(sample_boundary(DomainSpec::disk(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("consecutive samples within step") {
    for (double step : {1e-2, 1e-3}) {
        BoundarySampling bs = sample_boundary(DomainSpec::rectangle({1.0, 2.0}), step);
        for (std::size_t i = 1; i < bs.size(); ++i)
            CHECK(bs.arc[i] - bs.arc[i - 1] <= step * (1.0 + 1e-9));
    }
}

TEST_CASE("normal modulus of disk and rectangle") {
    // Disk: measured w(delta) ~ delta (normal gap equals the chord).
    BoundarySampling disk = sample_boundary(DomainSpec::disk(1.0), 1e-3);
    auto m = normal_modulus(disk, {0.01, 0.05, 0.1});
    for (auto [delta, w] : m) CHECK(w == doctest::Approx(delta).epsilon(0.1));
    CHECK(m[0].second <= m[1].second);
    CHECK(m[1].second <= m[2].second);

    // Rectangle: corners force a sqrt(2) gap at any delta above the step.
    BoundarySampling rect = sample_boundary(DomainSpec::rectangle({1.0, 1.0}), 1e-3);
    auto mr = normal_modulus(rect, {0.01, 0.1});
    CHECK(mr[0].second == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(mr[1].second == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(normal_modulus(disk, {}), std::invalid_argument);
}

TEST_CASE("symmetric difference estimates") {
    DomainSpec disk = DomainSpec::disk(1.0);

    // t = 0: identical sets.
    CHECK(symmetric_difference(disk, {0.0, 0.0}, 10000, 42) == 0.0);

    // |t| = 1: lens-area oracle 2(pi - A_lens) ~ 3.8264.
    auto est = symmetric_difference_measure(disk, {1.0, 0.0}, 1 << 20, 42);
    double expect = oracles::disk_sigma(1.0, 1.0);
    CHECK(expect == doctest::Approx(3.8264).epsilon(1e-4));
    CHECK(est.value == doctest::Approx(expect).epsilon(0.01));
    CHECK(est.std_error < 0.05);

    // |t| >= diameter: disjoint translates.
    auto far = symmetric_difference_measure(disk, {2.5, 0.0}, 1 << 18, 42);
    CHECK(far.value == doctest::Approx(2.0 * M_PI).epsilon(0.02));

    // Square against the exact rectangle formula.
    DomainSpec square = DomainSpec::rectangle({1.0, 1.0});
    for (Vec2 t : {Vec2{0.125, 0.0}, Vec2{0.1, 0.2}, Vec2{0.5, 0.5}}) {
        auto e = symmetric_difference_measure(square, t, 1 << 20, 7);
        CHECK(e.value == doctest::Approx(oracles::square_sigma(t.x, t.y)).epsilon(0.02));
    }

    // Determinism for a fixed seed.
    auto a = symmetric_difference_measure(disk, {0.3, 0.1}, 50000, 11);
    auto b = symmetric_difference_measure(disk, {0.3, 0.1}, 50000, 11);
    CHECK(a.value == b.value);

    CHECK_THROWS_AS(symmetric_difference_measure(disk, {0.1, 0.0}, 100, 1),
                    std::invalid_argument);
}

TEST_CASE("sigma upper bound min(C|t|, 2|D|)") {
    DomainSpec disk = DomainSpec::disk(1.0);
    const double area = disk.area();
    // Fit C on a training ladder, assert on a disjoint test set.
    double cfit = 0.0;
    SplitMix64 rng(5);
    for (double t : log_spaced(1e-3, 1e-1, 8)) {
        double angle = 2.0 * M_PI * rng.next_double();
        double sigma =
            symmetric_difference(disk, {t * std::cos(angle), t * std::sin(angle)}, 200000, 3);
        cfit = std::max(cfit, sigma / t);
    }
    for (double t : {2e-3, 7e-3, 0.03, 0.4, 1.7, 3.0}) {
        double sigma = symmetric_difference(disk, {0.0, t}, 200000, 9);
        CHECK(sigma <= std::min(1.1 * cfit * t, 2.0 * area) * (1.0 + 3e-2));
    }
}

TEST_CASE("neighborhood areas") {
    // Unit-square boundary: 8 delta + corner terms.
    DomainSpec square = DomainSpec::rectangle({1.0, 1.0});
    double delta = 0.01;
    double a_sq = neighborhood_area(square, delta, delta / 16.0);
    double expect_sq = 8.0 * delta + (M_PI - 4.0) * delta * delta;
    CHECK(a_sq == doctest::Approx(expect_sq).epsilon(0.05));

    // Unit-circle boundary: annulus of width 2 delta.
    double a_disk = neighborhood_area(DomainSpec::disk(1.0), delta, delta / 16.0);
    CHECK(a_disk == doctest::Approx(4.0 * M_PI * delta).epsilon(0.05));

    // Monotone in delta.
    double prev = 0.0;
    for (double d : {0.05, 0.1, 0.5, 2.0}) {
        double a = neighborhood_area(square, d, d / 8.0);
        CHECK(a >= prev);
        prev = a;
    }

    CHECK_THROWS_AS(neighborhood_area(square, 0.01, 0.01), std::invalid_argument);
}

TEST_CASE("minkowski dimension of rectifiable and fractal curves") {
    auto deltas = log_spaced(8e-4, 0.8, 13);

    auto sq = minkowski_dimension(DomainSpec::rectangle({1.0, 1.0}), deltas);
    CHECK(sq.dimension == doctest::Approx(1.0).epsilon(0.05));

    auto dk = minkowski_dimension(DomainSpec::disk(1.0), deltas);
    CHECK(dk.dimension == doctest::Approx(1.0).epsilon(0.05));

    // Koch level-8 prefractal: log 4 / log 3.
    auto koch = minkowski_dimension(make_koch_snowflake(8), log_spaced(5e-4, 0.5, 13));
    CHECK(koch.dimension == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(0.04));
    CHECK(koch.dimension >= 1.0 - 0.05);

    CHECK_THROWS_AS(minkowski_dimension(DomainSpec::disk(1.0), {0.1, 0.2, 0.4}),
                    std::invalid_argument);
}

TEST_CASE("koch snowflake polygon sanity") {
    DomainSpec koch = make_koch_snowflake(4);
    // Level-l area: A_0 (1 + (1/3) sum (4/9)^k) with unit-side triangle.
    double a0 = std::sqrt(3.0) / 4.0;
    double extra = 0.0;
    for (int k = 0; k < 4; ++k) extra += std::pow(4.0 / 9.0, k);
    double expect = a0 * (1.0 + extra / 3.0);
    CHECK(koch.area() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(koch.contains({0.5, 0.2}));
    CHECK(koch.contains({0.5, -0.2})); // inside the outward bump on the base edge
    CHECK_FALSE(koch.contains({0.5, -0.35}));

    // Level 8 point membership away from the boundary band.
    DomainSpec koch8 = make_koch_snowflake(8);
    CHECK(koch8.contains({0.5, 0.4}));
    CHECK_FALSE(koch8.contains({-0.2, 0.5}));
}

TEST_CASE("affine image plumbing") {
    DomainSpec disk = DomainSpec::disk(1.0);
    DomainSpec scaled = affine_image(disk, Mat2::scale(2.0, 2.0), {0.0, 0.0});
    CHECK(scaled.area() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    CHECK(scaled.contains({1.5, 0.0}));
    CHECK_FALSE(disk.contains({1.5, 0.0}));

    CHECK_THROWS_AS(affine_image(disk, Mat2{1.0, 2.0, 2.0, 4.0}, {0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("surrogate profile contract") {
    using moduli::Modulus;
    Modulus m = Modulus::power(0.5);

    // eta = 0: phi' is the plain ramp, phi is quadratic, and accepted
    // (a parabola is nowhere linear).
    Profile quad = make_surrogate_profile(Modulus::power(1.0), 0.0, 1.0, 0.0, 8);
    for (double t : {0.1, 0.5, 0.9}) {
        double expect = 0.5 * (1.0 - (1.0 - t) * (1.0 - t));
        CHECK(quad(t) == doctest::Approx(expect).epsilon(1e-12));
    }
    // Antiderivative of phi' reproduces phi (quadrature oracle).
    for (double t : {0.3, 0.7}) {
        double by_quad = integrate_adaptive([&](double s) { return quad.deriv(s); }, 0.0, t,
                                            1e-12, 1e-14);
        CHECK(quad(t) == doctest::Approx(by_quad).epsilon(1e-10));
    }

    Profile phi = make_surrogate_profile(m, 0.0, 1.0, 0.25, 16);
    CHECK(phi(0.0) == doctest::Approx(0.0));
    CHECK(phi.deriv(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi.deriv(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    // Positivity on a dense grid.
    for (int i = 1; i < 2000; ++i) CHECK(phi.deriv(i / 2000.0) > 0.0);
    // Closed-form antiderivative of phi matches quadrature.
    double direct = integrate_adaptive([&](double s) { return phi(s); }, 0.0, 1.0, 1e-11, 1e-13);
    CHECK(phi.antiderivative(1.0) == doctest::Approx(direct).epsilon(1e-9));

    // Measured gradient modulus bounded by a stable constant times m.
    double cfit = gradient_modulus_fit_constant(phi, {1e-4, 1e-3, 1e-2});
    CHECK(cfit > 0.0);
    CHECK(cfit < 10.0);

    CHECK_THROWS_AS(make_surrogate_profile(m, 0.0, 1.0, 0.45, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_surrogate_profile(m, 0.0, 1.0, -0.1, 16), std::invalid_argument);
    // Lipschitz modulus fails strict doubling, so eta > 0 is rejected.
    CHECK_THROWS_AS(make_surrogate_profile(Modulus::power(1.0), 0.0, 1.0, 0.25, 16),
                    std::invalid_argument);
}

TEST_CASE("theorem 3 constructor") {
    using moduli::Modulus;
    Profile phi = make_surrogate_profile(Modulus::power(0.5), 0.0, 1.0, 0.25, 16);
    DomainSpec d = build_theorem3_domain(phi, 1e-6);

    auto rep = theorem3_junction_report(d);
    CHECK(rep.corner_mismatch.size() == 4);
    CHECK(rep.apex_mismatch.size() == 4);
    CHECK(rep.max_mismatch() < 1e-6);

    // Single closed boundary curve.
    BoundarySampling bs = sample_boundary(d, 1e-2);
    CHECK(bs.closed);
    CHECK((bs.points.front() - bs.points.back()).norm() < 3e-2);

    CHECK(boundary_has_no_straight_segment(d));

    // A profile violating the endpoint contract is rejected.
    Profile bad = Profile::from_functions(
        [](double t) { return t * t; }, [](double t) { return 2.0 * t; }, 0.0, 1.0,
        Modulus::power(1.0), 2.0);
    CHECK_THROWS_AS(build_theorem3_domain(bad, 1e-6), InvariantViolation);
}

TEST_CASE("assembled membership and area") {
    using moduli::Modulus;
    Profile phi = make_surrogate_profile(Modulus::power(0.5), 0.0, 1.0, 0.2, 12);
    DomainSpec d = build_theorem3_domain(phi, 1e-6);
    const double side = 2.0;

    CHECK(d.contains({1.0, 1.0}));                       // square interior
    CHECK(d.contains({1.0, -0.5 * d.arch_height(1.0)})); // bottom arch
    CHECK(d.contains({side + 0.5 * d.arch_height(1.0), 1.0}));
    CHECK_FALSE(d.contains({-1.0, -1.0}));
    CHECK_FALSE(d.contains({1.0, side + d.arch_height(1.0) + 0.1}));

    double arch = phi.antiderivative(1.0);
    CHECK(d.area() == doctest::Approx(side * side + 8.0 * arch).epsilon(1e-12));

    // MC cross-check of the area through a far translate: sigma = 2 |D|.
    double far = symmetric_difference(d, {10.0, 0.0}, 1 << 20, 3);
    CHECK(far == doctest::Approx(2.0 * d.area()).epsilon(0.02));
}

TEST_CASE("normal modulus fit recovers the surrogate exponent") {
    using moduli::Modulus;
    // Loose smoke version of the acceptance criterion: alpha = 0.5, short
    // delta ladder, generous tolerance.
    Profile phi = make_surrogate_profile(Modulus::power(0.5), 0.0, 1.0, 0.25, 18);
    DomainSpec d = build_theorem3_domain(phi, 1e-6);
    auto fit = normal_modulus_fit(d, log_spaced(3e-4, 3e-3, 4));
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("domain json round trips") {
    for (const char* text : {
             R"({"shape":"disk","radius":1.0,"center":[0.5,0.0]})",
             R"({"shape":"rectangle","widths":[1.0,2.0]})",
             R"({"shape":"polygon","vertices":[[0,0],[1,0],[0.5,1]]})",
             R"({"shape":"special","interval":[0,1],"profile":{"kind":"linear","interval":[0,1]}})",
             R"({"shape":"affine","base":{"shape":"disk","radius":1.0},"matrix":[[2,0],[0,1]],"shift":[0.1,0.2]})",
             R"({"shape":"assembled","modulus":{"kind":"power","alpha":0.5},"eta":0.2,"depth":10})",
         }) {
        DomainSpec d = DomainSpec::from_json(nlohmann::json::parse(text));
        DomainSpec back = DomainSpec::from_json(d.to_json());
        CHECK(back.area() == doctest::Approx(d.area()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(DomainSpec::from_json(nlohmann::json{{"shape", "blob"}}), ConfigError);
    // Clockwise and self-intersecting polygons are rejected.
    CHECK_THROWS_AS(DomainSpec::polygon({{0, 0}, {0.5, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(DomainSpec::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    std::invalid_argument);
}
