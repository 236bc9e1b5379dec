#include "doctest.h"

#include "pentile/geometry.hpp"

#include <cmath>

using namespace pentile;

namespace {

const AngleVector kRegular = make_angles(108, 108, 108, 108, 108);
const EdgeVector kUnit = make_edges(1, 1, 1, 1, 1);

double measured_angle_deg(const PentagonShape& s, int v) {
    const Vec2 prev = s.vertex(mod5(v - 1)) - s.vertex(v);
    const Vec2 next = s.vertex(mod5(v + 1)) - s.vertex(v);
    const double c = prev.dot(next) / (prev.norm() * next.norm());
    return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / M_PI;
}

}  // namespace

TEST_CASE("closure defect: regular pentagon closes, perturbed one does not") {
    CHECK(closure_defect(kRegular, kUnit).norm() < 1e-12);
    CHECK(closure_defect(kRegular, make_edges(1, 1, 1, 1, 2)).norm() > 0.5);
}

TEST_CASE("closure defect: Cairo-style data closes at the root-solved edge length") {
    const AngleVector cairo_angles = make_angles(120, 120, 90, 120, 90);
    // independent oracle: bisection on the defect's x component over x
    double lo = 0.5, hi = 3.0;
    auto fx = [&](double x) {
        return closure_defect(cairo_angles, make_edges(1, 1, x, x, 1)).x();
    };
    REQUIRE(fx(lo) > 0);
    REQUIRE(fx(hi) < 0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fx(mid) > 0 ? lo : hi) = mid;
    }
    const double solved = 0.5 * (lo + hi);
    CHECK(solved == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(closure_defect(cairo_angles, make_edges(1, 1, solved, solved, 1)).norm() < 1e-12);
    // the y component vanishes identically for this family
    CHECK(std::abs(closure_defect(cairo_angles, make_edges(1, 1, 1.7, 1.7, 1)).y()) < 1e-12);
}

TEST_CASE("closure defect scales linearly with uniform edge scaling") {
    const AngleVector a = make_angles(100, 110, 105, 115, 110);
    const EdgeVector e = make_edges(1.0, 0.8, 1.3, 0.9, 1.1);
    const Vec2 d1 = closure_defect(a, e);
    EdgeVector scaled;
    scaled.len = 3.5 * e.len;
    const Vec2 d2 = closure_defect(a, scaled);
    CHECK((d2 - 3.5 * d1).norm() < 1e-12 * d2.norm() + 1e-15);
}

TEST_CASE("build_pentagon: regular data realizes with matching measurements") {
    const auto s = build_pentagon(kRegular, kUnit);
    for (int i = 0; i < 5; ++i) {
        CHECK(s.edge_length(i) == doctest::Approx(1.0));
        CHECK(measured_angle_deg(s, i) == doctest::Approx(108.0).epsilon(1e-9));
    }
    CHECK(s.area() > 0);
}

TEST_CASE("build_pentagon error paths") {
    CHECK_THROWS_AS(build_pentagon(make_angles(190, 95, 85, 85, 85), kUnit), NotConvex);
    CHECK_THROWS_AS(build_pentagon(kRegular, make_edges(1, 1, 1, 1, 2)), NotClosed);
    CHECK_THROWS_AS(build_pentagon(make_angles(100, 100, 100, 100, 100), kUnit), NotClosed);
}

TEST_CASE("realized shape round-trips its angle vector") {
    const AngleVector a = make_angles(120, 120, 90, 120, 90);
    const EdgeVector e = make_edges(std::sqrt(3.0) - 1.0, 1, 1, 1, 1);
    const auto s = build_pentagon(a, e);
    for (int v = 0; v < 5; ++v)
        CHECK(measured_angle_deg(s, v) == doctest::Approx(a.deg(v)).epsilon(1e-9));
}

TEST_CASE("overlap classification") {
    const auto s = build_pentagon(make_angles(120, 120, 90, 120, 90),
                                  make_edges(std::sqrt(3.0) - 1.0, 1, 1, 1, 1));
    Congruence id;
    Congruence far_away;
    far_away.translation = Vec2(10 * s.diameter(), 0);
    CHECK(overlap(s, id, s, far_away) == OverlapKind::Disjoint);
    CHECK(overlap(s, id, s, id) == OverlapKind::InteriorsIntersect);

    // mirror across edge a (which lies on the x axis): full shared edge
    Congruence reflected;
    reflected.mirrored = true;
    CHECK(overlap(s, id, s, reflected) == OverlapKind::SharesBoundaryOnly);

    // symmetry of the predicate
    CHECK(overlap(s, reflected, s, id) == OverlapKind::SharesBoundaryOnly);
    CHECK(overlap(s, far_away, s, id) == OverlapKind::Disjoint);
}

TEST_CASE("congruence algebra") {
    Congruence g;
    g.rotation_deg = 37.0;
    g.translation = Vec2(0.5, -1.25);
    g.mirrored = true;
    const Congruence gi = g.inverse();
    const Vec2 p(0.3, 0.7);
    CHECK((gi.apply(g.apply(p)) - p).norm() < 1e-12);

    // a pure reflection (no glide part) applied twice is the identity
    Congruence axis_reflection;
    axis_reflection.mirrored = true;
    axis_reflection.rotation_deg = 74.0;  // axis at 37 degrees through the origin
    const Congruence twice = axis_reflection.then(axis_reflection);
    CHECK_FALSE(twice.mirrored);
    CHECK((twice.apply(p) - p).norm() < 1e-9);
    Congruence line_reflection;  // about y = 1
    line_reflection.mirrored = true;
    line_reflection.translation = Vec2(0, 2);
    CHECK((line_reflection.then(line_reflection).apply(p) - p).norm() < 1e-12);

    // composition matches sequential application
    Congruence h;
    h.rotation_deg = -71.0;
    h.translation = Vec2(2, 3);
    const Congruence gh = g.then(h);
    CHECK((gh.apply(p) - h.apply(g.apply(p))).norm() < 1e-12);
}
