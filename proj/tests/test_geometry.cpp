#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pltrack/error.hpp"
#include "pltrack/geometry.hpp"

using namespace pltrack;
using namespace pltrack::geometry;

namespace {

const double kPi = std::numbers::pi;

// Intersection of two rays written parametrically; solved by Cramer's rule.
Position2D ray_intersection(Position2D r, double a, Position2D s, double b) {
    const double dx1 = std::cos(a), dy1 = std::sin(a);
    const double dx2 = std::cos(b), dy2 = std::sin(b);
    const double det = dx1 * (-dy2) - dy1 * (-dx2);
    const double t = ((s.x - r.x) * (-dy2) - (s.y - r.y) * (-dx2)) / det;
    return {r.x + t * dx1, r.y + t * dy1};
}

// Circle intersection by sampling circle 1 densely, bracketing the sign
// changes of |p - c2| - r2 and bisecting each bracket.
std::vector<Position2D> sampled_intersections(const Circle& c1, const Circle& c2) {
    auto at = [&](double t) { return c1.center + c1.radius * Position2D{std::cos(t), std::sin(t)}; };
    auto f = [&](double t) { return distance(at(t), c2.center) - c2.radius; };
    std::vector<Position2D> hits;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double lo = 2 * kPi * i / n, hi = 2 * kPi * (i + 1) / n;
        double flo = f(lo), fhi = f(hi);
        if (flo == 0.0) {
            hits.push_back(at(lo));
            continue;
        }
        if ((flo < 0) == (fhi < 0)) continue;
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        hits.push_back(at(0.5 * (lo + hi)));
    }
    return hits;
}

Position2D sampled_radical_point(const Circle& c1, const Circle& c2) {
    const auto hits = sampled_intersections(c1, c2);
    REQUIRE((hits.size() == 1 || hits.size() == 2));
    // a single hit is a point of contact
    const Position2D mid = 0.5 * (hits.front() + hits.back());
    // project the chord midpoint onto the center line
    const Position2D u = (1.0 / distance(c1.center, c2.center)) * (c2.center - c1.center);
    const double t = (mid.x - c1.center.x) * u.x + (mid.y - c1.center.y) * u.y;
    return c1.center + t * u;
}

Position2D rotate(Position2D p, double phi) {
    return {p.x * std::cos(phi) - p.y * std::sin(phi), p.x * std::sin(phi) + p.y * std::cos(phi)};
}

bool on_ray_line(Position2D p, Position2D origin, double angle, double tol) {
    // perpendicular distance from p to the line through origin with direction angle
    const double d = std::abs((p.x - origin.x) * std::sin(angle) - (p.y - origin.y) * std::cos(angle));
    return d <= tol;
}

}  // namespace

TEST_CASE("triangulate: worked examples") {
    auto p = triangulate({0, 0}, {10, 0}, {deg2rad(45)}, {deg2rad(135)});
    CHECK(p.x == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(5.0).epsilon(1e-12));

    // oracle value, frozen
    const Position2D frozen{4.0, 6.928203230275509};
    const auto oracle = ray_intersection({0, 0}, deg2rad(60), {8, 0}, deg2rad(120));
    CHECK(oracle.x == doctest::Approx(frozen.x).epsilon(1e-12));
    CHECK(oracle.y == doctest::Approx(frozen.y).epsilon(1e-12));
    p = triangulate({0, 0}, {8, 0}, {deg2rad(60)}, {deg2rad(120)});
    CHECK(p.x == doctest::Approx(frozen.x).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(frozen.y).epsilon(1e-12));
}

TEST_CASE("triangulate: degenerate bearings") {
    try {
        triangulate({0, 0}, {10, 0}, {deg2rad(30)}, {deg2rad(30)});
        FAIL("expected ParallelBearings");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParallelBearings);
    }
    try {
        triangulate({0, 0}, {10, 0}, {kPi / 2}, {deg2rad(30)});
        FAIL("expected VerticalBearing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::VerticalBearing);
    }
    // opposite directions along the same slope are parallel lines too
    CHECK_THROWS_AS(triangulate({0, 0}, {0, 5}, {deg2rad(20)}, {deg2rad(200)}), Error);
}

TEST_CASE("triangulate: round trip and rotation equivariance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-500, 500);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const Position2D r{coord(rng), coord(rng)}, s{coord(rng), coord(rng)}, t{coord(rng), coord(rng)};
        const double a = std::atan2(t.y - r.y, t.x - r.x);
        const double b = std::atan2(t.y - s.y, t.x - s.x);
        // keep away from near-parallel and near-vertical cases where the
        // tangent form loses the 1e-6 m budget
        if (std::abs(std::sin(a - b)) < 0.05 || std::abs(std::cos(a)) < 0.05 || std::abs(std::cos(b)) < 0.05)
            continue;
        const auto p = triangulate(r, s, {a}, {b});
        REQUIRE(distance(p, t) < 1e-6);
        CHECK(on_ray_line(p, r, a, 1e-6));
        CHECK(on_ray_line(p, s, b, 1e-6));

        const double phi = ang(rng);
        const double ra = a + phi, rb = b + phi;
        if (std::abs(std::cos(ra)) < 0.05 || std::abs(std::cos(rb)) < 0.05) continue;
        const auto q = triangulate(rotate(r, phi), rotate(s, phi), {ra}, {rb});
        REQUIRE(distance(q, rotate(p, phi)) < 1e-6);
        ++checked;
    }
    CHECK(checked > 5000);
}

TEST_CASE("fit_line: examples and degenerate cases") {
    auto l = fit_line({0, 0}, {2, 4});
    REQUIRE_FALSE(l.is_vertical());
    CHECK(std::get<SlopeLine>(l.form).slope == doctest::Approx(2.0));
    CHECK(std::get<SlopeLine>(l.form).intercept == doctest::Approx(0.0));

    l = fit_line({1, 1}, {3, 5});
    CHECK(std::get<SlopeLine>(l.form).slope == doctest::Approx(2.0));
    CHECK(std::get<SlopeLine>(l.form).intercept == doctest::Approx(-1.0));
    CHECK(l.distance_to({1, 1}) < 1e-12);
    CHECK(l.distance_to({3, 5}) < 1e-12);

    l = fit_line({2, 0}, {2, 7});
    REQUIRE(l.is_vertical());
    CHECK(std::get<VerticalLine>(l.form).x0 == 2.0);

    CHECK_THROWS_AS(fit_line({1, 1}, {1, 1}), Error);
}

TEST_CASE("fit_line: both points lie on the line") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-100, 100);
    for (int i = 0; i < 1000; ++i) {
        const Position2D a{c(rng), c(rng)}, b{c(rng), c(rng)};
        const auto l = fit_line(a, b);
        CHECK(l.distance_to(a) < 1e-9);
        CHECK(l.distance_to(b) < 1e-9);
    }
}

TEST_CASE("zone_forward_circle: examples") {
    auto c = zone_forward_circle({0, 0}, {3, 4});
    CHECK(c.center.x == doctest::Approx(6.0));
    CHECK(c.center.y == doctest::Approx(8.0));
    CHECK(c.radius == doctest::Approx(2.886751345948129));
    CHECK(5.0 / std::sqrt(3.0) == doctest::Approx(2.8868).epsilon(1e-4));

    c = zone_forward_circle({0, 0}, {std::sqrt(3.0), 0});
    CHECK(c.center.x == doctest::Approx(2 * std::sqrt(3.0)));
    CHECK(c.center.y == doctest::Approx(0.0));
    CHECK(c.radius == doctest::Approx(1.0));

    c = zone_forward_circle({0, 0}, {0, 2});
    CHECK(c.center.x == doctest::Approx(0.0));
    CHECK(c.center.y == doctest::Approx(4.0));
    CHECK(c.radius == doctest::Approx(1.1547).epsilon(1e-4));

    CHECK_THROWS_AS(zone_forward_circle({1, 2}, {1, 2}), Error);
}

TEST_CASE("radical_point: examples against the sampling oracle") {
    auto p = radical_point({{0, 0}, 1}, {{2, 0}, 1});
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(0.0));

    const Position2D frozen_a{2.0, 0.0};
    auto o = sampled_radical_point({{0, 0}, 2}, {{3, 0}, 1});
    CHECK(o.x == doctest::Approx(frozen_a.x).epsilon(1e-6));
    CHECK(std::abs(o.y) < 1e-6);
    p = radical_point({{0, 0}, 2}, {{3, 0}, 1});
    CHECK(p.x == doctest::Approx(frozen_a.x).epsilon(1e-12));
    CHECK(std::abs(p.y) < 1e-12);

    const Position2D frozen_b{4.375, 5.833333333333333};
    const Circle c1{{6, 8}, 5.0 / std::sqrt(3.0)}, c2{{3, 4}, 2.5};
    o = sampled_radical_point(c1, c2);
    CHECK(o.x == doctest::Approx(frozen_b.x).epsilon(1e-6));
    CHECK(o.y == doctest::Approx(frozen_b.y).epsilon(1e-6));
    p = radical_point(c1, c2);
    CHECK(p.x == doctest::Approx(frozen_b.x).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(frozen_b.y).epsilon(1e-12));
}

TEST_CASE("radical_point: preconditions") {
    auto code_of = [](Circle a, Circle b) {
        try {
            radical_point(a, b);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;  // sentinel: no error
    };
    CHECK(code_of({{0, 0}, 1}, {{0, 0}, 2}) == ErrorCode::ConcentricCircles);
    CHECK(code_of({{0, 0}, 1}, {{5, 0}, 1}) == ErrorCode::DisjointCircles);
    // touching circles are the limit case and yield the contact point
    CHECK(code_of({{0, 0}, 1}, {{2, 0}, 1}) == ErrorCode::IoError);
    CHECK(code_of({{0, 0}, 2}, {{1, 0}, 1}) == ErrorCode::IoError);
    CHECK(code_of({{0, 0}, 1}, {{2.000001, 0}, 1}) == ErrorCode::DisjointCircles);
    CHECK(code_of({{0, 0}, 5}, {{1, 0}, 1}) == ErrorCode::ContainedCircles);
}

TEST_CASE("radical_point: chord property for random intersecting circles") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Circle c1{{200 * u(rng) - 100, 200 * u(rng) - 100}, 1 + 20 * u(rng)};
        const double r2 = 1 + 20 * u(rng);
        const double lo = std::abs(c1.radius - r2), hi = c1.radius + r2;
        const double d = lo + (hi - lo) * (0.02 + 0.96 * u(rng));
        const double phi = 2 * kPi * u(rng);
        const Circle c2{c1.center + d * Position2D{std::cos(phi), std::sin(phi)}, r2};
        const auto p = radical_point(c1, c2);
        // analytic intersections
        const double a = (d * d + c1.radius * c1.radius - r2 * r2) / (2 * d);
        const double h = std::sqrt(std::max(0.0, c1.radius * c1.radius - a * a));
        const Position2D ux{std::cos(phi), std::sin(phi)}, uy{-std::sin(phi), std::cos(phi)};
        const auto i1 = c1.center + a * ux + h * uy;
        const auto i2 = c1.center + a * ux - h * uy;
        CHECK(std::abs(distance(p, i1) - distance(p, i2)) < 1e-6);
        const auto chord = i1 - i2;
        CHECK(std::abs(chord.x * ux.x + chord.y * ux.y) < 1e-6);
        // p sits on the segment between the centers
        const double t = (p.x - c1.center.x) * ux.x + (p.y - c1.center.y) * ux.y;
        CHECK(distance(p, c1.center + t * ux) < 1e-9);
    }
}

TEST_CASE("predict_zone: example and invariants") {
    auto z = predict_zone({0, 0}, {3, 4});
    CHECK(z.final_circle.center.x == doctest::Approx(4.375));
    CHECK(z.final_circle.center.y == doctest::Approx(5.833333333333333));
    CHECK(z.final_circle.radius == doctest::Approx(2.8868).epsilon(1e-4));

    z = predict_zone({0, 0}, {1, 0});
    CHECK(z.forward_circle.center.y == 0.0);
    CHECK(z.turn_circle.center.y == 0.0);
    CHECK(z.final_circle.center.y == 0.0);

    z = predict_zone({2, 1}, {2, 9});  // vertical motion
    CHECK(z.motion_line.is_vertical());
    CHECK(z.final_circle.center.x == doctest::Approx(2.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> c(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
        const Position2D a{c(rng), c(rng)}, b{c(rng), c(rng)};
        z = predict_zone(a, b);
        const double d = distance(a, b);
        CHECK(z.motion_line.distance_to(z.forward_circle.center) < 1e-9 * std::max(1.0, d));
        CHECK(z.turn_circle.center.x == b.x);
        CHECK(z.turn_circle.center.y == b.y);
        CHECK(std::abs(z.forward_circle.radius - d / std::sqrt(3.0)) < 1e-12 * std::max(1.0, d));
        CHECK(std::abs(distance(z.forward_circle.center, b) - d) < 1e-9 * std::max(1.0, d));
        CHECK(z.final_circle.radius == z.forward_circle.radius);
        CHECK(z.turn_circle.radius / z.forward_circle.radius == doctest::Approx(std::sqrt(3.0) / 2.0));
        const double rr = std::abs(z.forward_circle.radius - z.turn_circle.radius);
        CHECK(rr < d);
        CHECK(d < z.forward_circle.radius + z.turn_circle.radius);
        // on the segment between the centers
        const double s1 = distance(z.radical_point, z.forward_circle.center);
        const double s2 = distance(z.radical_point, z.turn_circle.center);
        CHECK(std::abs(s1 + s2 - d) < 1e-9 * std::max(1.0, d));
    }
}

TEST_CASE("required_beamwidth") {
    CHECK(rad2deg(required_beamwidth(1, 2)) == doctest::Approx(60.0));
    // chord-geometry oracle: half-angle whose sine is r/D
    const double frozen = 33.5578920880198;
    const double half = std::atan2(2.8868, std::sqrt(10.0 * 10.0 - 2.8868 * 2.8868));
    CHECK(rad2deg(2 * half) == doctest::Approx(frozen).epsilon(1e-12));
    CHECK(rad2deg(required_beamwidth(2.8868, 10)) == doctest::Approx(frozen).epsilon(1e-12));
    // exact zone radius 5/sqrt(3) of the (0,0)->(3,4) example
    CHECK(rad2deg(required_beamwidth(5.0 / std::sqrt(3.0), 10)) ==
          doctest::Approx(33.55730976192071).epsilon(1e-12));
    try {
        required_beamwidth(3, 2);
        FAIL("expected ZoneBeyondRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZoneBeyondRange);
    }
    // monotone in both arguments
    double prev = 0.0;
    for (double r = 0.5; r <= 10; r += 0.5) {
        const double w = required_beamwidth(r, 10);
        CHECK(w > prev);
        prev = w;
    }
    prev = 10.0;
    for (double D = 5; D <= 100; D += 5) {
        const double w = required_beamwidth(5, D);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("quantize_beamwidth") {
    const BeamwidthLadder lad{deg2rad(10), deg2rad(20), deg2rad(30)};
    CHECK(quantize_beamwidth(deg2rad(15), lad) == lad[1]);
    CHECK(quantize_beamwidth(deg2rad(35), lad) == lad[2]);
    CHECK(quantize_beamwidth(lad[0], lad) == lad[0]);
    const auto def = default_ladder();
    CHECK(def.size() == 7);
    for (double a = 0.001; a < kPi; a += 0.01) {
        const double q = quantize_beamwidth(a, def);
        CHECK(std::find(def.begin(), def.end(), q) != def.end());
        CHECK(q >= std::min(a, def.back()));
    }
}
