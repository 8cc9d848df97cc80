#include "pltrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pltrack/error.hpp"

namespace pltrack::geometry {

Position2D operator+(Position2D a, Position2D b) { return {a.x + b.x, a.y + b.y}; }
Position2D operator-(Position2D a, Position2D b) { return {a.x - b.x, a.y - b.y}; }
Position2D operator*(double s, Position2D a) { return {s * a.x, s * a.y}; }
double norm(Position2D a) { return std::hypot(a.x, a.y); }
double distance(Position2D a, Position2D b) { return norm(a - b); }

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

double Line::distance_to(Position2D p) const {
    if (auto* v = std::get_if<VerticalLine>(&form)) return std::abs(p.x - v->x0);
    const auto& s = std::get<SlopeLine>(form);
    return std::abs(s.slope * p.x - p.y + s.intercept) / std::hypot(s.slope, 1.0);
}

Position2D triangulate(Position2D r, Position2D s, Bearing alpha, Bearing beta, double eps_parallel) {
    const double ca = std::cos(alpha.angle);
    const double cb = std::cos(beta.angle);
    if (std::abs(ca) < 1e-12 || std::abs(cb) < 1e-12)
        throw Error(ErrorCode::VerticalBearing, "bearing tangent undefined");
    const double ta = std::tan(alpha.angle);
    const double tb = std::tan(beta.angle);
    const double den = ta - tb;
    if (std::abs(den) <= eps_parallel)
        throw Error(ErrorCode::ParallelBearings, "bearing lines do not meet in a single point");
    const double x = ((s.y - r.y) + r.x * ta - s.x * tb) / den;
    const double y = ((r.x - s.x) * ta * tb + s.y * ta - r.y * tb) / den;
    return {x, y};
}

Line fit_line(Position2D a, Position2D b) {
    if (a.x == b.x && a.y == b.y) throw Error(ErrorCode::CoincidentPoints, "line through one point");
    if (a.x == b.x) return Line{VerticalLine{a.x}};
    const double dx = b.x - a.x;
    return Line{SlopeLine{(b.y - a.y) / dx, (b.x * a.y - a.x * b.y) / dx}};
}

Circle zone_forward_circle(Position2D a, Position2D b) {
    const double d = distance(a, b);
    if (d == 0.0) throw Error(ErrorCode::CoincidentPoints, "no motion between fixes");
    const Position2D u = (1.0 / d) * (b - a);
    return Circle{b + d * u, d / std::sqrt(3.0)};
}

Position2D radical_point(const Circle& c1, const Circle& c2) {
    const Position2D delta = c2.center - c1.center;
    const double d = norm(delta);
    if (d == 0.0) throw Error(ErrorCode::ConcentricCircles, "circles share a center");
    if (d > c1.radius + c2.radius) throw Error(ErrorCode::DisjointCircles, "circles do not meet");
    if (d < std::abs(c1.radius - c2.radius))
        throw Error(ErrorCode::ContainedCircles, "one circle lies inside the other");
    const double along = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    return c1.center + (along / d) * delta;
}

Zone predict_zone(Position2D a, Position2D b) {
    Zone z;
    z.motion_line = fit_line(a, b);
    z.step_distance = distance(a, b);
    z.forward_circle = zone_forward_circle(a, b);
    z.turn_circle = Circle{b, z.step_distance / 2.0};
    z.radical_point = radical_point(z.forward_circle, z.turn_circle);
    z.final_circle = Circle{z.radical_point, z.forward_circle.radius};
    return z;
}

double required_beamwidth(double zone_radius, double transmitter_distance) {
    if (zone_radius > transmitter_distance)
        throw Error(ErrorCode::ZoneBeyondRange, "zone radius exceeds transmitter distance");
    return 2.0 * std::asin(zone_radius / transmitter_distance);
}

double quantize_beamwidth(double alpha, const BeamwidthLadder& ladder) {
    auto it = std::lower_bound(ladder.begin(), ladder.end(), alpha);
    return it == ladder.end() ? ladder.back() : *it;
}

BeamwidthLadder default_ladder() {
    BeamwidthLadder out;
    for (double deg : {2.0, 7.0, 10.0, 14.0, 20.0, 28.0, 30.0}) out.push_back(deg2rad(deg));
    return out;
}

}  // namespace pltrack::geometry
