#pragma once

#include <variant>
#include <vector>

namespace pltrack::geometry {

struct Position2D {
    double x = 0.0;  // east, m
    double y = 0.0;  // north, m
};

Position2D operator+(Position2D a, Position2D b);
Position2D operator-(Position2D a, Position2D b);
Position2D operator*(double s, Position2D a);
double norm(Position2D a);
double distance(Position2D a, Position2D b);

// Counterclockwise from +x, radians.
struct Bearing {
    double angle = 0.0;
};

struct SlopeLine {
    double slope;
    double intercept;
};
struct VerticalLine {
    double x0;
};

struct Line {
    std::variant<SlopeLine, VerticalLine> form;

    bool is_vertical() const { return std::holds_alternative<VerticalLine>(form); }
    // Perpendicular distance from p to the line.
    double distance_to(Position2D p) const;
};

struct Circle {
    Position2D center;
    double radius = 0.0;
};

struct Zone {
    Line motion_line;
    Circle forward_circle;
    Circle turn_circle;
    Position2D radical_point;
    Circle final_circle;
    double step_distance = 0.0;
};

using BeamwidthLadder = std::vector<double>;  // radians, strictly increasing

constexpr double kParallelEpsilon = 1e-9;

Position2D triangulate(Position2D r, Position2D s, Bearing alpha, Bearing beta,
                       double eps_parallel = kParallelEpsilon);

Line fit_line(Position2D a, Position2D b);

Circle zone_forward_circle(Position2D a, Position2D b);

Position2D radical_point(const Circle& c1, const Circle& c2);

Zone predict_zone(Position2D a, Position2D b);

double required_beamwidth(double zone_radius, double transmitter_distance);

double quantize_beamwidth(double alpha, const BeamwidthLadder& ladder);

BeamwidthLadder default_ladder();

double deg2rad(double deg);
double rad2deg(double rad);

}  // namespace pltrack::geometry
