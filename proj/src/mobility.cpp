#include <algorithm>
#include <cmath>

#include "pltrack/error.hpp"
#include "pltrack/sim.hpp"

namespace pltrack::sim {

void advance(Mover& m, const TurnModel& turn, double dt, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool sharp = unit(rng) < turn.p_sharp;
    const double mag = turn.sharp_min + (turn.sharp_max - turn.sharp_min) * unit(rng);
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    const double jitter = turn.jitter * (2.0 * unit(rng) - 1.0);
    const double dv = turn.speed_jitter * dt * (2.0 * unit(rng) - 1.0);

    const double turn_by = sharp ? sign * mag : 0.0;
    if (turn.cumulative) {
        m.heading += jitter + turn_by;
    } else {
        m.reference += turn_by;
        m.heading = m.reference + jitter;
    }
    const double next_speed = std::max(0.0, m.speed + dv);
    const double ds = 0.5 * (m.speed + next_speed) * dt;
    m.speed = next_speed;
    m.pos = m.pos + ds * geometry::Position2D{std::cos(m.heading), std::sin(m.heading)};
}

Trajectory simulate_truth(const MobilityConfig& cfg, int steps, Rng& rng) {
    if (steps < 1) throw Error(ErrorCode::ConfigError, "trajectory needs at least one step");
    if (cfg.speed < 0.0) throw Error(ErrorCode::ConfigError, "speed must be non-negative");
    Trajectory tr;
    tr.states.reserve(steps + 1);
    const double sh = std::sin(cfg.heading), ch = std::cos(cfg.heading);
    kalman::TrackState x;
    x << cfg.start.y, cfg.start.x, cfg.speed * sh, cfg.speed * ch;
    tr.states.push_back(x);

    if (cfg.constrained) {
        // exact road motion with the same transition model the filter uses
        kalman::FilterConfig f;
        f.T = cfg.step;
        f.theta = cfg.heading;
        const auto m = kalman::dynamics_matrices(f);
        for (int k = 0; k < steps; ++k) {
            const double u = (k % 2 == 0 ? 1.0 : -1.0) * cfg.accel;
            x = m.F * x + m.B * u;
            // pin the road relation against rounding drift
            if (std::abs(ch) > 1e-12) {
                const double t = std::tan(cfg.heading);
                x(0) = cfg.start.y + (x(1) - cfg.start.x) * t;
                x(2) = x(3) * t;
            }
            tr.states.push_back(x);
            tr.controls.push_back(u);
        }
        return tr;
    }

    Mover mv;
    mv.pos = cfg.start;
    mv.heading = mv.reference = cfg.heading;
    mv.speed = cfg.speed;
    for (int k = 0; k < steps; ++k) {
        advance(mv, cfg.turn, cfg.step, rng);
        if (cfg.clip_to_area) {
            mv.pos.x = std::clamp(mv.pos.x, 0.0, cfg.area);
            mv.pos.y = std::clamp(mv.pos.y, 0.0, cfg.area);
        }
        x << mv.pos.y, mv.pos.x, mv.speed * std::sin(mv.heading), mv.speed * std::cos(mv.heading);
        tr.states.push_back(x);
        tr.controls.push_back(0.0);
    }
    return tr;
}

}  // namespace pltrack::sim
