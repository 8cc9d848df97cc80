#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pltrack/geometry.hpp"
#include "pltrack/kalman.hpp"
#include "pltrack/rng.hpp"

namespace pltrack::sim {

struct TurnModel {
    double jitter = geometry::deg2rad(19.0);   // per-step uniform heading change, +-
    bool cumulative = true;                    // jitter accumulates into the heading
    double p_sharp = 0.25;
    double sharp_min = geometry::deg2rad(30.0);  // exclusive
    double sharp_max = geometry::deg2rad(51.0);
    double speed_jitter = 2.0;  // m/s^2, uniform +- per step
};

struct MobilityConfig {
    double area = 500.0;
    double speed = 16.67;
    double heading = geometry::deg2rad(60.0);  // from east, counterclockwise
    double accel = 1.0;
    double step = 3.0;
    bool constrained = true;  // follow the road y = x*tan(heading) exactly
    bool clip_to_area = true;
    geometry::Position2D start{0.0, 0.0};
    TurnModel turn{};
};

// Free-mode kinematic state.
struct Mover {
    geometry::Position2D pos;
    double heading = 0.0;
    double reference = 0.0;  // heading the jitter is measured from when not cumulative
    double speed = 0.0;
};

void advance(Mover& m, const TurnModel& turn, double dt, Rng& rng);

struct Trajectory {
    std::vector<kalman::TrackState> states;  // steps + 1 entries
    std::vector<double> controls;            // along-track accel applied before step k+1
};

Trajectory simulate_truth(const MobilityConfig& cfg, int steps, Rng& rng);

struct TrackingConfig {
    int steps = 100;
    int runs = 200;
    Eigen::Vector2d initial_velocity{17.0, 10.0};  // [v_north, v_east]
    Eigen::Vector4d initial_variance{900.0, 900.0, 4.0, 4.0};
    geometry::Position2D ref1{300.0, -100.0};
    geometry::Position2D ref2{-100.0, 300.0};
    double bearing_noise = 0.0;  // rad, std dev
};

struct TrackingResult {
    double mean_error_north = 0.0;
    double mean_error_east = 0.0;
    std::vector<double> step_error_north;  // averaged over runs
    std::vector<double> step_error_east;
    std::vector<double> run_mean_error;    // mean Euclidean position error of each run
    double mean_nis = 0.0;
};

TrackingResult run_tracking(const MobilityConfig& mob, const kalman::FilterConfig& fcfg,
                            const TrackingConfig& tcfg, std::uint64_t seed, unsigned threads = 1);

enum class Algorithm { IntegratedZone, ForwardOnly };
const char* to_string(Algorithm a);

struct EfficiencyConfig {
    geometry::BeamwidthLadder ladder = geometry::default_ladder();  // one entry = fixed beam
    double silent_duration = 15.0;
    int experiments = 10;
    int trials_per_experiment = 10;
    Algorithm algorithm = Algorithm::IntegratedZone;
    double fix_interval = 28.6;       // s between the two prior fixes
    double tx_distance = 7600.0;      // m, transmitter behind the last fix
    double tx_offset = geometry::deg2rad(14.0);  // +- uniform bearing offset of the transmitter
};

struct EfficiencyRecord {
    Algorithm algorithm = Algorithm::IntegratedZone;
    bool fixed_beam = false;
    double beamwidth = 0.0;  // fixed width, or mean selected width for a ladder
    double silent_duration = 0.0;
    int successes = 0;
    int trials = 0;
    double efficiency = 0.0;
};

struct TrialOutcome {
    bool success = false;
    double beam = 0.0;
};

TrialOutcome run_efficiency_trial(const EfficiencyConfig& cfg, const MobilityConfig& mob, std::uint64_t seed);

EfficiencyRecord run_efficiency(const EfficiencyConfig& cfg, const MobilityConfig& mob, std::uint64_t seed,
                                unsigned threads = 1);

struct ComparisonRow {
    EfficiencyRecord integrated;
    EfficiencyRecord baseline;
};

// Sweep over fixed beamwidths at the config's silent duration.
std::vector<ComparisonRow> compare_over_beamwidth(const EfficiencyConfig& base, const MobilityConfig& mob,
                                                  const std::vector<double>& beamwidths, std::uint64_t seed,
                                                  unsigned threads = 1);
// Sweep over silent durations with the config's ladder.
std::vector<ComparisonRow> compare_over_silence(const EfficiencyConfig& base, const MobilityConfig& mob,
                                                const std::vector<double>& silences, std::uint64_t seed,
                                                unsigned threads = 1);

struct PacketTimestampEnsemble {
    double window_end = 0.0;  // s
    std::vector<std::pair<double, double>> pairs;  // (tod, toa)
    int late_count = 0;
};

constexpr double kSpeedOfLight = 2.998e8;

double range_from_timestamps(const PacketTimestampEnsemble& ens, double c = kSpeedOfLight);

struct RangingConfig {
    double true_range = 100.0;   // m
    int packets = 20;
    double spacing = 1e-3;       // s between departures
    double jitter = 10e-9;       // s, std dev of the symmetric processing delay
    double window = 1.0;         // s, ensemble length
    double c = kSpeedOfLight;
};

PacketTimestampEnsemble simulate_ensemble(const RangingConfig& cfg, Rng& rng);

}  // namespace pltrack::sim
