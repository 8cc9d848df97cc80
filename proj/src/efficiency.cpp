#include <algorithm>
#include <cmath>
#include <numbers>

#include "pltrack/error.hpp"
#include "pltrack/sim.hpp"

namespace pltrack::sim {

using geometry::Position2D;

const char* to_string(Algorithm a) {
    return a == Algorithm::IntegratedZone ? "integrated_zone" : "forward_only_baseline";
}

namespace {

double wrap(double a) {
    a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a - std::numbers::pi;
}

void check(const EfficiencyConfig& cfg) {
    if (cfg.silent_duration < 0.0) throw Error(ErrorCode::ConfigError, "silent duration must be >= 0");
    if (cfg.experiments < 1 || cfg.trials_per_experiment < 1)
        throw Error(ErrorCode::ConfigError, "experiment and trial counts must be >= 1");
    if (cfg.ladder.empty()) throw Error(ErrorCode::ConfigError, "beamwidth ladder is empty");
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
        if (!(cfg.ladder[i] > 0.0 && cfg.ladder[i] <= std::numbers::pi))
            throw Error(ErrorCode::ConfigError, "beamwidths must lie in (0, 180] degrees");
        if (i && cfg.ladder[i] <= cfg.ladder[i - 1])
            throw Error(ErrorCode::ConfigError, "beamwidth ladder must be strictly increasing");
    }
    if (cfg.fix_interval <= 0.0) throw Error(ErrorCode::ConfigError, "fix interval must be positive");
}

}  // namespace

TrialOutcome run_efficiency_trial(const EfficiencyConfig& cfg, const MobilityConfig& mob, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double h0 = 2.0 * std::numbers::pi * unit(rng);
    const double psi = cfg.tx_offset * (2.0 * unit(rng) - 1.0);

    const Position2D dir{std::cos(h0), std::sin(h0)};
    const Position2D b{mob.area / 2.0, mob.area / 2.0};
    const Position2D a = b - (mob.speed * cfg.fix_interval) * dir;
    const double back = h0 + std::numbers::pi + psi;
    const Position2D tx = b + cfg.tx_distance * Position2D{std::cos(back), std::sin(back)};

    Mover mv;
    mv.pos = b;
    mv.heading = mv.reference = h0;
    mv.speed = mob.speed;
    for (double t = 0.0; t < cfg.silent_duration - 1e-12; t += mob.step)
        advance(mv, mob.turn, std::min(mob.step, cfg.silent_duration - t), rng);

    geometry::Circle zone;
    if (cfg.algorithm == Algorithm::IntegratedZone)
        zone = geometry::predict_zone(a, b).final_circle;
    else
        zone = geometry::zone_forward_circle(a, b);

    TrialOutcome out;
    const double range = geometry::distance(tx, zone.center);
    double alpha;
    try {
        alpha = geometry::required_beamwidth(zone.radius, range);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ZoneBeyondRange) return out;
        throw;
    }
    out.beam = geometry::quantize_beamwidth(alpha, cfg.ladder);
    const bool inside = geometry::distance(mv.pos, zone.center) <= zone.radius;
    const Position2D to_zone = zone.center - tx;
    const Position2D to_target = mv.pos - tx;
    const double off = std::abs(wrap(std::atan2(to_target.y, to_target.x) - std::atan2(to_zone.y, to_zone.x)));
    out.success = inside && off <= out.beam / 2.0;
    return out;
}

EfficiencyRecord run_efficiency(const EfficiencyConfig& cfg, const MobilityConfig& mob, std::uint64_t seed,
                                unsigned threads) {
    check(cfg);
    const std::size_t per = cfg.trials_per_experiment;
    const std::size_t n = static_cast<std::size_t>(cfg.experiments) * per;
    std::vector<TrialOutcome> outcomes(n);
    parallel_for(n, threads, [&](std::size_t i) {
        outcomes[i] = run_efficiency_trial(cfg, mob, derive_seed(seed, {tag_of("trial"), i / per, i % per}));
    });
    EfficiencyRecord rec;
    rec.algorithm = cfg.algorithm;
    rec.fixed_beam = cfg.ladder.size() == 1;
    rec.silent_duration = cfg.silent_duration;
    rec.trials = static_cast<int>(n);
    double beam_sum = 0.0;
    int beams = 0;
    for (const auto& o : outcomes) {
        rec.successes += o.success;
        if (o.beam > 0.0) {
            beam_sum += o.beam;
            ++beams;
        }
    }
    rec.beamwidth = rec.fixed_beam ? cfg.ladder.front() : (beams ? beam_sum / beams : 0.0);
    rec.efficiency = static_cast<double>(rec.successes) / rec.trials;
    return rec;
}

namespace {

ComparisonRow compare_one(EfficiencyConfig cfg, const MobilityConfig& mob, std::uint64_t seed, unsigned threads) {
    ComparisonRow row;
    cfg.algorithm = Algorithm::IntegratedZone;
    row.integrated = run_efficiency(cfg, mob, seed, threads);
    cfg.algorithm = Algorithm::ForwardOnly;
    row.baseline = run_efficiency(cfg, mob, seed, threads);
    return row;
}

}  // namespace

std::vector<ComparisonRow> compare_over_beamwidth(const EfficiencyConfig& base, const MobilityConfig& mob,
                                                  const std::vector<double>& beamwidths, std::uint64_t seed,
                                                  unsigned threads) {
    std::vector<ComparisonRow> rows;
    for (double bw : beamwidths) {
        EfficiencyConfig cfg = base;
        cfg.ladder = {bw};
        rows.push_back(compare_one(cfg, mob, seed, threads));
    }
    return rows;
}

std::vector<ComparisonRow> compare_over_silence(const EfficiencyConfig& base, const MobilityConfig& mob,
                                                const std::vector<double>& silences, std::uint64_t seed,
                                                unsigned threads) {
    std::vector<ComparisonRow> rows;
    for (double s : silences) {
        EfficiencyConfig cfg = base;
        cfg.silent_duration = s;
        rows.push_back(compare_one(cfg, mob, seed, threads));
    }
    return rows;
}

}  // namespace pltrack::sim
