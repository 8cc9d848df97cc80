#include <cmath>

#include "pltrack/error.hpp"
#include "pltrack/sim.hpp"

namespace pltrack::sim {

namespace {

struct RunOutput {
    std::vector<double> err_n, err_e;
    double mean_pos_error = 0.0;
    double nis_sum = 0.0;
};

RunOutput one_run(const MobilityConfig& mob, const kalman::FilterConfig& fcfg, const TrackingConfig& tcfg,
                  std::uint64_t seed) {
    Rng truth_rng(derive_seed(seed, {tag_of("truth")}));
    Rng noise_rng(derive_seed(seed, {tag_of("noise")}));
    const auto truth = simulate_truth(mob, tcfg.steps, truth_rng);

    // initial fix by triangulation from the two references
    std::normal_distribution<double> gauss(0.0, 1.0);
    const geometry::Position2D p0{truth.states[0](1), truth.states[0](0)};
    auto bearing_to = [&](geometry::Position2D ref) {
        const auto d = p0 - ref;
        return geometry::Bearing{std::atan2(d.y, d.x) + tcfg.bearing_noise * gauss(noise_rng)};
    };
    const auto a = bearing_to(tcfg.ref1);
    const auto b = bearing_to(tcfg.ref2);
    const auto fix = geometry::triangulate(tcfg.ref1, tcfg.ref2, a, b);

    kalman::TrackState x;
    x << fix.y, fix.x, tcfg.initial_velocity(0), tcfg.initial_velocity(1);
    kalman::TrackCovariance P = tcfg.initial_variance.asDiagonal();

    // noise shaping that also tolerates a singular R
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(fcfg.R);
    const Eigen::Matrix2d L =
        eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    RunOutput out;
    out.err_n.reserve(tcfg.steps);
    out.err_e.reserve(tcfg.steps);
    for (int k = 0; k < tcfg.steps; ++k) {
        const auto& xt = truth.states[k + 1];
        const Eigen::Vector2d v(gauss(noise_rng), gauss(noise_rng));
        const kalman::Measurement z = xt.head<2>() + L * v;
        const auto r = kalman::step(x, P, z, truth.controls[k], fcfg);
        x = r.est.x;
        P = r.est.P;
        out.nis_sum += r.innovation.dot(r.innovation_cov.ldlt().solve(r.innovation));
        const double en = std::abs(x(0) - xt(0));
        const double ee = std::abs(x(1) - xt(1));
        out.err_n.push_back(en);
        out.err_e.push_back(ee);
        out.mean_pos_error += std::hypot(en, ee);
    }
    out.mean_pos_error /= tcfg.steps;
    return out;
}

}  // namespace

TrackingResult run_tracking(const MobilityConfig& mob, const kalman::FilterConfig& fcfg,
                            const TrackingConfig& tcfg, std::uint64_t seed, unsigned threads) {
    if (tcfg.runs < 1 || tcfg.steps < 1) throw Error(ErrorCode::ConfigError, "runs and steps must be >= 1");
    kalman::FilterConfig f = fcfg;
    if (mob.constrained) {
        // road through the start point
        f.road_offset(0) = mob.start.y - mob.start.x * std::tan(f.theta);
        f.road_offset(1) = 0.0;
    }
    std::vector<RunOutput> runs(tcfg.runs);
    parallel_for(runs.size(), threads, [&](std::size_t i) {
        runs[i] = one_run(mob, f, tcfg, derive_seed(seed, {tag_of("track"), i}));
    });

    TrackingResult res;
    res.step_error_north.assign(tcfg.steps, 0.0);
    res.step_error_east.assign(tcfg.steps, 0.0);
    double nis = 0.0;
    for (const auto& r : runs) {
        for (int k = 0; k < tcfg.steps; ++k) {
            res.step_error_north[k] += r.err_n[k];
            res.step_error_east[k] += r.err_e[k];
        }
        res.run_mean_error.push_back(r.mean_pos_error);
        nis += r.nis_sum;
    }
    for (int k = 0; k < tcfg.steps; ++k) {
        res.step_error_north[k] /= tcfg.runs;
        res.step_error_east[k] /= tcfg.runs;
        res.mean_error_north += res.step_error_north[k];
        res.mean_error_east += res.step_error_east[k];
    }
    res.mean_error_north /= tcfg.steps;
    res.mean_error_east /= tcfg.steps;
    res.mean_nis = nis / (static_cast<double>(tcfg.runs) * tcfg.steps);
    return res;
}

}  // namespace pltrack::sim
