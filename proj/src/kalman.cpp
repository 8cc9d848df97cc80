#include "pltrack/kalman.hpp"

#include <cmath>
#include <limits>

#include "pltrack/error.hpp"

namespace pltrack::kalman {

double condition_number(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

DynamicsMatrices dynamics_matrices(const FilterConfig& cfg) {
    const double c = std::cos(cfg.theta);
    if (std::abs(c) < 1e-12) throw Error(ErrorCode::HeadingSingular, "road heading is vertical");
    const double t = std::tan(cfg.theta);
    DynamicsMatrices m;
    m.F.setIdentity();
    m.F(0, 2) = cfg.T;
    m.F(1, 3) = cfg.T;
    m.B << 0.0, 0.0, cfg.T * std::sin(cfg.theta), cfg.T * c;
    m.H.setZero();
    m.H(0, 0) = 1.0;
    m.H(1, 1) = 1.0;
    m.D << 1.0, -t, 0.0, 0.0,
           0.0, 0.0, 1.0, -t;
    return m;
}

Estimate predict(const TrackState& x, const TrackCovariance& P, double u, const FilterConfig& cfg) {
    const auto m = dynamics_matrices(cfg);
    Estimate out;
    out.x = m.F * x + m.B * u;
    out.P = m.F * P * m.F.transpose() + cfg.Q;
    out.P = 0.5 * (out.P + out.P.transpose()).eval();
    return out;
}

Estimate update(const TrackState& x_pred, const TrackCovariance& P_pred, const Measurement& z,
                const FilterConfig& cfg) {
    const auto m = dynamics_matrices(cfg);
    const Eigen::Matrix2d S = m.H * P_pred * m.H.transpose() + cfg.R;
    if (!S.allFinite() || condition_number(S) > kMaxCondition)
        throw Error(ErrorCode::SingularInnovation, "innovation covariance is singular");
    const Eigen::Matrix<double, 4, 2> G = P_pred * m.H.transpose() * S.inverse();
    Estimate out;
    out.x = x_pred + G * (z - m.H * x_pred);
    out.P = P_pred - G * m.H * P_pred;
    out.P = 0.5 * (out.P + out.P.transpose()).eval();
    return out;
}

TrackState constrain(const TrackState& x, const TrackCovariance& P_pred, const FilterConfig& cfg) {
    const auto m = dynamics_matrices(cfg);
    const Eigen::Matrix2d W = m.D * P_pred * m.D.transpose();
    if (!W.allFinite() || condition_number(W) > kMaxCondition)
        throw Error(ErrorCode::SingularConstraint, "constraint projection is singular");
    const Eigen::Vector2d residual = m.D * x - cfg.road_offset;
    return x - P_pred * m.D.transpose() * W.partialPivLu().solve(residual);
}

StepResult step(const TrackState& x, const TrackCovariance& P, const Measurement& z, double u,
                const FilterConfig& cfg) {
    const auto m = dynamics_matrices(cfg);
    StepResult r;
    r.pred = predict(x, P, u, cfg);
    r.innovation = z - m.H * r.pred.x;
    r.innovation_cov = m.H * r.pred.P * m.H.transpose() + cfg.R;
    r.est = update(r.pred.x, r.pred.P, z, cfg);
    if (cfg.constrained) r.est.x = constrain(r.est.x, r.pred.P, cfg);
    return r;
}

}  // namespace pltrack::kalman
