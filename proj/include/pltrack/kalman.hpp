#pragma once

#include <Eigen/Dense>

namespace pltrack::kalman {

// [p_north, p_east, v_north, v_east]
using TrackState = Eigen::Vector4d;
using TrackCovariance = Eigen::Matrix4d;
using Measurement = Eigen::Vector2d;

struct FilterConfig {
    double T = 3.0;
    double theta = 1.0471975511965976;  // road heading, rad (60 deg)
    Eigen::Matrix4d Q = Eigen::Vector4d(4, 4, 1, 1).asDiagonal();
    Eigen::Matrix2d R = Eigen::Vector2d(900, 900).asDiagonal();
    bool constrained = false;
    Eigen::Vector2d road_offset = Eigen::Vector2d::Zero();  // D x = road_offset
};

struct DynamicsMatrices {
    Eigen::Matrix4d F;
    Eigen::Vector4d B;
    Eigen::Matrix<double, 2, 4> H;
    Eigen::Matrix<double, 2, 4> D;
};

struct Estimate {
    TrackState x;
    TrackCovariance P;
};

constexpr double kMaxCondition = 1e12;

DynamicsMatrices dynamics_matrices(const FilterConfig& cfg);

Estimate predict(const TrackState& x, const TrackCovariance& P, double u, const FilterConfig& cfg);

Estimate update(const TrackState& x_pred, const TrackCovariance& P_pred, const Measurement& z,
                const FilterConfig& cfg);

TrackState constrain(const TrackState& x, const TrackCovariance& P_pred, const FilterConfig& cfg);

struct StepResult {
    Estimate est;
    Estimate pred;
    Eigen::Vector2d innovation;
    Eigen::Matrix2d innovation_cov;
};

StepResult step(const TrackState& x, const TrackCovariance& P, const Measurement& z, double u,
                const FilterConfig& cfg);

// 2-norm condition number.
double condition_number(const Eigen::MatrixXd& m);

}  // namespace pltrack::kalman
