#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pltrack/error.hpp"
#include "pltrack/kalman.hpp"

using namespace pltrack;
using namespace pltrack::kalman;

namespace {

const double kPi = std::numbers::pi;

FilterConfig scenario() { return FilterConfig{}; }

// Minimum-norm correction onto {x : D x = 0} with identity weighting, by
// solving the KKT system [I D^T; D 0][x'; l] = [x; 0] with Gaussian elimination.
std::array<double, 4> kkt_projection(const std::array<double, 4>& x, const double D[2][4]) {
    double A[6][7] = {};
    for (int i = 0; i < 4; ++i) {
        A[i][i] = 1.0;
        A[i][6] = x[i];
        for (int r = 0; r < 2; ++r) A[i][4 + r] = D[r][i];
    }
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < 4; ++i) A[4 + r][i] = D[r][i];
    for (int c = 0; c < 6; ++c) {
        int piv = c;
        for (int r = c + 1; r < 6; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        for (int k = 0; k < 7; ++k) std::swap(A[c][k], A[piv][k]);
        for (int r = 0; r < 6; ++r) {
            if (r == c) continue;
            const double f = A[r][c] / A[c][c];
            for (int k = 0; k < 7; ++k) A[r][k] -= f * A[c][k];
        }
    }
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = A[i][6] / A[i][i];
    return out;
}

Eigen::Matrix4d random_spd(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0, 1);
    Eigen::Matrix4d A;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A(i, j) = g(rng);
    return scale * (A * A.transpose() + 0.1 * Eigen::Matrix4d::Identity());
}

}  // namespace

TEST_CASE("dynamics_matrices") {
    auto cfg = scenario();
    auto m = dynamics_matrices(cfg);
    CHECK(m.B(0) == 0.0);
    CHECK(m.B(1) == 0.0);
    CHECK(m.B(2) == doctest::Approx(2.598076211353316));
    CHECK(m.B(3) == doctest::Approx(1.5));
    CHECK(m.F(0, 2) == 3.0);
    CHECK(m.F(1, 3) == 3.0);
    CHECK(m.H(0, 0) == 1.0);
    CHECK(m.H(1, 1) == 1.0);
    CHECK(m.H.sum() == 2.0);

    cfg.T = 0.0;
    m = dynamics_matrices(cfg);
    CHECK(m.F.isIdentity());
    CHECK(m.B.isZero());

    cfg = scenario();
    cfg.theta = 0.0;
    m = dynamics_matrices(cfg);
    CHECK(m.D.row(0).isApprox(Eigen::RowVector4d(1, 0, 0, 0)));
    CHECK(m.D.row(1).isApprox(Eigen::RowVector4d(0, 0, 1, 0)));

    cfg.theta = kPi / 2;
    try {
        dynamics_matrices(cfg);
        FAIL("expected HeadingSingular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HeadingSingular);
    }
}

TEST_CASE("predict: hand arithmetic on the initial scenario state") {
    // hand evaluation with scalar arithmetic
    const double T = 3.0, u = 1.0, th = kPi / 3;
    const double hand_state[4] = {0 + T * 17, 0 + T * 10, 17 + T * std::sin(th) * u, 10 + T * std::cos(th) * u};
    const double frozen_state[4] = {51.0, 30.0, 19.598076211353316, 11.5};
    for (int i = 0; i < 4; ++i) CHECK(hand_state[i] == doctest::Approx(frozen_state[i]).epsilon(1e-15));
    // P' = F P F^T + Q with P = diag(900,900,4,4), Q = diag(4,4,1,1)
    const double hand_p11 = 900 + T * T * 4 + 4, hand_p13 = T * 4, hand_p33 = 4 + 1;
    CHECK(hand_p11 == 940.0);
    CHECK(hand_p13 == 12.0);
    CHECK(hand_p33 == 5.0);

    const auto cfg = scenario();
    const TrackState x(0, 0, 17, 10);
    const TrackCovariance P = Eigen::Vector4d(900, 900, 4, 4).asDiagonal();
    const auto r = predict(x, P, 1.0, cfg);
    for (int i = 0; i < 4; ++i) CHECK(r.x(i) == doctest::Approx(frozen_state[i]).epsilon(1e-15));
    CHECK(r.P(0, 0) == 940.0);
    CHECK(r.P(0, 2) == 12.0);
    CHECK(r.P(2, 0) == 12.0);
    CHECK(r.P(2, 2) == 5.0);
    CHECK(r.P(1, 1) == 940.0);
    CHECK(r.P(1, 3) == 12.0);
    CHECK(r.P(0, 1) == 0.0);
}

TEST_CASE("predict: stationary target without process noise") {
    auto cfg = scenario();
    cfg.Q.setZero();
    const TrackState x(5, -3, 0, 0);
    std::mt19937_64 rng(1);
    const auto P = random_spd(rng, 10);
    const auto r = predict(x, P, 0.0, cfg);
    CHECK(r.x == x);
    const auto m = dynamics_matrices(cfg);
    CHECK(r.P.isApprox(m.F * P * m.F.transpose(), 1e-12));
}

TEST_CASE("update: limits and scalar gain") {
    auto cfg = scenario();
    const TrackState xp(51, 30, 19.6, 11.5);
    TrackCovariance Pp = Eigen::Vector4d(940, 940, 5, 5).asDiagonal();

    // zero innovation
    auto r = update(xp, Pp, xp.head<2>(), cfg);
    CHECK((r.x - xp).norm() < 1e-12);

    // decoupled axes: gain 940/(940+900)
    const double frozen_gain = 0.5108695652173914;
    CHECK(940.0 / 1840.0 == doctest::Approx(frozen_gain).epsilon(1e-15));
    const Measurement z(61, 30);
    r = update(xp, Pp, z, cfg);
    CHECK((r.x(0) - xp(0)) / 10.0 == doctest::Approx(frozen_gain).epsilon(1e-12));
    CHECK(r.x(1) == doctest::Approx(xp(1)));

    // tiny measurement noise pins the positions to z
    cfg.R = Eigen::Vector2d(1e-9, 1e-9).asDiagonal();
    r = update(xp, Pp, z, cfg);
    CHECK(r.x(0) == doctest::Approx(61.0).epsilon(1e-9));
    CHECK(r.x(1) == doctest::Approx(30.0).epsilon(1e-9));

    // singular innovation covariance
    cfg.R.setZero();
    Pp.setZero();
    try {
        update(xp, Pp, z, cfg);
        FAIL("expected SingularInnovation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularInnovation);
    }
}

TEST_CASE("update: Joseph form equivalence, symmetry, PSD and gain range") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g(0, 1);
    const auto cfg = scenario();
    const auto m = dynamics_matrices(cfg);
    for (int i = 0; i < 200; ++i) {
        const auto Pp = random_spd(rng, 50);
        const TrackState xp(g(rng), g(rng), g(rng), g(rng));
        const Measurement z(g(rng), g(rng));
        const auto r = update(xp, Pp, z, cfg);
        const Eigen::Matrix2d S = m.H * Pp * m.H.transpose() + cfg.R;
        const Eigen::Matrix<double, 4, 2> G = Pp * m.H.transpose() * S.inverse();
        const Eigen::Matrix4d IKH = Eigen::Matrix4d::Identity() - G * m.H;
        const Eigen::Matrix4d joseph = IKH * Pp * IKH.transpose() + G * cfg.R * G.transpose();
        CHECK((r.P - joseph).norm() <= 1e-6 * joseph.norm());
        CHECK((r.P - r.P.transpose()).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(r.P);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
    // diagonal P and R: position gains inside [0, 1]
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector4d d = Eigen::Vector4d::Random().cwiseAbs() * 1000 + Eigen::Vector4d::Constant(0.1);
        const TrackCovariance Pp = d.asDiagonal();
        const Eigen::Matrix2d S = m.H * Pp * m.H.transpose() + cfg.R;
        const Eigen::Matrix<double, 4, 2> G = Pp * m.H.transpose() * S.inverse();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                CHECK(G(a, b) >= 0.0);
                CHECK(G(a, b) <= 1.0);
            }
    }
}

TEST_CASE("constrain: projection examples") {
    auto cfg = scenario();
    cfg.theta = kPi / 4;
    const TrackCovariance I = TrackCovariance::Identity();
    const auto r = constrain(TrackState(1, 0, 0, 0), I, cfg);
    // least-squares oracle
    const double t = std::tan(kPi / 4);
    const double D[2][4] = {{1, -t, 0, 0}, {0, 0, 1, -t}};
    const auto o = kkt_projection({1, 0, 0, 0}, D);
    const double frozen[4] = {0.5, 0.5, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(o[i] == doctest::Approx(frozen[i]).epsilon(1e-12));
        CHECK(r(i) == doctest::Approx(frozen[i]).epsilon(1e-12));
    }

    cfg = scenario();
    const double t60 = std::tan(cfg.theta);
    const TrackState feasible(t60 * 7, 7, t60 * 2, 2);
    std::mt19937_64 rng(4);
    const auto P = random_spd(rng, 3);
    CHECK((constrain(feasible, P, cfg) - feasible).norm() < 1e-9);

    const TrackState x(10, -4, 3, 8);
    const auto once = constrain(x, P, cfg);
    const auto twice = constrain(once, P, cfg);
    CHECK((once - twice).norm() < 1e-9);
    const auto m = dynamics_matrices(cfg);
    CHECK((m.D * once).norm() < 1e-9);

    try {
        constrain(x, TrackCovariance::Zero(), cfg);
        FAIL("expected SingularConstraint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularConstraint);
    }
}

TEST_CASE("constrain: affine road offset") {
    auto cfg = scenario();
    cfg.road_offset = Eigen::Vector2d(25.0, 0.0);
    std::mt19937_64 rng(8);
    const auto P = random_spd(rng, 5);
    const auto r = constrain(TrackState(3, 4, 5, 6), P, cfg);
    const auto m = dynamics_matrices(cfg);
    CHECK((m.D * r - cfg.road_offset).norm() < 1e-9);
}

TEST_CASE("step: constraint residual, covariance health, noiseless convergence") {
    auto cfg = scenario();
    cfg.constrained = true;
    const auto m = dynamics_matrices(cfg);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0, 30);
    const double t = std::tan(cfg.theta);
    TrackState truth(0, 0, 10 * t, 10);
    TrackState x(0, 0, 17, 10);
    TrackCovariance P = Eigen::Vector4d(900, 900, 4, 4).asDiagonal();
    for (int k = 0; k < 300; ++k) {
        const double u = k % 2 ? -1.0 : 1.0;
        truth = m.F * truth + m.B * u;
        const Measurement z(truth(0) + g(rng), truth(1) + g(rng));
        const auto r = step(x, P, z, u, cfg);
        x = r.est.x;
        P = r.est.P;
        CHECK((m.D * x).norm() <= 1e-9 * std::max(1.0, x.norm()));
        CHECK((P - P.transpose()).cwiseAbs().maxCoeff() < 1e-9);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(P);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }

    // noiseless: Q = 0, R -> 0, exact dynamics
    cfg = scenario();
    cfg.Q.setZero();
    cfg.R = Eigen::Vector2d(1e-10, 1e-10).asDiagonal();
    truth = TrackState(0, 0, 14.4, 8.3);
    x = TrackState(0, 0, 17, 10);
    P = Eigen::Vector4d(900, 900, 4, 4).asDiagonal();
    double last = 0.0;
    for (int k = 0; k < 10; ++k) {
        truth = m.F * truth + m.B;
        const auto r = step(x, P, truth.head<2>(), 1.0, cfg);
        x = r.est.x;
        P = r.est.P;
        last = (x.head<2>() - truth.head<2>()).norm();
    }
    CHECK(last < 1e-3);
    CHECK((x.tail<2>() - truth.tail<2>()).norm() < 1e-3);
}

TEST_CASE("innovation whiteness on the nominal scenario") {
    const auto cfg = scenario();
    const auto m = dynamics_matrices(cfg);
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g(0, 30);
    const double t = std::tan(cfg.theta);
    TrackState truth(0, 0, 10 * t, 10);
    TrackState x(0, 0, 17, 10);
    TrackCovariance P = Eigen::Vector4d(900, 900, 4, 4).asDiagonal();
    double nis = 0.0;
    const int n = 2000;
    for (int k = 0; k < n; ++k) {
        const double u = k % 2 ? -1.0 : 1.0;
        truth = m.F * truth + m.B * u;
        const Measurement z(truth(0) + g(rng), truth(1) + g(rng));
        const auto r = step(x, P, z, u, cfg);
        nis += r.innovation.dot(r.innovation_cov.inverse() * r.innovation);
        x = r.est.x;
        P = r.est.P;
    }
    nis /= n;
    CHECK(nis >= 1.0);
    CHECK(nis <= 3.0);
}
