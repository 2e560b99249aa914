#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "resdyn/dynamics.hpp"

using namespace resdyn;

TEST_CASE("hover force balances gravity exactly") {
    QuadrotorParams params;
    params.true_mass = 1.4;
    PlantState s;
    s.p = Vec3(0, 0, 1);
    const Vec3 u(0, 0, 1.4 * 9.81);
    const PlantState next = step_quadrotor(s, u, params, Vec3::Zero(), 0.01);
    CHECK(next.a_last.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(next.v.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(next.p.z() == doctest::Approx(1.0));
}

TEST_CASE("free fall accelerates at -g") {
    QuadrotorParams params;
    PlantState s;
    const double dt = 0.01;
    const PlantState next = step_quadrotor(s, Vec3::Zero(), params, Vec3::Zero(), dt);
    CHECK(next.v.z() == doctest::Approx(-9.81 * dt).epsilon(1e-12));
    CHECK(next.v.x() == 0.0);
}

TEST_CASE("linear drag decelerates along the moving axis") {
    // hand oracle: a_x = -c * v_x / m_total = -0.1 * 1 / 1.4
    QuadrotorParams params;
    params.true_mass = 1.4;
    params.drag_coeffs = Vec3(0.1, 0, 0);
    PlantState s;
    s.v = Vec3(1, 0, 0);
    const Vec3 u(0, 0, params.total_mass() * params.gravity);
    const PlantState next = step_quadrotor(s, u, params, Vec3::Zero(), 0.01);
    CHECK(next.a_last.x() == doctest::Approx(-0.1 / 1.4).epsilon(1e-12));
    CHECK(next.a_last.z() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("non-finite force command is rejected") {
    QuadrotorParams params;
    PlantState s;
    Vec3 bad(std::nan(""), 0, 0);
    CHECK_THROWS_AS(step_quadrotor(s, bad, params, Vec3::Zero(), 0.01), std::invalid_argument);
    CHECK_THROWS_AS(step_quadrotor(s, Vec3::Zero(), params, Vec3::Zero(), 0.0),
                    std::invalid_argument);
}

TEST_CASE("actuator lag settles to the commanded force") {
    QuadrotorParams params;
    params.actuator_lag_tau = 0.05;
    PlantState s;
    const Vec3 u(0, 0, 10.0);
    for (int i = 0; i < 200; ++i) s = step_quadrotor(s, u, params, Vec3::Zero(), 0.01);
    CHECK(s.lagged_force.z() == doctest::Approx(10.0).epsilon(1e-6));
    // one step moves a fraction 1 - exp(-dt/tau) toward the target
    PlantState t;
    const PlantState after = step_quadrotor(t, u, params, Vec3::Zero(), 0.01);
    CHECK(after.lagged_force.z() ==
          doctest::Approx(10.0 * (1.0 - std::exp(-0.01 / 0.05))).epsilon(1e-12));
}

TEST_CASE("energy drift of the symplectic step stays below 1% over 1e4 steps") {
    QuadrotorParams params;
    PlantState s;
    s.p = Vec3(0, 0, 100.0);
    s.v = Vec3(3.0, 0, 0);
    const double dt = 0.002;
    const double m = params.total_mass();
    const auto energy = [&](const PlantState& st) {
        return m * (0.5 * st.v.squaredNorm() + params.gravity * st.p.z());
    };
    const double e0 = energy(s);
    for (int i = 0; i < 10000; ++i) s = step_quadrotor(s, Vec3::Zero(), params, Vec3::Zero(), dt);
    CHECK(std::abs(energy(s) - e0) / std::abs(e0) < 0.01);
}

TEST_CASE("identical seed and config give bit-identical trajectories") {
    QuadrotorParams params;
    params.drag_coeffs = Vec3(0.05, 0.05, 0.05);
    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::ou_wind;
    dist.ou_rate = 1.0;
    dist.ou_volatility = 0.3;
    dist.seed = 42;

    const auto run = [&]() {
        DisturbanceSampler sampler(dist);
        PlantState s;
        std::vector<double> trace;
        for (int i = 0; i < 500; ++i) {
            s = step_quadrotor(s, Vec3(0, 0, 13.7), params, sampler.sample(0.01), 0.01);
            trace.push_back(s.p.x());
            trace.push_back(s.p.z());
        }
        return trace;
    };
    CHECK(run() == run());
}

TEST_CASE("toy closed loop with exact disturbance feedback matches the analytic decay") {
    ToyParams params;  // a = 1, K = 2, dt = 0.01
    // oracle: with d_hat = d the discrete loop is x(0) (1 - dt (K - a))^n
    double x = 1.0;
    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::gaussian;
    dist.gauss_std = 0.5;
    dist.seed = 7;
    DisturbanceSampler sampler(dist, 1);
    const int n = 100;  // 1 s
    for (int i = 0; i < n; ++i) {
        const double d = sampler.sample(params.dt)[0];
        const double u = -params.k_gain * x - d;  // d_hat = d
        x = step_toy(x, u, params, d);
    }
    const double exact = std::pow(1.0 - params.dt * (params.k_gain - params.a), n);
    CHECK(x == doctest::Approx(exact).epsilon(1e-12));
    // and the discrete decay is within 1% of e^{-1} after 1 s
    CHECK(x == doctest::Approx(std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("toy with zero input grows as explicit Euler of xdot = x") {
    ToyParams params;
    double x = 1.0;
    for (int i = 0; i < 50; ++i) x = step_toy(x, 0.0, params, 0.0);
    CHECK(x == doctest::Approx(std::pow(1.0 + params.dt, 50)).epsilon(1e-12));
}

TEST_CASE("disturbance kinds: none and constant bias") {
    DisturbanceSpec none;
    DisturbanceSampler s_none(none);
    CHECK(s_none.sample(0.01) == Vec3::Zero());

    DisturbanceSpec bias;
    bias.kind = DisturbanceKind::constant_bias;
    bias.bias = Vec3(0.5, 0, 0);
    DisturbanceSampler s_bias(bias);
    for (int i = 0; i < 10; ++i) CHECK(s_bias.sample(0.01) == Vec3(0.5, 0, 0));
}

TEST_CASE("ou wind reaches the stationary std sigma/sqrt(2 theta)") {
    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::ou_wind;
    dist.ou_rate = 1.0;
    dist.ou_volatility = 0.3;
    dist.seed = 123;
    DisturbanceSampler sampler(dist);
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        const double w = sampler.sample(0.01)[0];
        sum += w;
        sumsq += w * w;
    }
    const double var = sumsq / n - (sum / n) * (sum / n);
    const double expected_std = 0.3 / std::sqrt(2.0);
    // generous MC tolerance: OU samples are correlated, so the effective
    // sample count is ~ n * dt * 2 theta
    CHECK(std::sqrt(var) == doctest::Approx(expected_std).epsilon(0.1));
}

TEST_CASE("cauchy draws have median |d| equal to the scale") {
    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::cauchy;
    dist.cauchy_scale = 0.1;
    dist.seed = 99;
    DisturbanceSampler sampler(dist, 1);
    const int n = 100000;
    std::vector<double> magnitudes(n);
    for (int i = 0; i < n; ++i) magnitudes[i] = std::abs(sampler.sample(0.01)[0]);
    std::nth_element(magnitudes.begin(), magnitudes.begin() + n / 2, magnitudes.end());
    // |Cauchy(0, s)| has median s * tan(pi/4) = s
    CHECK(magnitudes[n / 2] == doctest::Approx(0.1).epsilon(0.03));
}

TEST_CASE("cauchy draws are clipped at 50 scale") {
    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::cauchy;
    dist.cauchy_scale = 0.1;
    dist.seed = 5;
    DisturbanceSampler sampler(dist, 3);
    double max_abs = 0;
    for (int i = 0; i < 200000; ++i)
        max_abs = std::max(max_abs, sampler.sample(0.01).cwiseAbs().maxCoeff());
    CHECK(max_abs <= 5.0 + 1e-12);
    CHECK(sampler.clip_count() > 0);  // P(|d| > 50 s) ~ 1.27% per draw
}

TEST_CASE("invalid parameter combinations are rejected") {
    QuadrotorParams params;
    params.true_mass = -1;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);

    DisturbanceSpec dist;
    dist.kind = DisturbanceKind::ou_wind;
    dist.ou_rate = 0.0;
    CHECK_THROWS_AS(dist.validate(), std::invalid_argument);
}
