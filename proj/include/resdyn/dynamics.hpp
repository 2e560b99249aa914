#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "resdyn/rng.hpp"

namespace resdyn {

using Vec3 = Eigen::Vector3d;

struct QuadrotorParams {
    double true_mass = 1.4;     // kg
    double gravity = 9.81;      // m/s^2
    Vec3 drag_coeffs = Vec3::Zero();  // per-axis linear drag, N·s/m
    double payload_mass = 0.0;  // kg, added to true_mass
    double actuator_lag_tau = 0.0;  // s, first-order force lag; 0 = ideal

    double total_mass() const { return true_mass + payload_mass; }
    Vec3 gravity_vec() const { return Vec3(0.0, 0.0, -gravity); }
    void validate() const;
};

struct PlantState {
    Vec3 p = Vec3::Zero();       // m
    Vec3 v = Vec3::Zero();       // m/s
    Vec3 a_last = Vec3::Zero();  // m/s^2, last computed acceleration
    Vec3 lagged_force = Vec3::Zero();  // N, actuator state

    bool finite() const {
        return p.allFinite() && v.allFinite() && a_last.allFinite() && lagged_force.allFinite();
    }
};

enum class DisturbanceKind { none, constant_bias, ou_wind, gaussian, cauchy };

struct DisturbanceSpec {
    DisturbanceKind kind = DisturbanceKind::none;
    Vec3 bias = Vec3::Zero();   // constant_bias: N
    double ou_rate = 1.0;       // ou_wind: mean-reversion rate, 1/s
    double ou_volatility = 0.0; // ou_wind: N/sqrt(s)
    double gauss_std = 0.0;     // gaussian: N
    double cauchy_scale = 0.0;  // cauchy: N
    std::uint64_t seed = 0;

    void validate() const;
    static DisturbanceKind kind_from_string(const std::string& s);
};

// Realizes the disturbance force over an episode. Draws are deterministic
// given (seed, call sequence); the OU kind carries its state between calls.
class DisturbanceSampler {
public:
    explicit DisturbanceSampler(const DisturbanceSpec& spec, int dim = 3);

    // One draw per physics substep; dt only matters for the OU kind.
    Vec3 sample(double dt);

    long clip_count() const { return clip_count_; }

private:
    DisturbanceSpec spec_;
    int dim_;
    std::mt19937_64 rng_;
    Vec3 ou_state_ = Vec3::Zero();
    long clip_count_ = 0;
};

// Semi-implicit Euler step of the point-mass plant. `wind` is the external
// component of f_a, already sampled for this substep; the full aerodynamic
// term is f_a = -drag .* v + wind. Returns the new state; state.a_last is
// the acceleration applied during this substep.
PlantState step_quadrotor(const PlantState& state, const Vec3& force_cmd,
                          const QuadrotorParams& params, const Vec3& wind, double dt);

// f_a evaluated at the given state (used for residual ground truth).
inline Vec3 aero_force(const QuadrotorParams& params, const Vec3& v, const Vec3& wind) {
    return -params.drag_coeffs.cwiseProduct(v) + wind;
}

// Instantaneous acceleration response to a commanded force at a given state.
Vec3 quad_acceleration(const PlantState& state, const Vec3& force_cmd,
                       const QuadrotorParams& params, const Vec3& wind);

struct ToyParams {
    double a = 1.0;       // 1/s, open-loop pole
    double k_gain = 2.0;  // 1/s, state feedback
    double dt = 0.01;     // s
    double duration = 8.0;  // s

    void validate() const;
};

// Explicit Euler step of  xdot = a x + u + d.
double step_toy(double x, double u, const ToyParams& params, double d);

}  // namespace resdyn
