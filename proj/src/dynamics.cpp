#include "resdyn/dynamics.hpp"

#include <cmath>

namespace resdyn {

void QuadrotorParams::validate() const {
    if (!(true_mass > 0.0)) throw std::invalid_argument("plant: true_mass must be > 0");
    if (!(gravity > 0.0)) throw std::invalid_argument("plant: gravity must be > 0");
    if ((drag_coeffs.array() < 0.0).any())
        throw std::invalid_argument("plant: drag_coeffs must be >= 0");
    if (payload_mass < 0.0) throw std::invalid_argument("plant: payload_mass must be >= 0");
    if (actuator_lag_tau < 0.0) throw std::invalid_argument("plant: actuator_lag_tau must be >= 0");
}

void DisturbanceSpec::validate() const {
    if (kind == DisturbanceKind::ou_wind && !(ou_rate > 0.0))
        throw std::invalid_argument("disturbance: ou_rate must be > 0 for ou_wind");
    if (ou_volatility < 0.0 || gauss_std < 0.0 || cauchy_scale < 0.0)
        throw std::invalid_argument("disturbance: scales must be >= 0");
}

DisturbanceKind DisturbanceSpec::kind_from_string(const std::string& s) {
    if (s == "none") return DisturbanceKind::none;
    if (s == "constant_bias") return DisturbanceKind::constant_bias;
    if (s == "ou_wind") return DisturbanceKind::ou_wind;
    if (s == "gaussian") return DisturbanceKind::gaussian;
    if (s == "cauchy") return DisturbanceKind::cauchy;
    throw std::invalid_argument("disturbance: unknown kind `" + s + "`");
}

DisturbanceSampler::DisturbanceSampler(const DisturbanceSpec& spec, int dim)
    : spec_(spec), dim_(dim), rng_(make_rng(spec.seed)) {
    spec_.validate();
    if (dim != 1 && dim != 3) throw std::invalid_argument("disturbance: dim must be 1 or 3");
}

Vec3 DisturbanceSampler::sample(double dt) {
    Vec3 out = Vec3::Zero();
    switch (spec_.kind) {
        case DisturbanceKind::none:
            break;
        case DisturbanceKind::constant_bias:
            out = spec_.bias;
            break;
        case DisturbanceKind::ou_wind: {
            // exact OU transition: keeps the stationary variance sigma^2/(2 theta)
            // independent of dt
            const double theta = spec_.ou_rate;
            const double decay = std::exp(-theta * dt);
            const double noise_std =
                spec_.ou_volatility * std::sqrt((1.0 - decay * decay) / (2.0 * theta));
            std::normal_distribution<double> n(0.0, 1.0);
            for (int i = 0; i < dim_; ++i)
                ou_state_[i] = ou_state_[i] * decay + noise_std * n(rng_);
            out = ou_state_;
            break;
        }
        case DisturbanceKind::gaussian: {
            std::normal_distribution<double> n(0.0, spec_.gauss_std);
            for (int i = 0; i < dim_; ++i) out[i] = n(rng_);
            break;
        }
        case DisturbanceKind::cauchy: {
            // clipped: unbounded draws destroy fixed-step integration
            const double cap = 50.0 * spec_.cauchy_scale;
            std::cauchy_distribution<double> c(0.0, spec_.cauchy_scale);
            for (int i = 0; i < dim_; ++i) {
                double d = c(rng_);
                if (d > cap || d < -cap) {
                    d = std::clamp(d, -cap, cap);
                    ++clip_count_;
                }
                out[i] = d;
            }
            break;
        }
    }
    return out;
}

Vec3 quad_acceleration(const PlantState& state, const Vec3& force_cmd,
                       const QuadrotorParams& params, const Vec3& wind) {
    const Vec3 f_a = aero_force(params, state.v, wind);
    return params.gravity_vec() + (force_cmd + f_a) / params.total_mass();
}

PlantState step_quadrotor(const PlantState& state, const Vec3& force_cmd,
                          const QuadrotorParams& params, const Vec3& wind, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_quadrotor: dt must be > 0");
    if (!force_cmd.allFinite()) throw std::invalid_argument("step_quadrotor: non-finite force_cmd");
    if (!state.finite()) throw std::invalid_argument("step_quadrotor: non-finite state");

    PlantState next = state;
    Vec3 f_eff = force_cmd;
    if (params.actuator_lag_tau > 0.0) {
        const double decay = std::exp(-dt / params.actuator_lag_tau);
        next.lagged_force = force_cmd + (state.lagged_force - force_cmd) * decay;
        f_eff = next.lagged_force;
    } else {
        next.lagged_force = force_cmd;
    }

    const Vec3 f_a = aero_force(params, state.v, wind);
    const Vec3 a = params.gravity_vec() + (f_eff + f_a) / params.total_mass();
    next.v = state.v + a * dt;
    next.p = state.p + next.v * dt;
    next.a_last = a;
    return next;
}

void ToyParams::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("toy: dt must be > 0");
    if (!(duration > 0.0)) throw std::invalid_argument("toy: duration must be > 0");
}

double step_toy(double x, double u, const ToyParams& params, double d) {
    if (!std::isfinite(x) || !std::isfinite(u) || !std::isfinite(d))
        throw std::invalid_argument("step_toy: non-finite input");
    return x + params.dt * (params.a * x + u + d);
}

}  // namespace resdyn
