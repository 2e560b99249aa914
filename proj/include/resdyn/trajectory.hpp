#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "resdyn/dynamics.hpp"

namespace resdyn {

struct Waypoint {
    double t = 0.0;           // s
    Vec3 p_d = Vec3::Zero();  // m
    Vec3 pd_dot = Vec3::Zero();
    Vec3 pd_ddot = Vec3::Zero();
};

enum class TrajectoryKind {
    line,
    square,
    circle,
    sinusoid,
    spiral,
    kite,
    figure8,
    double_infinity,
    composite,
    hover
};

enum class TrajectoryPlane { xy, yz, xz };

struct TrajectorySpec {
    TrajectoryKind kind = TrajectoryKind::circle;
    TrajectoryPlane plane = TrajectoryPlane::xy;  // primitives only
    double mean_velocity = 0.4;  // m/s
    double duration = 20.0;      // s
    double amplitude = 1.0;      // m (radius / half-size, shape dependent)
    Vec3 center = Vec3(0, 0, 1);
    double smoothing = 0.15;     // corner-rounding radius, m
    std::string variant = "a";   // composite selector: a, b, c, d

    void validate() const;
    static TrajectoryKind kind_from_string(const std::string& s);
    static TrajectoryPlane plane_from_string(const std::string& s);
};

std::vector<Waypoint> sample_trajectory(const TrajectorySpec& spec, double rate_hz);

struct DerivativeReport {
    double max_vel_err = 0.0;  // max |central-diff(p_d) - pd_dot|
    double max_acc_err = 0.0;  // max |central-diff(pd_dot) - pd_ddot|
};

// Requires >= 3 waypoints on a uniform grid.
DerivativeReport check_derivative_consistency(const std::vector<Waypoint>& traj);

void write_trajectory_csv(const std::string& path, const std::vector<Waypoint>& traj);
std::vector<Waypoint> read_trajectory_csv(const std::string& path);

}  // namespace resdyn
