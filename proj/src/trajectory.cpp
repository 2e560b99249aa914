#include "resdyn/trajectory.hpp"

#include <cmath>
#include <memory>

#include "resdyn/csvio.hpp"

namespace resdyn {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CurvePoint {
    Vec3 p = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Vec3 a = Vec3::Zero();
};

struct Segment {
    double duration = 0.0;
    std::function<CurvePoint(double)> eval;  // local time in [0, duration]
};

CurvePoint eval_end(const Segment& s) { return s.eval(s.duration); }

// Bridge between two boundary states: per-axis degree-7 polynomial matching
// position, velocity and acceleration on both ends, with zero jerk at the
// junctions. Zero end jerk keeps the finite-difference acceleration check
// tight, since the adjoining analytic segments carry only small jerk.
Segment poly_bridge(const CurvePoint& from, const CurvePoint& to, double T) {
    const double T2 = T * T, T3 = T2 * T, T4 = T3 * T;
    const double T5 = T4 * T, T6 = T5 * T, T7 = T6 * T;
    Eigen::Matrix4d M;
    M << T4, T5, T6, T7,
        4 * T3, 5 * T4, 6 * T5, 7 * T6,
        12 * T2, 20 * T3, 30 * T4, 42 * T5,
        24 * T, 60 * T2, 120 * T3, 210 * T4;
    const Eigen::Matrix4d Minv = M.inverse();
    Eigen::Matrix<double, 3, 8> c;  // rows: axis, cols: monomial coeffs
    for (int ax = 0; ax < 3; ++ax) {
        const double p0 = from.p[ax], v0 = from.v[ax], a0 = from.a[ax];
        c(ax, 0) = p0;
        c(ax, 1) = v0;
        c(ax, 2) = 0.5 * a0;
        c(ax, 3) = 0.0;  // zero start jerk
        const Eigen::Vector4d rhs(to.p[ax] - p0 - v0 * T - 0.5 * a0 * T2,
                                  to.v[ax] - v0 - a0 * T, to.a[ax] - a0, 0.0);
        const Eigen::Vector4d hi = Minv * rhs;
        for (int i = 0; i < 4; ++i) c(ax, 4 + i) = hi[i];
    }

    Segment seg;
    seg.duration = T;
    seg.eval = [c](double tau) {
        CurvePoint out;
        for (int ax = 0; ax < 3; ++ax) {
            double p = 0, v = 0, a = 0;
            for (int i = 7; i >= 0; --i) p = p * tau + c(ax, i);
            for (int i = 7; i >= 1; --i) v = v * tau + i * c(ax, i);
            for (int i = 7; i >= 2; --i) a = a * tau + i * (i - 1) * c(ax, i);
            out.p[ax] = p;
            out.v[ax] = v;
            out.a[ax] = a;
        }
        return out;
    };
    return seg;
}

Segment const_speed_line(const Vec3& from, const Vec3& to, double speed) {
    const Vec3 dir = (to - from).normalized();
    const double len = (to - from).norm();
    Segment seg;
    seg.duration = len / speed;
    seg.eval = [from, dir, speed](double tau) {
        CurvePoint out;
        out.p = from + dir * (speed * tau);
        out.v = dir * speed;
        out.a = Vec3::Zero();
        return out;
    };
    return seg;
}

// Circular arc at constant speed. e1/e2 span the arc plane.
Segment arc(const Vec3& center, double radius, const Vec3& e1, const Vec3& e2, double theta0,
            double theta1, double speed) {
    const double omega = (theta1 > theta0 ? 1.0 : -1.0) * speed / radius;
    Segment seg;
    seg.duration = std::abs(theta1 - theta0) * radius / speed;
    seg.eval = [=](double tau) {
        const double th = theta0 + omega * tau;
        CurvePoint out;
        out.p = center + radius * (std::cos(th) * e1 + std::sin(th) * e2);
        out.v = radius * omega * (-std::sin(th) * e1 + std::cos(th) * e2);
        out.a = -radius * omega * omega * (std::cos(th) * e1 + std::sin(th) * e2);
        return out;
    };
    return seg;
}

class PiecewisePath {
public:
    PiecewisePath(std::vector<Segment> segments, bool periodic)
        : segments_(std::move(segments)), periodic_(periodic) {
        total_ = 0.0;
        for (const auto& s : segments_) {
            starts_.push_back(total_);
            total_ += s.duration;
        }
    }

    double total_time() const { return total_; }

    CurvePoint eval(double t) const {
        if (periodic_) {
            t = std::fmod(t, total_);
            if (t < 0) t += total_;
        } else {
            t = std::clamp(t, 0.0, total_);
        }
        // linear scan is fine: segment counts are tiny
        size_t i = segments_.size() - 1;
        for (size_t j = 0; j + 1 < segments_.size(); ++j) {
            if (t < starts_[j + 1]) {
                i = j;
                break;
            }
        }
        return segments_[i].eval(t - starts_[i]);
    }

private:
    std::vector<Segment> segments_;
    std::vector<double> starts_;
    double total_ = 0.0;
    bool periodic_ = false;
};

// Joins segments with quintic bridges (including a closing bridge when
// periodic). Bridge time scales with the gap so the interior fourth
// derivative stays small enough for the finite-difference checks.
PiecewisePath connect(const std::vector<Segment>& pieces, double speed, bool periodic,
                      double stretch = 4.5) {
    std::vector<Segment> out;
    for (size_t i = 0; i < pieces.size(); ++i) {
        out.push_back(pieces[i]);
        const bool last = (i + 1 == pieces.size());
        if (last && !periodic) break;
        const CurvePoint a = eval_end(pieces[i]);
        const CurvePoint b = pieces[last ? 0 : i + 1].eval(0.0);
        const double gap = (b.p - a.p).norm();
        if (gap < 1e-12 && (b.v - a.v).norm() < 1e-12 && (b.a - a.a).norm() < 1e-12)
            continue;  // already C2-continuous
        const double T = stretch * std::max(gap / speed, 0.35);
        out.push_back(poly_bridge(a, b, T));
    }
    return PiecewisePath(std::move(out), periodic);
}

void plane_basis(TrajectoryPlane plane, Vec3& e1, Vec3& e2) {
    switch (plane) {
        case TrajectoryPlane::xy: e1 = Vec3::UnitX(); e2 = Vec3::UnitY(); break;
        case TrajectoryPlane::yz: e1 = Vec3::UnitY(); e2 = Vec3::UnitZ(); break;
        case TrajectoryPlane::xz: e1 = Vec3::UnitX(); e2 = Vec3::UnitZ(); break;
    }
}

// Straight run with a trapezoidal speed profile ramped by the quintic
// smoothstep, so acceleration and jerk are continuous and the total
// displacement is exact: integral of v = vmax * (duration - ramp).
Segment smooth_line(const Vec3& from, const Vec3& dir_unit, double length, double duration) {
    const double ramp = std::min(1.0, 0.2 * duration);
    const double vmax = length / (duration - ramp);
    const auto smooth = [](double x, double& s, double& sd) {
        const double x2 = x * x, x3 = x2 * x;
        s = x3 * (10.0 - 15.0 * x + 6.0 * x2);  // quintic smoothstep
        sd = 30.0 * x2 * (1.0 - 2.0 * x + x2);
    };
    Segment seg;
    seg.duration = duration;
    seg.eval = [=](double tau) {
        double s, v, a;
        const double t1 = ramp, t2 = duration - ramp;
        const auto ramp_int = [](double x) {
            const double x4 = x * x * x * x;
            return x4 * (2.5 - 3.0 * x + x * x);
        };
        if (tau < t1) {
            double S, Sd;
            smooth(tau / ramp, S, Sd);
            v = vmax * S;
            a = vmax * Sd / ramp;
            s = vmax * ramp * ramp_int(tau / ramp);
        } else if (tau < t2) {
            v = vmax;
            a = 0.0;
            s = 0.5 * vmax * ramp + vmax * (tau - t1);
        } else {
            const double u = tau - t2;
            double S, Sd;
            smooth(u / ramp, S, Sd);
            v = vmax * (1.0 - S);
            a = -vmax * Sd / ramp;
            s = 0.5 * vmax * ramp + vmax * (t2 - t1) + vmax * (u - ramp * ramp_int(u / ramp));
        }
        CurvePoint out;
        out.p = from + dir_unit * s;
        out.v = dir_unit * v;
        out.a = dir_unit * a;
        return out;
    };
    return seg;
}

// One period of a Gerono-style figure eight. Major axis along e1.
// Starts and ends at the crossing point with zero acceleration, so two of
// these (axes swapped) concatenate C2-continuously into a double infinity.
Segment lemniscate(const Vec3& center, double A, const Vec3& e1, const Vec3& e2, double period) {
    const double om = 2.0 * kPi / period;
    Segment seg;
    seg.duration = period;
    seg.eval = [=](double tau) {
        const double th = om * tau;
        CurvePoint out;
        out.p = center + A * std::sin(th) * e1 + 0.5 * A * std::sin(2 * th) * e2;
        out.v = A * om * std::cos(th) * e1 + A * om * std::cos(2 * th) * e2;
        out.a = -A * om * om * std::sin(th) * e1 - 2.0 * A * om * om * std::sin(2 * th) * e2;
        return out;
    };
    return seg;
}

PiecewisePath rounded_polygon(const std::vector<Vec3>& corners, double speed, double smoothing) {
    std::vector<Segment> edges;
    const size_t n = corners.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec3& a = corners[i];
        const Vec3& b = corners[(i + 1) % n];
        const double len = (b - a).norm();
        const double cut = std::min(smoothing, 0.3 * len);
        const Vec3 dir = (b - a) / len;
        edges.push_back(const_speed_line(a + dir * cut, b - dir * cut, speed));
    }
    return connect(edges, speed, /*periodic=*/true);
}

PiecewisePath build_composite(const TrajectorySpec& spec) {
    const double A = spec.amplitude;
    const Vec3 c = spec.center;
    const double v = spec.mean_velocity;
    std::vector<Segment> parts;
    const Vec3 ex = Vec3::UnitX(), ey = Vec3::UnitY(), ez = Vec3::UnitZ();
    if (spec.variant == "a") {
        // flat loop, climbing loop, sideways half-loop
        parts.push_back(arc(c, 0.9 * A, ex, ey, 0.0, 2.0 * kPi, v));
        parts.push_back(arc(c + Vec3(0.3 * A, 0, 0.4 * A), 0.6 * A, ex, ez, -kPi / 2, 1.5 * kPi, v));
        parts.push_back(arc(c + Vec3(0, -0.2 * A, 0.2 * A), 0.7 * A, ey, ez, 0.0, kPi, v));
    } else if (spec.variant == "b") {
        // figure eight, then a vertical loop and a sharp-cornered dogleg
        parts.push_back(lemniscate(c, A, ex, ey, 2.0 * kPi * A / v));
        parts.push_back(arc(c + Vec3(0, 0.3 * A, 0.5 * A), 0.5 * A, ey, ez, kPi, 3.0 * kPi, v));
        parts.push_back(const_speed_line(c + Vec3(-0.8 * A, 0.4 * A, 0.3 * A),
                                         c + Vec3(-0.2 * A, -0.6 * A, 0.1 * A), v));
    } else if (spec.variant == "c") {
        // doglegs with altitude changes joined by tight turns
        parts.push_back(const_speed_line(c + Vec3(-A, -0.6 * A, 0), c + Vec3(A, -0.6 * A, 0), v));
        parts.push_back(const_speed_line(c + Vec3(A, -0.6 * A, 0.5 * A),
                                         c + Vec3(-0.5 * A, 0.6 * A, 0.5 * A), v));
        parts.push_back(arc(c + Vec3(-0.5 * A, 0.2 * A, 0.25 * A), 0.5 * A, ey, ez, kPi / 2,
                            2.0 * kPi, v));
        parts.push_back(const_speed_line(c + Vec3(0.2 * A, 0.6 * A, 0.2 * A),
                                         c + Vec3(-A, -0.2 * A, 0), v));
    } else if (spec.variant == "d") {
        // double infinity plus a vertical ring
        const double hp = kPi * A * 3.0 / v;
        parts.push_back(lemniscate(c, A, ex, ey, hp));
        parts.push_back(lemniscate(c, A, ey, ex, hp));
        parts.push_back(arc(c + Vec3(0.5 * A, 0, 0.3 * A), 0.45 * A, ex, ez, kPi / 2, 2.5 * kPi, v));
    } else {
        throw std::invalid_argument("trajectory: unknown composite variant `" + spec.variant + "`");
    }
    return connect(parts, v, /*periodic=*/true);
}

}  // namespace

void TrajectorySpec::validate() const {
    if (!(mean_velocity > 0.0)) throw std::invalid_argument("trajectory: mean_velocity must be > 0");
    if (!(duration > 0.0)) throw std::invalid_argument("trajectory: duration must be > 0");
    if (!(amplitude > 0.0)) throw std::invalid_argument("trajectory: amplitude must be > 0");
}

TrajectoryKind TrajectorySpec::kind_from_string(const std::string& s) {
    if (s == "line") return TrajectoryKind::line;
    if (s == "square") return TrajectoryKind::square;
    if (s == "circle") return TrajectoryKind::circle;
    if (s == "sinusoid") return TrajectoryKind::sinusoid;
    if (s == "spiral") return TrajectoryKind::spiral;
    if (s == "kite") return TrajectoryKind::kite;
    if (s == "figure8") return TrajectoryKind::figure8;
    if (s == "double_infinity") return TrajectoryKind::double_infinity;
    if (s == "composite") return TrajectoryKind::composite;
    if (s == "hover") return TrajectoryKind::hover;
    throw std::invalid_argument("trajectory: unknown kind `" + s + "`");
}

TrajectoryPlane TrajectorySpec::plane_from_string(const std::string& s) {
    if (s == "xy") return TrajectoryPlane::xy;
    if (s == "yz") return TrajectoryPlane::yz;
    if (s == "xz") return TrajectoryPlane::xz;
    throw std::invalid_argument("trajectory: unknown plane `" + s + "`");
}

std::vector<Waypoint> sample_trajectory(const TrajectorySpec& spec, double rate_hz) {
    spec.validate();
    if (!(rate_hz > 0.0)) throw std::invalid_argument("trajectory: rate must be > 0");

    const double A = spec.amplitude;
    const double v = spec.mean_velocity;
    const double T = spec.duration;
    Vec3 e1, e2;
    plane_basis(spec.plane, e1, e2);
    const Vec3 c = spec.center;

    std::function<CurvePoint(double)> eval;

    switch (spec.kind) {
        case TrajectoryKind::hover: {
            eval = [c](double) {
                CurvePoint out;
                out.p = c;
                return out;
            };
            break;
        }
        case TrajectoryKind::circle: {
            const double omega = v / A;
            eval = [=](double t) {
                const double th = omega * t;
                CurvePoint out;
                out.p = c + A * (std::cos(th) * e1 + std::sin(th) * e2);
                out.v = A * omega * (-std::sin(th) * e1 + std::cos(th) * e2);
                out.a = -A * omega * omega * (std::cos(th) * e1 + std::sin(th) * e2);
                return out;
            };
            break;
        }
        case TrajectoryKind::line: {
            const double length = v * T;
            const Segment seg = smooth_line(c, e1, length, T);
            eval = [seg](double t) { return seg.eval(std::clamp(t, 0.0, seg.duration)); };
            break;
        }
        case TrajectoryKind::sinusoid: {
            const double cycles = std::max(2.0, std::round(T * v / (6.0 * A)));
            const double om = 2.0 * kPi * cycles / T;
            // pick the drift speed so the rms speed is close to the request
            const double lat_peak = A * om;
            const double vf =
                std::sqrt(std::max(v * v - 0.5 * lat_peak * lat_peak, 0.09 * v * v));
            eval = [=](double t) {
                CurvePoint out;
                out.p = c + vf * t * e1 + A * std::sin(om * t) * e2;
                out.v = vf * e1 + A * om * std::cos(om * t) * e2;
                out.a = -A * om * om * std::sin(om * t) * e2;
                return out;
            };
            break;
        }
        case TrajectoryKind::spiral: {
            // breathing spiral: radius swells from r0 to A and back
            const double r0 = 0.25 * A;
            const double om = v / (0.5 * (r0 + A));
            const double rr = kPi / T;
            eval = [=](double t) {
                const double s = std::sin(rr * t), sc = std::cos(rr * t);
                const double r = r0 + (A - r0) * s * s;
                const double rd = (A - r0) * 2.0 * s * sc * rr;
                const double rdd = (A - r0) * 2.0 * rr * rr * (sc * sc - s * s);
                const double th = om * t, ct = std::cos(th), st = std::sin(th);
                CurvePoint out;
                out.p = c + r * (ct * e1 + st * e2);
                out.v = (rd * ct - r * om * st) * e1 + (rd * st + r * om * ct) * e2;
                out.a = (rdd * ct - 2 * rd * om * st - r * om * om * ct) * e1 +
                        (rdd * st + 2 * rd * om * ct - r * om * om * st) * e2;
                return out;
            };
            break;
        }
        case TrajectoryKind::square: {
            const double h = A;
            const std::vector<Vec3> corners = {c - h * e1 - h * e2, c + h * e1 - h * e2,
                                               c + h * e1 + h * e2, c - h * e1 + h * e2};
            auto path = std::make_shared<PiecewisePath>(rounded_polygon(corners, v, spec.smoothing));
            eval = [path](double t) { return path->eval(t); };
            break;
        }
        case TrajectoryKind::kite: {
            const std::vector<Vec3> corners = {c + A * e2, c + 0.55 * A * e1 + 0.15 * A * e2,
                                               c - A * e2, c - 0.55 * A * e1 + 0.15 * A * e2};
            auto path = std::make_shared<PiecewisePath>(rounded_polygon(corners, v, spec.smoothing));
            eval = [path](double t) { return path->eval(t); };
            break;
        }
        case TrajectoryKind::figure8: {
            const double period = 2.0 * kPi * A / v;  // ~ path length / speed
            const Segment seg = lemniscate(c, A, e1, e2, period);
            eval = [seg](double t) { return seg.eval(std::fmod(t, seg.duration)); };
            break;
        }
        case TrajectoryKind::double_infinity: {
            // first major loop along e1, second along e2; junction states
            // match exactly (equal velocity, zero acceleration)
            const double half = kPi * A * 3.0 / v;
            std::vector<Segment> parts;
            parts.push_back(lemniscate(c, A, e1, e2, half));
            parts.push_back(lemniscate(c, A, e2, e1, half));
            auto path = std::make_shared<PiecewisePath>(
                PiecewisePath(std::move(parts), /*periodic=*/true));
            eval = [path](double t) { return path->eval(t); };
            break;
        }
        case TrajectoryKind::composite: {
            auto path = std::make_shared<PiecewisePath>(build_composite(spec));
            eval = [path](double t) { return path->eval(t); };
            break;
        }
        default:
            throw std::invalid_argument("trajectory: unsupported kind");
    }

    const long n = std::lround(T * rate_hz);
    if (n < 1) throw std::invalid_argument("trajectory: duration * rate < 1 sample");
    std::vector<Waypoint> out;
    out.reserve(n);
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate_hz;
        const CurvePoint cp = eval(t);
        out.push_back(Waypoint{t, cp.p, cp.v, cp.a});
    }
    return out;
}

DerivativeReport check_derivative_consistency(const std::vector<Waypoint>& traj) {
    if (traj.size() < 3)
        throw std::invalid_argument("derivative check: need at least 3 waypoints");
    const double dt = traj[1].t - traj[0].t;
    for (size_t i = 1; i < traj.size(); ++i) {
        if (std::abs((traj[i].t - traj[i - 1].t) - dt) > 1e-9)
            throw std::invalid_argument("derivative check: non-uniform sampling");
    }
    DerivativeReport rep;
    for (size_t i = 1; i + 1 < traj.size(); ++i) {
        const Vec3 v_fd = (traj[i + 1].p_d - traj[i - 1].p_d) / (2.0 * dt);
        const Vec3 a_fd = (traj[i + 1].pd_dot - traj[i - 1].pd_dot) / (2.0 * dt);
        rep.max_vel_err = std::max(rep.max_vel_err, (v_fd - traj[i].pd_dot).cwiseAbs().maxCoeff());
        rep.max_acc_err = std::max(rep.max_acc_err, (a_fd - traj[i].pd_ddot).cwiseAbs().maxCoeff());
    }
    return rep;
}

void write_trajectory_csv(const std::string& path, const std::vector<Waypoint>& traj) {
    CsvTable table;
    table.columns = {"t",      "pd_x",     "pd_y",     "pd_z",     "pddot_x", "pddot_y",
                     "pddot_z", "pdddot_x", "pdddot_y", "pdddot_z"};
    for (const auto& w : traj) {
        table.rows.push_back({w.t, w.p_d.x(), w.p_d.y(), w.p_d.z(), w.pd_dot.x(), w.pd_dot.y(),
                              w.pd_dot.z(), w.pd_ddot.x(), w.pd_ddot.y(), w.pd_ddot.z()});
    }
    write_csv(path, table);
}

std::vector<Waypoint> read_trajectory_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    std::vector<Waypoint> out;
    out.reserve(table.rows.size());
    const int it = table.column_index("t");
    const int ip = table.column_index("pd_x");
    const int iv = table.column_index("pddot_x");
    const int ia = table.column_index("pdddot_x");
    for (const auto& r : table.rows) {
        Waypoint w;
        w.t = r[it];
        w.p_d = Vec3(r[ip], r[ip + 1], r[ip + 2]);
        w.pd_dot = Vec3(r[iv], r[iv + 1], r[iv + 2]);
        w.pd_ddot = Vec3(r[ia], r[ia + 1], r[ia + 2]);
        out.push_back(w);
    }
    return out;
}

}  // namespace resdyn
