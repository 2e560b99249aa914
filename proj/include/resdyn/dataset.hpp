#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "resdyn/dynamics.hpp"

namespace resdyn {

// One logged control step. zeta packs the sensory tuple; for the quadrotor
// it is [p(3), v(3), p_ddot(3)] with p_ddot the acceleration response to
// this row's control input, so u - m_bar * p_ddot is the exact residual.
// For the toy system zeta is just [x].
struct FlightLogRow {
    double t = 0.0;
    Eigen::VectorXd zeta;
    Eigen::VectorXd u;
};

struct FlightLog {
    int zeta_dim = 9;
    int u_dim = 3;
    std::vector<FlightLogRow> rows;
};

// Residual per the nominal-mass reformulation: H = u - m_bar * p_ddot.
Vec3 compute_residual(const Vec3& u, const Vec3& p_ddot, double m_bar);

struct SequenceRecord {
    Eigen::MatrixXd zeta_seq;  // H_seq x zeta_dim
    Eigen::MatrixXd u_seq;     // H_seq x u_dim, one-step-shifted control
    Eigen::MatrixXd h_seq;     // H_seq x h_dim
};

class Normalizer;

struct SequenceDataset {
    int h_seq_len = 16;
    int zeta_dim = 9;
    int u_dim = 3;
    int h_dim = 3;
    std::vector<SequenceRecord> records;

    void validate() const;
};

// Windows a flight log into overlapping sequences. u_seq is the shifted
// control (entry i holds the input of step i-1; a leading zero at the very
// first log step), h_seq the residual of the unshifted control.
SequenceDataset build_sequences(const FlightLog& log, int h_seq_len, int stride, double m_bar);

// Same windowing for pre-computed traces (toy pipeline and tests).
SequenceDataset build_sequences_from_traces(const std::vector<Eigen::VectorXd>& zeta,
                                            const std::vector<Eigen::VectorXd>& u_shifted,
                                            const std::vector<Eigen::VectorXd>& h, int h_seq_len,
                                            int stride);

// Per-dimension min-max map onto [-1, 1]. Constant dimensions pass through
// unscaled and are flagged.
class Normalizer {
public:
    Normalizer() = default;
    Normalizer(int zeta_dim, int u_dim, int h_dim);

    static Normalizer fit(const SequenceDataset& data);

    Eigen::VectorXd norm_zeta(const Eigen::VectorXd& x) const { return fwd(x, zeta_lo_, zeta_hi_); }
    Eigen::VectorXd norm_u(const Eigen::VectorXd& x) const { return fwd(x, u_lo_, u_hi_); }
    Eigen::VectorXd norm_h(const Eigen::VectorXd& x) const { return fwd(x, h_lo_, h_hi_); }
    Eigen::VectorXd denorm_h(const Eigen::VectorXd& y) const { return inv(y, h_lo_, h_hi_); }
    Eigen::MatrixXd norm_h_rows(const Eigen::MatrixXd& m) const;    // rows are timesteps
    Eigen::MatrixXd denorm_h_rows(const Eigen::MatrixXd& m) const;

    // Applies to every record in place.
    void apply(SequenceDataset& data) const;

    int constant_dims() const;
    const Eigen::VectorXd& h_lo() const { return h_lo_; }
    const Eigen::VectorXd& h_hi() const { return h_hi_; }

    std::string to_json_string() const;
    static Normalizer from_json_string(const std::string& text);

private:
    static Eigen::VectorXd fwd(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                               const Eigen::VectorXd& hi);
    static Eigen::VectorXd inv(const Eigen::VectorXd& y, const Eigen::VectorXd& lo,
                               const Eigen::VectorXd& hi);

    Eigen::VectorXd zeta_lo_, zeta_hi_, u_lo_, u_hi_, h_lo_, h_hi_;

    friend bool operator==(const Normalizer& a, const Normalizer& b);
};

bool operator==(const Normalizer& a, const Normalizer& b);

// Dataset on disk: one JSON header line followed by a raw little-endian
// double payload (records as zeta rows, u rows, h rows).
void save_dataset(const std::string& path, const SequenceDataset& data,
                  const std::string& meta_json = "{}");
SequenceDataset load_dataset(const std::string& path, std::string* meta_json_out = nullptr);

// CSV flight-log exchange for externally collected data. Columns:
// t, zeta_0.., u_0..; acceleration columns may be reconstructed by central
// differences of velocity when absent.
void write_flight_log_csv(const std::string& path, const FlightLog& log);
FlightLog read_flight_log_csv(const std::string& path);

}  // namespace resdyn
