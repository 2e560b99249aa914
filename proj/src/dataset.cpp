#include "resdyn/dataset.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>

#include "resdyn/csvio.hpp"

namespace resdyn {

using nlohmann::json;

Vec3 compute_residual(const Vec3& u, const Vec3& p_ddot, double m_bar) {
    if (!(m_bar > 0.0)) throw std::invalid_argument("residual: m_bar must be > 0");
    if (!u.allFinite() || !p_ddot.allFinite())
        throw std::invalid_argument("residual: non-finite input");
    return u - m_bar * p_ddot;
}

void SequenceDataset::validate() const {
    for (const auto& r : records) {
        if (r.zeta_seq.rows() != h_seq_len || r.u_seq.rows() != h_seq_len ||
            r.h_seq.rows() != h_seq_len)
            throw std::runtime_error("dataset: record length != h_seq_len");
        if (r.zeta_seq.cols() != zeta_dim || r.u_seq.cols() != u_dim || r.h_seq.cols() != h_dim)
            throw std::runtime_error("dataset: record width mismatch");
    }
}

SequenceDataset build_sequences_from_traces(const std::vector<Eigen::VectorXd>& zeta,
                                            const std::vector<Eigen::VectorXd>& u_shifted,
                                            const std::vector<Eigen::VectorXd>& h, int h_seq_len,
                                            int stride) {
    const auto n = static_cast<long>(zeta.size());
    if (n < h_seq_len) {
        throw std::runtime_error("dataset: log has " + std::to_string(n) +
                                 " steps, need at least " + std::to_string(h_seq_len));
    }
    if (u_shifted.size() != zeta.size() || h.size() != zeta.size())
        throw std::runtime_error("dataset: trace length mismatch");
    if (stride < 1) throw std::invalid_argument("dataset: stride must be >= 1");

    SequenceDataset out;
    out.h_seq_len = h_seq_len;
    out.zeta_dim = static_cast<int>(zeta[0].size());
    out.u_dim = static_cast<int>(u_shifted[0].size());
    out.h_dim = static_cast<int>(h[0].size());
    for (long start = 0; start + h_seq_len <= n; start += stride) {
        SequenceRecord rec;
        rec.zeta_seq.resize(h_seq_len, out.zeta_dim);
        rec.u_seq.resize(h_seq_len, out.u_dim);
        rec.h_seq.resize(h_seq_len, out.h_dim);
        for (int i = 0; i < h_seq_len; ++i) {
            rec.zeta_seq.row(i) = zeta[start + i];
            rec.u_seq.row(i) = u_shifted[start + i];
            rec.h_seq.row(i) = h[start + i];
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

SequenceDataset build_sequences(const FlightLog& log, int h_seq_len, int stride, double m_bar) {
    if (log.zeta_dim < 9)
        throw std::runtime_error("dataset: quadrotor log needs zeta = [p, v, p_ddot]");
    std::vector<Eigen::VectorXd> zeta, u_shifted, h;
    zeta.reserve(log.rows.size());
    for (size_t i = 0; i < log.rows.size(); ++i) {
        const auto& row = log.rows[i];
        zeta.push_back(row.zeta);
        u_shifted.push_back(i == 0 ? Eigen::VectorXd::Zero(log.u_dim).eval()
                                   : log.rows[i - 1].u);
        const Vec3 p_ddot = row.zeta.segment<3>(6);
        h.push_back(compute_residual(row.u.head<3>(), p_ddot, m_bar));
    }
    return build_sequences_from_traces(zeta, u_shifted, h, h_seq_len, stride);
}

Normalizer::Normalizer(int zeta_dim, int u_dim, int h_dim) {
    zeta_lo_ = Eigen::VectorXd::Constant(zeta_dim, -1.0);
    zeta_hi_ = Eigen::VectorXd::Constant(zeta_dim, 1.0);
    u_lo_ = Eigen::VectorXd::Constant(u_dim, -1.0);
    u_hi_ = Eigen::VectorXd::Constant(u_dim, 1.0);
    h_lo_ = Eigen::VectorXd::Constant(h_dim, -1.0);
    h_hi_ = Eigen::VectorXd::Constant(h_dim, 1.0);
}

Normalizer Normalizer::fit(const SequenceDataset& data) {
    if (data.records.empty()) throw std::runtime_error("normalizer: empty dataset");
    Normalizer n(data.zeta_dim, data.u_dim, data.h_dim);
    const double inf = std::numeric_limits<double>::infinity();
    n.zeta_lo_.setConstant(inf);
    n.zeta_hi_.setConstant(-inf);
    n.u_lo_.setConstant(inf);
    n.u_hi_.setConstant(-inf);
    n.h_lo_.setConstant(inf);
    n.h_hi_.setConstant(-inf);
    for (const auto& rec : data.records) {
        n.zeta_lo_ = n.zeta_lo_.cwiseMin(rec.zeta_seq.colwise().minCoeff().transpose());
        n.zeta_hi_ = n.zeta_hi_.cwiseMax(rec.zeta_seq.colwise().maxCoeff().transpose());
        n.u_lo_ = n.u_lo_.cwiseMin(rec.u_seq.colwise().minCoeff().transpose());
        n.u_hi_ = n.u_hi_.cwiseMax(rec.u_seq.colwise().maxCoeff().transpose());
        n.h_lo_ = n.h_lo_.cwiseMin(rec.h_seq.colwise().minCoeff().transpose());
        n.h_hi_ = n.h_hi_.cwiseMax(rec.h_seq.colwise().maxCoeff().transpose());
    }
    return n;
}

Eigen::VectorXd Normalizer::fwd(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                                const Eigen::VectorXd& hi) {
    Eigen::VectorXd y = x;
    for (long i = 0; i < x.size(); ++i) {
        if (hi[i] > lo[i]) y[i] = 2.0 * (x[i] - lo[i]) / (hi[i] - lo[i]) - 1.0;
        // constant dimension passes through unscaled
    }
    return y;
}

Eigen::VectorXd Normalizer::inv(const Eigen::VectorXd& y, const Eigen::VectorXd& lo,
                                const Eigen::VectorXd& hi) {
    Eigen::VectorXd x = y;
    for (long i = 0; i < y.size(); ++i) {
        if (hi[i] > lo[i]) x[i] = lo[i] + 0.5 * (y[i] + 1.0) * (hi[i] - lo[i]);
    }
    return x;
}

Eigen::MatrixXd Normalizer::norm_h_rows(const Eigen::MatrixXd& m) const {
    Eigen::MatrixXd out = m;
    for (long r = 0; r < m.rows(); ++r) out.row(r) = norm_h(m.row(r).transpose()).transpose();
    return out;
}

Eigen::MatrixXd Normalizer::denorm_h_rows(const Eigen::MatrixXd& m) const {
    Eigen::MatrixXd out = m;
    for (long r = 0; r < m.rows(); ++r) out.row(r) = denorm_h(m.row(r).transpose()).transpose();
    return out;
}

void Normalizer::apply(SequenceDataset& data) const {
    for (auto& rec : data.records) {
        for (long r = 0; r < rec.zeta_seq.rows(); ++r) {
            rec.zeta_seq.row(r) = norm_zeta(rec.zeta_seq.row(r).transpose()).transpose();
            rec.u_seq.row(r) = norm_u(rec.u_seq.row(r).transpose()).transpose();
            rec.h_seq.row(r) = norm_h(rec.h_seq.row(r).transpose()).transpose();
        }
    }
}

int Normalizer::constant_dims() const {
    int n = 0;
    for (long i = 0; i < zeta_lo_.size(); ++i) n += (zeta_hi_[i] <= zeta_lo_[i]);
    for (long i = 0; i < u_lo_.size(); ++i) n += (u_hi_[i] <= u_lo_[i]);
    for (long i = 0; i < h_lo_.size(); ++i) n += (h_hi_[i] <= h_lo_[i]);
    return n;
}

namespace {
json vec_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (long i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}
Eigen::VectorXd vec_from_json(const json& a) {
    Eigen::VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[static_cast<long>(i)] = a[i].get<double>();
    return v;
}
}  // namespace

std::string Normalizer::to_json_string() const {
    json j;
    j["scheme"] = "minmax[-1,1]";
    j["zeta_lo"] = vec_to_json(zeta_lo_);
    j["zeta_hi"] = vec_to_json(zeta_hi_);
    j["u_lo"] = vec_to_json(u_lo_);
    j["u_hi"] = vec_to_json(u_hi_);
    j["h_lo"] = vec_to_json(h_lo_);
    j["h_hi"] = vec_to_json(h_hi_);
    return j.dump();
}

Normalizer Normalizer::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("scheme").get<std::string>() != "minmax[-1,1]")
        throw std::runtime_error("normalizer: unknown scheme");
    Normalizer n;
    n.zeta_lo_ = vec_from_json(j.at("zeta_lo"));
    n.zeta_hi_ = vec_from_json(j.at("zeta_hi"));
    n.u_lo_ = vec_from_json(j.at("u_lo"));
    n.u_hi_ = vec_from_json(j.at("u_hi"));
    n.h_lo_ = vec_from_json(j.at("h_lo"));
    n.h_hi_ = vec_from_json(j.at("h_hi"));
    return n;
}

bool operator==(const Normalizer& a, const Normalizer& b) {
    return a.zeta_lo_ == b.zeta_lo_ && a.zeta_hi_ == b.zeta_hi_ && a.u_lo_ == b.u_lo_ &&
           a.u_hi_ == b.u_hi_ && a.h_lo_ == b.h_lo_ && a.h_hi_ == b.h_hi_;
}

void save_dataset(const std::string& path, const SequenceDataset& data,
                  const std::string& meta_json) {
    data.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dataset: cannot open for writing: " + path);
    json header;
    header["schema"] = "seqdata-1";
    header["h_seq_len"] = data.h_seq_len;
    header["zeta_dim"] = data.zeta_dim;
    header["u_dim"] = data.u_dim;
    header["h_dim"] = data.h_dim;
    header["count"] = data.records.size();
    header["meta"] = json::parse(meta_json);
    out << header.dump() << '\n';
    std::vector<double> buf;
    for (const auto& rec : data.records) {
        buf.clear();
        for (long r = 0; r < rec.zeta_seq.rows(); ++r)
            for (long c = 0; c < rec.zeta_seq.cols(); ++c) buf.push_back(rec.zeta_seq(r, c));
        for (long r = 0; r < rec.u_seq.rows(); ++r)
            for (long c = 0; c < rec.u_seq.cols(); ++c) buf.push_back(rec.u_seq(r, c));
        for (long r = 0; r < rec.h_seq.rows(); ++r)
            for (long c = 0; c < rec.h_seq.cols(); ++c) buf.push_back(rec.h_seq(r, c));
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(double)));
    }
}

SequenceDataset load_dataset(const std::string& path, std::string* meta_json_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("dataset: cannot open: " + path);
    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("dataset: missing header");
    const json header = json::parse(header_line);
    if (header.at("schema").get<std::string>() != "seqdata-1")
        throw std::runtime_error("dataset: unsupported schema tag");
    SequenceDataset data;
    data.h_seq_len = header.at("h_seq_len").get<int>();
    data.zeta_dim = header.at("zeta_dim").get<int>();
    data.u_dim = header.at("u_dim").get<int>();
    data.h_dim = header.at("h_dim").get<int>();
    const size_t count = header.at("count").get<size_t>();
    if (meta_json_out) *meta_json_out = header.at("meta").dump();

    const int H = data.h_seq_len;
    const size_t per_record = static_cast<size_t>(H) * (data.zeta_dim + data.u_dim + data.h_dim);
    std::vector<double> buf(per_record);
    data.records.reserve(count);
    for (size_t k = 0; k < count; ++k) {
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(per_record * sizeof(double)));
        if (!in) throw std::runtime_error("dataset: truncated payload in " + path);
        SequenceRecord rec;
        rec.zeta_seq.resize(H, data.zeta_dim);
        rec.u_seq.resize(H, data.u_dim);
        rec.h_seq.resize(H, data.h_dim);
        size_t idx = 0;
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < data.zeta_dim; ++c) rec.zeta_seq(r, c) = buf[idx++];
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < data.u_dim; ++c) rec.u_seq(r, c) = buf[idx++];
        for (int r = 0; r < H; ++r)
            for (int c = 0; c < data.h_dim; ++c) rec.h_seq(r, c) = buf[idx++];
        data.records.push_back(std::move(rec));
    }
    return data;
}

void write_flight_log_csv(const std::string& path, const FlightLog& log) {
    CsvTable table;
    table.columns = {"t"};
    for (int i = 0; i < log.zeta_dim; ++i) table.columns.push_back("zeta_" + std::to_string(i));
    for (int i = 0; i < log.u_dim; ++i) table.columns.push_back("u_" + std::to_string(i));
    for (const auto& row : log.rows) {
        std::vector<double> r = {row.t};
        for (long i = 0; i < row.zeta.size(); ++i) r.push_back(row.zeta[i]);
        for (long i = 0; i < row.u.size(); ++i) r.push_back(row.u[i]);
        table.rows.push_back(std::move(r));
    }
    write_csv(path, table);
}

FlightLog read_flight_log_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    int zeta_dim = 0, u_dim = 0;
    for (const auto& c : table.columns) {
        if (c.rfind("zeta_", 0) == 0) ++zeta_dim;
        if (c.rfind("u_", 0) == 0) ++u_dim;
    }
    if (zeta_dim == 0 || u_dim == 0)
        throw std::runtime_error("flight log: need zeta_* and u_* columns in " + path);
    FlightLog log;
    log.zeta_dim = zeta_dim;
    log.u_dim = u_dim;
    const int it = table.column_index("t");
    const int iz = table.column_index("zeta_0");
    const int iu = table.column_index("u_0");
    for (const auto& r : table.rows) {
        FlightLogRow row;
        row.t = r[it];
        row.zeta = Eigen::Map<const Eigen::VectorXd>(r.data() + iz, zeta_dim);
        row.u = Eigen::Map<const Eigen::VectorXd>(r.data() + iu, u_dim);
        log.rows.push_back(std::move(row));
    }
    return log;
}

}  // namespace resdyn
