#include "fracwave/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracwave {

const char* version() { return "0.1.0"; }

std::string config_hash(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

nlohmann::json vec(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace

nlohmann::json to_json(const Eigensystem& es) {
  nlohmann::json j;
  j["provider"] = es.provider();
  j["modes"] = es.size();
  j["lambdas"] = vec(es.lambdas());
  j["domain"] = {es.domain().lo, es.domain().hi};
  j["quadrature_nodes"] = es.quadrature_nodes().size();
  for (const auto& [k, v] : es.metadata()) j["mesh"][k] = v;
  return j;
}

nlohmann::json to_json(const TimeGrid& grid) {
  nlohmann::json j{{"kind", kind_name(grid.kind())}, {"intervals", grid.intervals()}, {"T", grid.horizon()}};
  if (grid.kind() == TimeGrid::Kind::graded) j["grading"] = grid.grading();
  return j;
}

nlohmann::json to_json(const AsymptoticsReport& r) {
  nlohmann::json j;
  j["fitted_norm_slope"] = number_or_null(r.fitted_norm_slope);
  j["fitted_remainder_slope"] = number_or_null(r.fitted_remainder_slope);
  j["empirical_constant"] = number_or_null(r.empirical_constant);
  j["sign_onset"] = r.sign_onset ? nlohmann::json(*r.sign_onset) : nlohmann::json();
  j["stabilized_sign"] = r.stabilized_sign == 0 ? nlohmann::json() : nlohmann::json(r.stabilized_sign);
  j["sign_change_count"] = r.sign_change_count;
  j["window"] = {r.window[0], r.window[1]};
  j["sign_case"] = r.sign_case;
  j["predicted_sign"] = r.predicted_sign;
  j["sign_agrees"] = r.sign_agrees;
  j["leading_dominance"] = number_or_null(r.leading_dominance);
  return j;
}

nlohmann::json to_json(const DeconvolutionResult& r, const TimeGrid& grid) {
  nlohmann::json j;
  j["grid"] = to_json(grid);
  j["residual_l2"] = r.residual_l2;
  j["reg_param"] = r.reg_param;
  j["support_onset_estimate"] = r.support_onset_estimate;
  j["noise_estimate"] = r.noise_estimate;
  j["warnings"] = r.warnings;
  j["rho_hat"] = vec(r.rho_hat);
  return j;
}

CsvWriter::CsvWriter(std::ostream& os, const RunStamp& stamp, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
  os_ << "# fracwave " << stamp.version << " config_hash=" << stamp.config_hash << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CSV row width mismatch");
  for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void write_history_csv(std::ostream& os, const RunStamp& stamp, const TimeGrid& grid,
                       const CoefficientHistory& history) {
  std::vector<std::string> header{"t"};
  for (int n = 0; n < history.cols(); ++n) header.push_back("coeff_" + std::to_string(n + 1));
  CsvWriter w(os, stamp, header);
  for (int k = 0; k < grid.size(); ++k) {
    std::vector<double> r{grid[k]};
    for (int n = 0; n < history.cols(); ++n) r.push_back(history(k, n));
    w.row(r);
  }
}

void write_trajectory_csv(std::ostream& os, const RunStamp& stamp, const PointTrajectory& traj) {
  CsvWriter w(os, stamp, {"t", "value"});
  for (int k = 0; k < traj.grid.size(); ++k) w.row({traj.grid[k], traj.values[k]});
}

void read_series_csv(std::istream& is, Eigen::VectorXd& t, Eigen::VectorXd& values) {
  std::vector<double> ts, vs;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected two columns");
    double a, b;
    const std::string sa = line.substr(0, comma), sb = line.substr(comma + 1);
    auto pa = std::from_chars(sa.data(), sa.data() + sa.size(), a);
    auto pb = std::from_chars(sb.data(), sb.data() + sb.size(), b);
    const bool ok = pa.ec == std::errc() && pa.ptr == sa.data() + sa.size() && pb.ec == std::errc() &&
                    pb.ptr == sb.data() + sb.size();
    if (!ok) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw std::runtime_error("line " + std::to_string(lineno) + ": not a (t, value) pair");
    }
    header_allowed = false;
    ts.push_back(a);
    vs.push_back(b);
  }
  if (ts.empty()) throw std::runtime_error("no data rows");
  t = Eigen::Map<Eigen::VectorXd>(ts.data(), ts.size());
  values = Eigen::Map<Eigen::VectorXd>(vs.data(), vs.size());
}

}  // namespace fracwave
