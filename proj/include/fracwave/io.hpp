#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "fracwave/asymptotics.hpp"
#include "fracwave/eigensystem.hpp"
#include "fracwave/forward_solver.hpp"
#include "fracwave/inverse_source.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

const char* version();

/// FNV-1a 64 of the compact dump of j (nlohmann orders object keys, so the
/// hash does not depend on key order in the source file).
std::string config_hash(const nlohmann::json& j);

/// Provenance stamped into every output file.
struct RunStamp {
  std::string config_hash;
  std::string version = fracwave::version();
};

nlohmann::json to_json(const Eigensystem& es);
nlohmann::json to_json(const TimeGrid& grid);
nlohmann::json to_json(const AsymptoticsReport& r);
nlohmann::json to_json(const DeconvolutionResult& r, const TimeGrid& grid);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

/// CSV with a '# fracwave <version> config_hash=<hash>' line, then a header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const RunStamp& stamp, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  size_t columns_;
};

void write_history_csv(std::ostream& os, const RunStamp& stamp, const TimeGrid& grid,
                       const CoefficientHistory& history);
void write_trajectory_csv(std::ostream& os, const RunStamp& stamp, const PointTrajectory& traj);

/// Two-column (t, value) CSV; '#' lines and a non-numeric header row are skipped.
/// Throws std::runtime_error on malformed rows.
void read_series_csv(std::istream& is, Eigen::VectorXd& t, Eigen::VectorXd& values);

}  // namespace fracwave
