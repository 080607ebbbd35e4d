#pragma once

#include <Eigen/Dense>
#include <string>

namespace fracwave {

/// Strictly increasing nodes 0 = t_0 < t_1 < ... < t_K = T.
class TimeGrid {
 public:
  enum class Kind { uniform, graded, custom };

  static TimeGrid uniform(double T, int K);
  /// t_k = (k/K)^gamma T, clustering nodes toward t = 0.
  static TimeGrid graded(double T, int K, double gamma = 2.0);
  static TimeGrid from_nodes(Eigen::VectorXd nodes);

  int size() const { return static_cast<int>(t_.size()); }  ///< K + 1
  int intervals() const { return size() - 1; }
  double operator[](int k) const { return t_[k]; }
  const Eigen::VectorXd& nodes() const { return t_; }
  double horizon() const { return t_[t_.size() - 1]; }
  Kind kind() const { return kind_; }
  double grading() const { return grading_; }
  /// Uniform spacing to relative 1e-12 (also detects uniform custom grids).
  bool is_uniform() const;
  /// Step of a uniform grid; throws otherwise.
  double step() const;
  std::string describe() const;

  bool operator==(const TimeGrid& o) const;

 private:
  TimeGrid(Eigen::VectorXd t, Kind kind, double grading);
  Eigen::VectorXd t_;
  Kind kind_;
  double grading_;
};

std::string kind_name(TimeGrid::Kind k);

}  // namespace fracwave
