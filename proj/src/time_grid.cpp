#include "fracwave/time_grid.hpp"

#include <cmath>
#include <sstream>

#include "fracwave/error.hpp"

namespace fracwave {

using detail::require;

TimeGrid::TimeGrid(Eigen::VectorXd t, Kind kind, double grading)
    : t_(std::move(t)), kind_(kind), grading_(grading) {
  require(t_.size() >= 2, "time grid needs at least two nodes");
  require(t_[0] == 0.0, "time grid must start at t = 0");
  for (int k = 1; k < t_.size(); ++k)
    require(std::isfinite(t_[k]) && t_[k] > t_[k - 1], "time grid nodes must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double T, int K) {
  require(T > 0.0 && std::isfinite(T), "horizon must be positive");
  require(K >= 1, "need at least one interval");
  Eigen::VectorXd t(K + 1);
  for (int k = 0; k <= K; ++k) t[k] = T * k / K;
  return TimeGrid(std::move(t), Kind::uniform, 1.0);
}

TimeGrid TimeGrid::graded(double T, int K, double gamma) {
  require(T > 0.0 && std::isfinite(T), "horizon must be positive");
  require(K >= 1, "need at least one interval");
  require(gamma >= 1.0, "grading exponent must be >= 1");
  Eigen::VectorXd t(K + 1);
  for (int k = 0; k <= K; ++k) t[k] = T * std::pow(static_cast<double>(k) / K, gamma);
  return TimeGrid(std::move(t), gamma == 1.0 ? Kind::uniform : Kind::graded, gamma);
}

TimeGrid TimeGrid::from_nodes(Eigen::VectorXd nodes) {
  return TimeGrid(std::move(nodes), Kind::custom, 0.0);
}

bool TimeGrid::is_uniform() const {
  if (kind_ == Kind::uniform) return true;
  const double h = horizon() / intervals();
  for (int k = 1; k < size(); ++k)
    if (std::abs(t_[k] - t_[k - 1] - h) > 1e-12 * horizon()) return false;
  return true;
}

double TimeGrid::step() const {
  if (!is_uniform()) throw std::invalid_argument("time grid is not uniform");
  return horizon() / intervals();
}

std::string TimeGrid::describe() const {
  std::ostringstream os;
  os << kind_name(kind_) << " K=" << intervals() << " T=" << horizon();
  if (kind_ == Kind::graded) os << " gamma=" << grading_;
  return os.str();
}

bool TimeGrid::operator==(const TimeGrid& o) const {
  return t_.size() == o.t_.size() && t_ == o.t_;
}

std::string kind_name(TimeGrid::Kind k) {
  switch (k) {
    case TimeGrid::Kind::uniform: return "uniform";
    case TimeGrid::Kind::graded: return "graded";
    case TimeGrid::Kind::custom: return "custom";
  }
  return "?";
}

}  // namespace fracwave
