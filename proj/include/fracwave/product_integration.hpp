#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fracwave/time_grid.hpp"

namespace fracwave {

/// First and second antiderivatives of a convolution kernel k:
/// first(tau) = int_0^tau k, second(tau) = int_0^tau first; both vanish at 0.
struct Moments {
  double first;
  double second;
};
using KernelMoments = std::function<Moments(double)>;

/// Lower-triangular weights W with (W rho)_k = int_0^{t_k} k(t_k - s) rho(s) ds
/// exactly for piecewise-linear rho on the grid. Moments of the whole kernel
/// against the hat functions are used, so the weak singularity and any
/// oscillation of k are integrated exactly. On a uniform grid W is Toeplitz and
/// only the lag sequence is stored.
class ConvolutionWeights {
 public:
  ConvolutionWeights(const TimeGrid& grid, const KernelMoments& moments);

  Eigen::VectorXd apply(const Eigen::VectorXd& samples) const;
  double weight(int k, int j) const;
  Eigen::MatrixXd dense() const;
  const TimeGrid& grid() const { return grid_; }

  /// this + c * other, same grid.
  void add_scaled(const ConvolutionWeights& other, double c);

 private:
  TimeGrid grid_;
  bool toeplitz_;
  Eigen::VectorXd left_;   // P_m: weight of the left node of an interval at lag m
  Eigen::VectorXd right_;  // Q_m: weight of the right node
  Eigen::MatrixXd w_;      // non-uniform grids
};

}  // namespace fracwave
