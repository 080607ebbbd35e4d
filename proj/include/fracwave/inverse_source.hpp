#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/eigensystem.hpp"
#include "fracwave/forward_solver.hpp"
#include "fracwave/product_integration.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

/// k(t) = v(x0, t) where v solves the homogeneous problem with v(0) = 0,
/// v_t(0) = f, i.e. k(t) = sum_n c_n t E_{a,2}(-lambda_n t^a), c_n = f_n phi_n(x0).
struct DuhamelKernel {
  TimeGrid grid;
  Eigen::VectorXd k;
  double x0;
  SpectralField f;
  double alpha;
  Eigen::VectorXd lambdas;
  Eigen::VectorXd modal_weights;  ///< c_n
  double kinv_value;              ///< A^{-1}f(x0)
  bool kinv_nonzero_check;        ///< |A^{-1}f(x0)| > 1e-10 ||f||
  double value_scale;             ///< sum |f_n| sup|phi_n|, what f(x0) is measured against
  std::shared_ptr<const ConvolutionWeights> weights;  ///< product-integration weights of k
};

/// x0 must be interior; alpha in (1, 2] (2 only as an anchor, deconvolve needs alpha < 2).
DuhamelKernel duhamel_kernel(const Eigensystem& es, const SpectralField& f, double alpha, double x0,
                             const TimeGrid& grid);

/// (k * rho)(t_k), exact for piecewise-linear rho.
Eigen::VectorXd forward_convolve(const DuhamelKernel& kernel, const Eigen::VectorXd& rho);

struct DeconvolveOptions {
  /// Relative floor for the support onset of rho_hat.
  double onset_floor = 1e-3;
  /// Morozov factor: residual target = tau * propagated noise norm.
  double discrepancy_tau = 1.0;
};

struct DeconvolutionResult {
  Eigen::VectorXd rho_hat;  ///< on every grid node
  double residual_l2 = 0.0;
  double reg_param = 0.0;
  double support_onset_estimate = 0.0;
  double noise_estimate = 0.0;  ///< propagated noise norm in J^{2-a}u (discrepancy path)
  std::vector<std::string> warnings;
};

/// Lower-triangular system for k * rho = g on a uniform grid: BDF2 convolution
/// quadrature of the kernel's Laplace transform, plus two starting weights per
/// row that make rho = 1 and rho = t exact.
Eigen::MatrixXd deconvolution_matrix(const DuhamelKernel& kernel);

/// Solve k * rho = J^{2-a} observation. reg_param = 0: forward substitution;
/// reg_param > 0: Tikhonov with first-difference penalty.
DeconvolutionResult deconvolve(const DuhamelKernel& kernel, const PointTrajectory& observation,
                               double reg_param, const DeconvolveOptions& opts = {});

/// Same solve for data g = J^{2-a}u already formed (the left side of the
/// Duhamel identity), e.g. g = forward_convolve(kernel, rho).
DeconvolutionResult solve_duhamel(const DuhamelKernel& kernel, const Eigen::VectorXd& g,
                                  double reg_param, const DeconvolveOptions& opts = {});

/// Tikhonov with reg_param from the discrepancy principle, for observations
/// carrying uniform relative noise of amplitude noise_level.
DeconvolutionResult deconvolve_discrepancy(const DuhamelKernel& kernel,
                                           const PointTrajectory& observation, double noise_level,
                                           const DeconvolveOptions& opts = {});

/// 1e-6 ||K||_F^2, the regularization used when no noise estimate is supplied.
double default_reg_param(const DuhamelKernel& kernel);

/// Smallest t_k with |samples_k| > floor * max|samples|; T if none.
double titchmarsh_onset(const Eigen::VectorXd& samples, const TimeGrid& grid, double floor);

}  // namespace fracwave
