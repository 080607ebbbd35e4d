#pragma once

#include <Eigen/Dense>
#include <memory>

#include "fracwave/eigensystem.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

/// Row k holds the SpectralField u(., t_k); columns are modes.
using CoefficientHistory = Eigen::MatrixXd;

/// (d_t^alpha + A) u = 0, u(0) = u0, u_t(0) = u1.
struct HomogeneousProblem {
  std::shared_ptr<const Eigensystem> es;
  double alpha;  ///< (1, 2]; 2 is the classical wave equation
  SpectralField u0;
  SpectralField u1;

  /// Throws std::invalid_argument on a bad order or mismatched fields.
  void validate() const;
};

/// Source rho(t) f(x), rho piecewise-linear between its samples.
struct SeparatedSource {
  Eigen::VectorXd rho;
  SpectralField f;
};

struct PointTrajectory {
  double x0;
  TimeGrid grid;
  Eigen::VectorXd values;
};

/// u_n(t) = E_{a,1}(-lambda_n t^a) u0_n + t E_{a,2}(-lambda_n t^a) u1_n on every node.
CoefficientHistory solve_homogeneous(const HomogeneousProblem& p, const TimeGrid& grid);

/// Same formula at a single time.
SpectralField solve_homogeneous_at(const HomogeneousProblem& p, double t);

/// Zero-data problem with source rho(t) f. Mode n is mu_n(t) f_n with
/// mu_n(t) = int_0^t (t-s)^{a-1} E_{a,a}(-lambda_n (t-s)^a) rho(s) ds,
/// integrated exactly for piecewise-linear rho. alpha in (1, 2).
CoefficientHistory solve_inhomogeneous(const SeparatedSource& src, const Eigensystem& es,
                                       double alpha, const TimeGrid& grid);

/// General source given by its per-mode samples F(k, n) = (F(., t_k), phi_n).
CoefficientHistory solve_inhomogeneous(const Eigen::MatrixXd& modal_source, const Eigensystem& es,
                                       double alpha, const TimeGrid& grid);

/// mu(t_k) for a single eigenvalue (lambda may be any value >= 0).
Eigen::VectorXd duhamel_mode(double lambda, double alpha, const Eigen::VectorXd& rho,
                             const TimeGrid& grid);

/// Riemann-Liouville integral J^beta, beta in (0, 1], exact for piecewise-linear samples.
Eigen::VectorXd rl_integral(double beta, const Eigen::VectorXd& samples, const TimeGrid& grid);

/// values[k] = evaluate_at(history.row(k), x0).
PointTrajectory observe(const CoefficientHistory& history, double x0, const Eigensystem& es,
                        const TimeGrid& grid);

}  // namespace fracwave
