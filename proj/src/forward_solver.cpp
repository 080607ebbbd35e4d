#include "fracwave/forward_solver.hpp"

#include <cmath>
#include <string>

#include "fracwave/error.hpp"
#include "fracwave/gamma.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/product_integration.hpp"

namespace fracwave {

using detail::require;

namespace {

double ml_with_context(double alpha, double beta, double z, int n, double t) {
  try {
    return ml(alpha, beta, z);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " [mode " + std::to_string(n + 1) +
                         ", t = " + std::to_string(t) + "]");
  }
}

void check_alpha_open(double alpha) {
  require(alpha > 1.0 && alpha < 2.0, "alpha must lie in (1, 2) for the inhomogeneous problem");
}

}  // namespace

void HomogeneousProblem::validate() const {
  require(es != nullptr, "problem has no eigensystem");
  require(alpha > 1.0 && alpha <= 2.0, "alpha must lie in (1, 2]");
  check_field(u0, *es);
  check_field(u1, *es);
}

SpectralField solve_homogeneous_at(const HomogeneousProblem& p, double t) {
  p.validate();
  require(t >= 0.0 && std::isfinite(t), "time must be >= 0");
  const Eigensystem& es = *p.es;
  if (t == 0.0) return p.u0;
  SpectralField u(es.size());
  const double ta = std::pow(t, p.alpha);
  for (int n = 0; n < es.size(); ++n) {
    const double z = -es.lambda(n) * ta;
    double v = 0.0;
    if (p.u0[n] != 0.0) v += ml_with_context(p.alpha, 1.0, z, n, t) * p.u0[n];
    if (p.u1[n] != 0.0) v += t * ml_with_context(p.alpha, 2.0, z, n, t) * p.u1[n];
    u[n] = v;
  }
  return u;
}

CoefficientHistory solve_homogeneous(const HomogeneousProblem& p, const TimeGrid& grid) {
  p.validate();
  CoefficientHistory h(grid.size(), p.es->size());
  for (int k = 0; k < grid.size(); ++k) h.row(k) = solve_homogeneous_at(p, grid[k]).transpose();
  return h;
}

Eigen::VectorXd duhamel_mode(double lambda, double alpha, const Eigen::VectorXd& rho,
                             const TimeGrid& grid) {
  require(lambda >= 0.0, "eigenvalue must be >= 0");
  check_alpha_open(alpha);
  require(rho.size() == grid.size(), "rho sample count does not match the time grid");
  require(rho.allFinite(), "rho has non-finite samples");
  // int (t-s)^{a-1} E_{a,a}(-lambda (t-s)^a) = t^a E_{a,a+1}(-lambda t^a), and once more
  // t^{a+1} E_{a,a+2}(-lambda t^a).
  auto moments = [lambda, alpha](double tau) {
    const double ta = std::pow(tau, alpha);
    return Moments{ta * ml(alpha, alpha + 1.0, -lambda * ta),
                   ta * tau * ml(alpha, alpha + 2.0, -lambda * ta)};
  };
  return ConvolutionWeights(grid, moments).apply(rho);
}

CoefficientHistory solve_inhomogeneous(const SeparatedSource& src, const Eigensystem& es,
                                       double alpha, const TimeGrid& grid) {
  check_alpha_open(alpha);
  check_field(src.f, es);
  require(src.rho.size() == grid.size(), "rho sample count does not match the time grid");
  CoefficientHistory h = CoefficientHistory::Zero(grid.size(), es.size());
  if (src.rho.isZero(0.0)) return h;
  for (int n = 0; n < es.size(); ++n) {
    if (src.f[n] == 0.0) continue;
    try {
      h.col(n) = duhamel_mode(es.lambda(n), alpha, src.rho, grid) * src.f[n];
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " [mode " + std::to_string(n + 1) + "]");
    }
  }
  return h;
}

CoefficientHistory solve_inhomogeneous(const Eigen::MatrixXd& modal_source, const Eigensystem& es,
                                       double alpha, const TimeGrid& grid) {
  check_alpha_open(alpha);
  require(modal_source.rows() == grid.size() && modal_source.cols() == es.size(),
          "modal source must be (grid nodes) x (modes)");
  CoefficientHistory h = CoefficientHistory::Zero(grid.size(), es.size());
  for (int n = 0; n < es.size(); ++n) {
    if (modal_source.col(n).isZero(0.0)) continue;
    h.col(n) = duhamel_mode(es.lambda(n), alpha, modal_source.col(n), grid);
  }
  return h;
}

Eigen::VectorXd rl_integral(double beta, const Eigen::VectorXd& samples, const TimeGrid& grid) {
  require(beta > 0.0 && beta <= 1.0, "rl_integral needs beta in (0, 1]");
  require(samples.size() == grid.size(), "sample count does not match the time grid");
  const double g1 = rgamma(beta + 1.0), g2 = rgamma(beta + 2.0);
  auto moments = [beta, g1, g2](double tau) {
    const double tb = std::pow(tau, beta);
    return Moments{tb * g1, tb * tau * g2};
  };
  return ConvolutionWeights(grid, moments).apply(samples);
}

PointTrajectory observe(const CoefficientHistory& history, double x0, const Eigensystem& es,
                        const TimeGrid& grid) {
  require(history.rows() == grid.size() && history.cols() == es.size(),
          "history shape does not match grid and eigensystem");
  require(es.domain().contains(x0), "observation point outside the domain");
  const Eigen::VectorXd phi = es.phi_at(x0);
  Eigen::VectorXd values(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    double s = 0.0;
    for (int n = 0; n < es.size(); ++n) s += history(k, n) * phi[n];
    values[k] = s;
  }
  return PointTrajectory{x0, grid, std::move(values)};
}

}  // namespace fracwave
