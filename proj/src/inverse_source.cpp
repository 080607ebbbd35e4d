#include "fracwave/inverse_source.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fracwave/error.hpp"
#include "fracwave/gamma.hpp"
#include "fracwave/mittag_leffler.hpp"

namespace fracwave {

using detail::require;

DuhamelKernel duhamel_kernel(const Eigensystem& es, const SpectralField& f, double alpha, double x0,
                             const TimeGrid& grid) {
  check_field(f, es);
  require(alpha > 1.0 && alpha <= 2.0, "alpha must lie in (1, 2]");
  require(es.domain().contains(x0), "observation point outside the domain");
  if (es.domain().on_boundary(x0))
    throw std::invalid_argument("observation point on the boundary: the kernel vanishes identically");

  auto es_ref = std::shared_ptr<const Eigensystem>(&es, [](const Eigensystem*) {});
  HomogeneousProblem p{es_ref, alpha, SpectralField::Zero(es.size()), f};
  const PointTrajectory tr = observe(solve_homogeneous(p, grid), x0, es, grid);

  const Eigen::VectorXd c = f.cwiseProduct(es.phi_at(x0));
  const double kinv = evaluate_at(apply_inverse_A(f, es), x0, es);
  const Eigen::VectorXd lambdas = es.lambdas();

  // int_0^tau s E_{a,2}(-lambda s^a) ds = tau^2 E_{a,3}(-lambda tau^a), then tau^3 E_{a,4}.
  auto moments = [c, lambdas, alpha](double tau) {
    Moments m{0.0, 0.0};
    const double ta = std::pow(tau, alpha);
    for (int n = 0; n < c.size(); ++n) {
      if (c[n] == 0.0) continue;
      m.first += c[n] * tau * tau * ml(alpha, 3.0, -lambdas[n] * ta);
      m.second += c[n] * tau * tau * tau * ml(alpha, 4.0, -lambdas[n] * ta);
    }
    return m;
  };
  auto weights = std::make_shared<const ConvolutionWeights>(grid, moments);

  const double value_scale = es.basis().cwiseAbs().colwise().maxCoeff().dot(f.cwiseAbs().transpose());
  return DuhamelKernel{grid,  tr.values, x0,   f, alpha, lambdas, c, kinv,
                       std::abs(kinv) > 1e-10 * f.norm(), value_scale, std::move(weights)};
}

Eigen::VectorXd forward_convolve(const DuhamelKernel& kernel, const Eigen::VectorXd& rho) {
  require(rho.size() == kernel.grid.size(), "rho does not live on the kernel grid");
  return kernel.weights->apply(rho);
}

namespace {

// Weights omega_m of the BDF2 convolution quadrature for the Laplace transform
// sum_n c_n s^{a-2} / (s^a + lambda_n), by a scaled DFT on a circle of radius r.
Eigen::VectorXd cq_weights(const DuhamelKernel& kernel, int K, double h) {
  using cd = std::complex<double>;
  const int L = 4 * K;
  const double r = std::pow(1e-15, 1.0 / (2.0 * L));
  const double a = kernel.alpha;
  const double pi = std::numbers::pi;

  std::vector<cd> vals(L);
  for (int l = 0; l < L; ++l) {
    const cd zeta = std::polar(r, 2.0 * pi * l / L);
    const cd d = 1.0 - zeta;
    const cd s = (d + 0.5 * d * d) / h;
    const cd sa = std::pow(s, a), sa2 = std::pow(s, a - 2.0);
    cd v = 0.0;
    for (int n = 0; n < kernel.modal_weights.size(); ++n) {
      if (kernel.modal_weights[n] == 0.0) continue;
      v += kernel.modal_weights[n] * sa2 / (sa + kernel.lambdas[n]);
    }
    vals[l] = v;
  }
  Eigen::VectorXd w(K + 1);
  for (int m = 0; m <= K; ++m) {
    cd acc = 0.0;
    for (int l = 0; l < L; ++l) acc += vals[l] * std::polar(1.0, -2.0 * pi * (static_cast<long>(l) * m % L) / L);
    w[m] = (acc / static_cast<double>(L)).real() * std::pow(r, -m);
  }
  return w;
}

void check_uniform(const DuhamelKernel& kernel) {
  if (!kernel.grid.is_uniform())
    throw std::invalid_argument("deconvolution needs a uniform time grid");
  require(kernel.alpha < 2.0, "deconvolution needs alpha < 2");
}

Eigen::VectorXd forward_substitute(const Eigen::MatrixXd& Kc, const Eigen::VectorXd& g, double h) {
  const int n = static_cast<int>(g.size());
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
  if (n < 3) {
    // too short for the two-row start; take rho constant
    const double d = Kc.row(n - 1).sum();
    if (d == 0.0) throw NumericalError("singular leading kernel weight");
    rho.setConstant(g[n - 1] / d);
    return rho;
  }
  // Rows 1 and 2 with rho = a + b t on [0, 2h].
  Eigen::Matrix2d B;
  Eigen::Vector2d rhs(g[1], g[2]);
  for (int r = 1; r <= 2; ++r) {
    B(r - 1, 0) = Kc(r, 0) + Kc(r, 1) + Kc(r, 2);
    B(r - 1, 1) = Kc(r, 1) * h + Kc(r, 2) * 2.0 * h;
  }
  const Eigen::Vector2d ab = B.partialPivLu().solve(rhs);
  for (int j = 0; j < 3; ++j) rho[j] = ab[0] + ab[1] * j * h;
  for (int k = 3; k < n; ++k) {
    double s = g[k];
    for (int j = 0; j < k; ++j) s -= Kc(k, j) * rho[j];
    rho[k] = s / Kc(k, k);
  }
  return rho;
}

Eigen::VectorXd tikhonov(const Eigen::MatrixXd& KtK, const Eigen::MatrixXd& DtD,
                         const Eigen::VectorXd& Ktg, double mu) {
  Eigen::LLT<Eigen::MatrixXd> llt(KtK + mu * DtD);
  if (llt.info() != Eigen::Success)
    throw NumericalError("regularized normal equations are not positive definite (reg_param = " +
                         std::to_string(mu) + ")");
  Eigen::VectorXd x = llt.solve(Ktg);
  if (!x.allFinite()) throw NumericalError("regularized solve did not converge");
  return x;
}

Eigen::MatrixXd first_difference(int n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n - 1, n);
  for (int i = 0; i + 1 < n; ++i) {
    D(i, i) = -1.0;
    D(i, i + 1) = 1.0;
  }
  return D;
}

struct Prepared {
  Eigen::MatrixXd Kc;
  Eigen::VectorXd g;
  std::vector<std::string> warnings;
};

DeconvolutionResult finish(const Prepared& p, Eigen::VectorXd rho, double mu, const TimeGrid& grid,
                           const DeconvolveOptions& opts) {
  DeconvolutionResult res;
  res.residual_l2 = (p.Kc * rho - p.g).norm();
  res.reg_param = mu;
  res.support_onset_estimate = titchmarsh_onset(rho, grid, opts.onset_floor);
  res.rho_hat = std::move(rho);
  res.warnings = p.warnings;
  return res;
}

Prepared prepare_data(const DuhamelKernel& kernel, Eigen::VectorXd g) {
  check_uniform(kernel);
  require(g.size() == kernel.grid.size(), "data is not on the kernel grid");
  require(g.allFinite(), "data has non-finite values");
  Prepared p;
  if (!kernel.kinv_nonzero_check)
    p.warnings.push_back("A^{-1}f(x0) is numerically zero; uniqueness is not guaranteed");
  p.Kc = deconvolution_matrix(kernel);
  p.g = std::move(g);
  return p;
}

Prepared prepare(const DuhamelKernel& kernel, const PointTrajectory& obs) {
  check_uniform(kernel);
  require(obs.grid == kernel.grid, "observation is not on the kernel grid");
  require(obs.values.allFinite(), "observation has non-finite values");
  return prepare_data(kernel, rl_integral(2.0 - kernel.alpha, obs.values, obs.grid));
}

DeconvolutionResult solve_prepared(const Prepared& p, const TimeGrid& grid, double reg_param,
                                   const DeconvolveOptions& opts) {
  require(reg_param >= 0.0 && std::isfinite(reg_param), "reg_param must be >= 0");
  if (reg_param == 0.0) return finish(p, forward_substitute(p.Kc, p.g, grid.step()), 0.0, grid, opts);
  const Eigen::MatrixXd D = first_difference(grid.size());
  const Eigen::VectorXd x =
      tikhonov(p.Kc.transpose() * p.Kc, D.transpose() * D, p.Kc.transpose() * p.g, reg_param);
  return finish(p, x, reg_param, grid, opts);
}

}  // namespace

Eigen::MatrixXd deconvolution_matrix(const DuhamelKernel& kernel) {
  check_uniform(kernel);
  const TimeGrid& grid = kernel.grid;
  const int K = grid.intervals();
  const double h = grid.step();
  const double a = kernel.alpha;
  const Eigen::VectorXd w = cq_weights(kernel, K, h);

  // w_0 ~ h^2 f(x0) / 2; f(x0) at roundoff level means no usable leading weight
  if (!(std::abs(w[0]) > 1e-10 * h * h * kernel.value_scale))
    throw NumericalError(
        "singular leading kernel weight: k(t)/t -> f(x0) vanishes (Titchmarsh-degenerate kernel)");

  // Exact k * 1 and k * t at the nodes.
  Eigen::VectorXd c1(K + 1), ct(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double t = grid[k], ta = std::pow(t, a);
    double m1 = 0.0, m2 = 0.0;
    for (int n = 0; n < kernel.modal_weights.size(); ++n) {
      const double cn = kernel.modal_weights[n];
      if (cn == 0.0 || t == 0.0) continue;
      m1 += cn * t * t * ml(a, 3.0, -kernel.lambdas[n] * ta);
      m2 += cn * t * t * t * ml(a, 4.0, -kernel.lambdas[n] * ta);
    }
    double s1 = 0.0, st = 0.0;
    for (int j = 0; j <= k; ++j) {
      s1 += w[k - j];
      st += w[k - j] * grid[j];
    }
    c1[k] = m1 - s1;
    ct[k] = m2 - st;
  }

  Eigen::MatrixXd Kc = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (int k = 1; k <= K; ++k) {
    for (int j = 0; j <= k; ++j) Kc(k, j) = w[k - j];
    const double s1 = ct[k] / h;
    Kc(k, 0) += c1[k] - s1;
    Kc(k, 1) += s1;
  }
  return Kc;
}

DeconvolutionResult deconvolve(const DuhamelKernel& kernel, const PointTrajectory& observation,
                               double reg_param, const DeconvolveOptions& opts) {
  require(reg_param >= 0.0 && std::isfinite(reg_param), "reg_param must be >= 0");
  return solve_prepared(prepare(kernel, observation), kernel.grid, reg_param, opts);
}

DeconvolutionResult solve_duhamel(const DuhamelKernel& kernel, const Eigen::VectorXd& g,
                                  double reg_param, const DeconvolveOptions& opts) {
  require(reg_param >= 0.0 && std::isfinite(reg_param), "reg_param must be >= 0");
  return solve_prepared(prepare_data(kernel, g), kernel.grid, reg_param, opts);
}

DeconvolutionResult deconvolve_discrepancy(const DuhamelKernel& kernel,
                                           const PointTrajectory& observation, double noise_level,
                                           const DeconvolveOptions& opts) {
  require(noise_level >= 0.0 && std::isfinite(noise_level), "noise level must be >= 0");
  const Prepared p = prepare(kernel, observation);
  const TimeGrid& grid = kernel.grid;

  // Uniform relative noise of amplitude e has standard deviation e|u|/sqrt(3);
  // push it through the J^{2-a} weights.
  const Eigen::MatrixXd J = ConvolutionWeights(grid, [b = 2.0 - kernel.alpha](double tau) {
                              const double tb = std::pow(tau, b);
                              return Moments{tb * rgamma(b + 1.0), tb * tau * rgamma(b + 2.0)};
                            }).dense();
  const Eigen::VectorXd sigma = noise_level / std::sqrt(3.0) * observation.values.cwiseAbs();
  const double delta = std::sqrt((J.array().square().matrix() * sigma.array().square().matrix()).sum());
  const double target = opts.discrepancy_tau * delta;

  const Eigen::MatrixXd D = first_difference(grid.size());
  const Eigen::MatrixXd KtK = p.Kc.transpose() * p.Kc, DtD = D.transpose() * D;
  const Eigen::VectorXd Ktg = p.Kc.transpose() * p.g;
  const double knorm2 = p.Kc.squaredNorm();

  auto residual = [&](double log_mu, Eigen::VectorXd& x) {
    x = tikhonov(KtK, DtD, Ktg, knorm2 * std::pow(10.0, log_mu));
    return (p.Kc * x - p.g).norm();
  };

  // Residual grows with mu; bisect log10(mu / ||K||^2) for residual = target.
  double lo = -16.0, hi = 2.0;
  Eigen::VectorXd x;
  if (residual(lo, x) > target) {
    hi = lo;
  } else if (residual(hi, x) <= target) {
    lo = hi;
  } else {
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (residual(mid, x) > target) hi = mid;
      else lo = mid;
    }
  }
  residual(lo, x);
  DeconvolutionResult res = finish(p, x, knorm2 * std::pow(10.0, lo), grid, opts);
  res.noise_estimate = delta;
  if (lo == hi) res.warnings.push_back("discrepancy target outside the searched reg_param range");
  return res;
}

double default_reg_param(const DuhamelKernel& kernel) {
  return 1e-6 * deconvolution_matrix(kernel).squaredNorm();
}

double titchmarsh_onset(const Eigen::VectorXd& samples, const TimeGrid& grid, double floor) {
  require(samples.size() > 0, "titchmarsh_onset needs samples");
  require(samples.size() == grid.size(), "samples do not match the grid");
  require(floor > 0.0, "floor must be positive");
  const double cut = floor * samples.cwiseAbs().maxCoeff();
  for (int k = 0; k < samples.size(); ++k)
    if (std::abs(samples[k]) > cut) return grid[k];
  return grid.horizon();
}

}  // namespace fracwave
