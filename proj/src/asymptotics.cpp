#include "fracwave/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracwave/gamma.hpp"

namespace fracwave {

using detail::require;

SpectralField leading_term(const HomogeneousProblem& p, double t) {
  p.validate();
  require(t > 0.0 && std::isfinite(t), "leading_term needs t > 0");
  require(p.alpha < 2.0, "the two-term expansion needs alpha < 2");
  const double c0 = std::pow(t, -p.alpha) * rgamma(1.0 - p.alpha);
  const double c1 = std::pow(t, 1.0 - p.alpha) * rgamma(2.0 - p.alpha);
  return apply_inverse_A(c0 * p.u0 + c1 * p.u1, *p.es);
}

double remainder_norm(const HomogeneousProblem& p, double t, double s) {
  const SpectralField r = solve_homogeneous_at(p, t) - leading_term(p, t);
  return dnorm(r, s, *p.es);
}

double fit_decay_rate(const Eigen::VectorXd& t, const Eigen::VectorXd& values,
                      std::array<double, 2> window) {
  require(t.size() == values.size(), "times and values differ in length");
  require(window[0] > 0.0 && window[0] < window[1], "window must satisfy 0 < t_lo < t_hi");
  std::vector<double> x, y;
  for (int i = 0; i < t.size(); ++i) {
    if (t[i] < window[0] || t[i] > window[1]) continue;
    if (!(values[i] > 0.0))
      throw std::invalid_argument("nonpositive value at t = " + std::to_string(t[i]) +
                                  "; widen the window past sign stabilization");
    x.push_back(std::log(t[i]));
    y.push_back(std::log(values[i]));
  }
  require(x.size() >= 5, "fit_decay_rate needs at least 5 samples in the window");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

AsymptoticsReport analyze_decay(const HomogeneousProblem& p, std::array<double, 2> window,
                                int samples) {
  p.validate();
  require(window[0] > 0.0 && window[0] < window[1], "window must satisfy 0 < t_lo < t_hi");
  require(samples >= 5, "need at least 5 samples");
  const Eigensystem& es = *p.es;
  const double a0 = dnorm(p.u0, -1.0, es), a1 = dnorm(p.u1, -1.0, es);

  Eigen::VectorXd t(samples), norm(samples), rem(samples);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    t[i] = window[0] * std::pow(window[1] / window[0], static_cast<double>(i) / (samples - 1));
    const SpectralField u = solve_homogeneous_at(p, t[i]);
    norm[i] = u.norm();
    rem[i] = dnorm(u - leading_term(p, t[i]), 1.0, es);
    const double rhs = a0 * std::pow(t[i], -2.0 * p.alpha) + a1 * std::pow(t[i], 1.0 - 2.0 * p.alpha);
    if (rhs > 0.0) sup = std::max(sup, rem[i] / rhs);
  }
  AsymptoticsReport r;
  r.window = window;
  r.fitted_norm_slope = fit_decay_rate(t, norm, window);
  r.fitted_remainder_slope = fit_decay_rate(t, rem, window);
  r.empirical_constant = sup;
  return r;
}

SignContext sign_context(const HomogeneousProblem& p, double x0) {
  p.validate();
  return SignContext{p.alpha, evaluate_at(apply_inverse_A(p.u0, *p.es), x0, *p.es),
                     evaluate_at(apply_inverse_A(p.u1, *p.es), x0, *p.es)};
}

int count_sign_changes(const Eigen::VectorXd& values, double atol) {
  int count = 0, last = 0;
  for (int k = 0; k < values.size(); ++k) {
    if (std::abs(values[k]) <= atol) continue;
    const int s = values[k] > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

AsymptoticsReport detect_sign(const PointTrajectory& traj, const SignContext& ctx,
                              double min_tail_fraction) {
  const Eigen::VectorXd& v = traj.values;
  require(v.size() == traj.grid.size(), "trajectory length does not match its grid");
  require(v.allFinite(), "trajectory has non-finite values");
  const double atol = 1e-14 * v.cwiseAbs().maxCoeff();

  AsymptoticsReport r;
  r.window = {traj.grid[1], traj.grid.horizon()};
  r.sign_change_count = count_sign_changes(v, atol);

  // Prediction. The u1 term dominates (t^{1-a} vs t^{-a}) whenever present.
  const double scale = std::max({std::abs(ctx.inv_a_u0), std::abs(ctx.inv_a_u1), 1e-300});
  if (std::abs(ctx.inv_a_u1) > 1e-12 * scale && ctx.inv_a_u1 != 0.0) {
    r.sign_case = "b";
    r.predicted_sign = ctx.inv_a_u1 > 0 ? 1 : -1;
  } else if (ctx.inv_a_u0 != 0.0) {
    r.sign_case = "a";
    r.predicted_sign = ctx.inv_a_u0 > 0 ? -1 : 1;
  }
  if (ctx.alpha < 2.0) {
    const double T = traj.grid.horizon();
    const double lead = ctx.inv_a_u0 * std::pow(T, -ctx.alpha) * rgamma(1.0 - ctx.alpha) +
                        ctx.inv_a_u1 * std::pow(T, 1.0 - ctx.alpha) * rgamma(2.0 - ctx.alpha);
    const double rest = std::abs(v[v.size() - 1] - lead);
    r.leading_dominance = rest > 0 ? std::abs(lead) / rest : std::numeric_limits<double>::infinity();
  }

  // Final run of nodes with one sign and margin > atol.
  int k = static_cast<int>(v.size()) - 1;
  const double last = v[k];
  if (std::abs(last) > atol) {
    const int s = last > 0 ? 1 : -1;
    while (k > 0 && std::abs(v[k - 1]) > atol && (v[k - 1] > 0 ? 1 : -1) == s) --k;
    const double tail = traj.grid.horizon() - traj.grid[k];
    if (tail >= min_tail_fraction * traj.grid.horizon()) {
      r.sign_onset = traj.grid[k];
      r.stabilized_sign = s;
      r.sign_agrees = (s == r.predicted_sign);
      return r;
    }
  }
  throw SignInconclusive("no sign stabilization within the trajectory (inconclusive, " +
                             std::to_string(r.sign_change_count) + " sign changes)",
                         r);
}

std::vector<CensusRow> sign_change_census(const std::vector<double>& alphas,
                                          const HomogeneousProblem& templ, double x0,
                                          double horizon, int nodes) {
  const TimeGrid grid = TimeGrid::uniform(horizon, nodes);
  std::vector<CensusRow> rows;
  for (double a : alphas) {
    HomogeneousProblem p = templ;
    p.alpha = a;
    const PointTrajectory traj = observe(solve_homogeneous(p, grid), x0, *p.es, grid);
    CensusRow row{a, 0, std::nullopt};
    try {
      const AsymptoticsReport rep = detect_sign(traj, sign_context(p, x0));
      row.sign_change_count = rep.sign_change_count;
      row.onset = rep.sign_onset;
    } catch (const SignInconclusive& e) {
      row.sign_change_count = e.report.sign_change_count;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fracwave
