#pragma once

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/error.hpp"
#include "fracwave/forward_solver.hpp"

namespace fracwave {

struct AsymptoticsReport {
  double fitted_norm_slope = std::numeric_limits<double>::quiet_NaN();
  double fitted_remainder_slope = std::numeric_limits<double>::quiet_NaN();
  /// sup over the window of remainder_norm(t, 1) / sum_j ||u_j||_{D(A^-1)} t^{j - 2 alpha}
  double empirical_constant = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> sign_onset;  ///< first node of the final constant-sign run
  int stabilized_sign = 0;           ///< +1, -1, or 0 for none
  int sign_change_count = 0;
  std::array<double, 2> window{1e2, 1e4};

  // Sign prediction from A^{-1}u_j(x0): case "a" (u1 term absent), "b", or "none".
  std::string sign_case = "none";
  int predicted_sign = 0;
  bool sign_agrees = false;
  /// |leading term| / |trajectory - leading term| at the last node; > 1 means the
  /// trajectory reaches the regime where the two-term expansion dominates.
  double leading_dominance = std::numeric_limits<double>::quiet_NaN();
};

/// Thrown by detect_sign when no sign stabilization is visible; carries the
/// partial report (sign_change_count is still valid). Not a sign violation.
class SignInconclusive : public NumericalError {
 public:
  SignInconclusive(const std::string& what, AsymptoticsReport partial)
      : NumericalError(what), report(std::move(partial)) {}
  AsymptoticsReport report;
};

/// A^{-1}u0 t^{-a}/Gamma(1-a) + A^{-1}u1 t^{1-a}/Gamma(2-a). Needs alpha < 2.
SpectralField leading_term(const HomogeneousProblem& p, double t);

/// ||u(t) - leading_term(t)||_{D(A^s)}.
double remainder_norm(const HomogeneousProblem& p, double t, double s);

/// Least-squares slope of log(value) against log(t) over samples with t in window.
double fit_decay_rate(const Eigen::VectorXd& t, const Eigen::VectorXd& values,
                      std::array<double, 2> window);

/// Long-time decay analysis on a log grid of `samples` points in window:
/// slope of ||u(t)||, slope of remainder_norm(t, 1), empirical constant.
AsymptoticsReport analyze_decay(const HomogeneousProblem& p, std::array<double, 2> window,
                                int samples = 60);

/// Pointwise values of A^{-1}u0 and A^{-1}u1 at the observation point.
struct SignContext {
  double alpha;
  double inv_a_u0;
  double inv_a_u1;
};
SignContext sign_context(const HomogeneousProblem& p, double x0);

/// Count of strict sign alternations; |v| <= atol is bridged.
int count_sign_changes(const Eigen::VectorXd& values, double atol);

/// Sign stabilization of a point trajectory, cross-checked against the
/// prediction from ctx. Throws SignInconclusive when the final constant-sign
/// run is shorter than min_tail_fraction of the horizon.
AsymptoticsReport detect_sign(const PointTrajectory& traj, const SignContext& ctx,
                              double min_tail_fraction = 0.25);

struct CensusRow {
  double alpha;
  int sign_change_count;
  std::optional<double> onset;  ///< T0/T1 estimate when the sign stabilizes
};

/// Sign changes of u(x0, .) on a uniform grid of `nodes` intervals over [0, T],
/// for each alpha, with the template's data.
std::vector<CensusRow> sign_change_census(const std::vector<double>& alphas,
                                          const HomogeneousProblem& templ, double x0,
                                          double horizon, int nodes);

}  // namespace fracwave
