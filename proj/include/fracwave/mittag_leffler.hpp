#pragma once

#include <string_view>

namespace fracwave {

/// A request for E_{alpha,beta}(z) on the real line.
struct MLQuery {
  double alpha;  ///< order, (0, 2]
  double beta;   ///< second parameter, (0, 4]
  double z;      ///< real argument; the main use is z = -eta, eta >= 0
};

/// Throws std::invalid_argument unless alpha in (0,2], beta in (0,4], z finite.
void validate(const MLQuery& q);

/// Mittag-Leffler function E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta).
///
/// Accuracy: absolute 1e-12 for |z| <= 10, relative 1e-10 for z <= -10.
/// The evaluator picks one of
///   - the power series (|z| small, only while cancellation is harmless),
///   - inversion of the Laplace transform s^(alpha-beta)/(s^alpha - z) on an
///     optimal parabolic contour plus the residues of the poles it leaves out,
///   - the algebraic asymptotic expansion plus the same pole residues (large -z),
/// and throws NumericalError if none of them can certify its tolerance.
double ml(const MLQuery& q);

inline double ml(double alpha, double beta, double z) { return ml(MLQuery{alpha, beta, z}); }

/// First asymptotic term 1/(Gamma(j - alpha) eta) of E_{alpha,j}(-eta),
/// alpha in (1,2), j in {1,2}, eta > 0.
double ml_leading(double alpha, int j, double eta);

/// Exponent p of the first non-vanishing correction |E_{alpha,j}(-eta) - ml_leading| ~ eta^p.
/// Normally -2, but 1/Gamma(j - 2 alpha) vanishes when j - 2 alpha is a
/// non-positive integer (alpha = 1.5 for both j), and the decay is faster.
int ml_leading_remainder_exponent(double alpha, int j);

namespace ml_regime {

enum class Regime { closed_form, series, contour, asymptotic };

std::string_view name(Regime r);

struct Thresholds {
  double series_radius = 5.0;      ///< series allowed for |z| <= this
  double asymptotic_start = 50.0;  ///< asymptotic expansion tried for -z >= this
};

/// Thresholds used by ml(); fixed from the accuracy sweep in the test suite.
Thresholds default_thresholds();

struct Evaluation {
  double value;
  double error_estimate;  ///< absolute, scheme-internal estimate
  Regime regime;
};

/// Full evaluation with regime diagnostics.
Evaluation evaluate(const MLQuery& q, const Thresholds& th = default_thresholds());

/// Truncated power series. Throws NumericalError when the term cap is hit or
/// cancellation exceeds the absolute budget.
Evaluation series(const MLQuery& q);

/// Laplace-transform inversion on a parabolic contour with pole residues.
Evaluation contour(const MLQuery& q);

/// Algebraic expansion -sum_k z^-k / Gamma(beta - alpha k), optimally truncated,
/// plus exponentially small pole residues. Requires z < 0.
Evaluation asymptotic(const MLQuery& q);

}  // namespace ml_regime
}  // namespace fracwave
