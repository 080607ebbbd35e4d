#pragma once

namespace fracwave {

/// Gamma function on the whole real line. Lanczos approximation for x >= 0.5,
/// reflection formula below. Throws std::domain_error at the poles
/// x = 0, -1, -2, ... and std::overflow_error when |Gamma(x)| exceeds DBL_MAX.
double gamma(double x);

/// 1/Gamma(x). Entire: returns exactly 0 at the poles of Gamma and underflows
/// gracefully to 0 for large x instead of throwing.
double rgamma(double x);

/// log|Gamma(x)| for x > 0.
double log_gamma(double x);

/// True when x is (numerically) a non-positive integer.
bool is_gamma_pole(double x);

}  // namespace fracwave
