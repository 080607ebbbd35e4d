#include "fracwave/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracwave {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(x) for Gamma(x + 1).
double lanczos_sum(double x) {
  double sum = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    sum += kLanczosCoeffs[i] / (x + static_cast<double>(i));
  }
  return sum;
}

// Gamma(x) for x >= 0.5.
double gamma_right(double x) {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // t^(xm1+0.5) e^-t split in two halves to delay overflow up to x ~ 171.6.
  const double half_pow = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * std::exp(-t) *
         half_pow * lanczos_sum(xm1);
}

// Exact (n-1)! for the integers where it is representable.
bool integer_gamma(double x, double& out) {
  if (!(x >= 1.0 && x <= 23.0 && x == std::nearbyint(x))) return false;
  out = 1.0;
  for (int k = 2; k < static_cast<int>(x); ++k) out *= k;
  return true;
}

}  // namespace

bool is_gamma_pole(double x) {
  return x <= 0.0 && x == std::nearbyint(x);
}

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) {
    throw std::domain_error("gamma: pole at x = " + std::to_string(x));
  }
  double value;
  if (integer_gamma(x, value)) return value;
  if (x >= 0.5) {
    if (x > 171.6) throw std::overflow_error("gamma: overflow");
    value = gamma_right(x);
  } else {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x); sin evaluated on the reduced
    // argument to keep it exact near the poles.
    const double s = std::sin(std::numbers::pi * (x - 2.0 * std::floor(0.5 * x)));
    if (1.0 - x > 171.6) return 0.0 * s;  // underflows for very negative x
    value = std::numbers::pi / (s * gamma_right(1.0 - x));
  }
  if (!std::isfinite(value)) throw std::overflow_error("gamma: overflow");
  return value;
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return 0.0;
  if (double f; integer_gamma(x, f)) return 1.0 / f;
  if (x >= 0.5) {
    if (x > 171.6) return std::exp(-log_gamma(x));
    return 1.0 / gamma_right(x);
  }
  const double s = std::sin(std::numbers::pi * (x - 2.0 * std::floor(0.5 * x)));
  if (1.0 - x > 171.6) {
    const double mag = std::exp(log_gamma(1.0 - x)) / std::numbers::pi;
    return s * mag;
  }
  return s * gamma_right(1.0 - x) / std::numbers::pi;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(xm1));
}

}  // namespace fracwave
