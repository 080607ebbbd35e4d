#include "fracwave/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracwave/error.hpp"
#include "fracwave/gamma.hpp"

namespace fracwave {

using cplx = std::complex<double>;

void validate(const MLQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha <= 2.0)) {
    throw std::invalid_argument("ml: alpha must lie in (0, 2], got " + std::to_string(q.alpha));
  }
  if (!(q.beta > 0.0 && q.beta <= 4.0)) {
    throw std::invalid_argument("ml: beta must lie in (0, 4], got " + std::to_string(q.beta));
  }
  if (!std::isfinite(q.z)) throw std::invalid_argument("ml: argument must be finite");
}

double ml_leading(double alpha, int j, double eta) {
  if (j != 1 && j != 2) throw std::invalid_argument("ml_leading: j must be 1 or 2");
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("ml_leading: alpha must lie in (1, 2)");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("ml_leading: eta must be positive");
  return 1.0 / (gamma(j - alpha) * eta);
}

int ml_leading_remainder_exponent(double alpha, int j) {
  for (int k = 2; k < 64; ++k) {
    const double x = j - alpha * k;
    if (std::abs(x - std::nearbyint(x)) > 1e-12 || x > 0.0) return -k;
  }
  return -64;
}

namespace ml_regime {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kSeriesCap = 10000;
constexpr double kSeriesAbsBudget = 1e-13;
constexpr double kAsymptoticRelTol = 1e-14;
constexpr double kContourLogTarget = -34.538776394910684;  // log(1e-15)
constexpr int kContourMaxNodes = 20000;

// Poles of s^(alpha-beta)/(s^alpha - z) on the principal sheet,
// s = |z|^(1/alpha) exp(i (theta + 2 k pi) / alpha).
std::vector<cplx> principal_poles(double alpha, double z) {
  const double theta = z < 0.0 ? std::numbers::pi : 0.0;
  const int kmin = static_cast<int>(std::ceil(-alpha / 2.0 - theta / (2.0 * std::numbers::pi)));
  const int kmax = static_cast<int>(std::floor(alpha / 2.0 - theta / (2.0 * std::numbers::pi)));
  const double r = std::pow(std::abs(z), 1.0 / alpha);
  std::vector<cplx> poles;
  for (int k = kmin; k <= kmax; ++k) {
    poles.push_back(std::polar(r, (theta + 2.0 * k * std::numbers::pi) / alpha));
  }
  return poles;
}

double phi_of(cplx s) { return 0.5 * (s.real() + std::abs(s)); }

// Residue of e^s s^(alpha-beta)/(s^alpha - z) at a simple pole.
cplx pole_residue(double alpha, double beta, cplx s) {
  return std::pow(s, 1.0 - beta) * std::exp(s) / alpha;
}

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double nodes = std::numeric_limits<double>::infinity();
};

// Parameters for a contour squeezed between two singularities (bounded region).
ContourParams bounded_region(double phi_j, double phi_j1, double pj, double qj, double log_eps) {
  const double log_mach = std::log(kEps);
  const double fac = 1.01;
  const double f_max = std::exp(log_eps - log_mach);
  const double sq_j = std::sqrt(phi_j);
  const double threshold = 2.0 * std::sqrt(log_eps - log_mach);
  const double sq_j1 = std::min(std::sqrt(phi_j1), threshold - sq_j);

  double sqbar_j = 0.0;
  double sqbar_j1 = 0.0;
  double f_bar = 1.0;
  bool admissible = false;
  constexpr double tiny = 1e-14;

  if (pj < tiny && qj < tiny) {
    sqbar_j = sq_j;
    sqbar_j1 = sq_j1;
    admissible = true;
  } else if (pj < tiny && qj >= tiny) {
    sqbar_j = sq_j;
    const double f_min = sq_j > 0.0 ? fac * std::pow(sq_j / (sq_j1 - sq_j), qj) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / qj);
      sqbar_j1 = (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq);
      admissible = true;
    }
  } else if (pj >= tiny && qj < tiny) {
    sqbar_j1 = sq_j1;
    const double f_min = fac * std::pow(sq_j1 / (sq_j1 - sq_j), pj);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      sqbar_j = (2.0 * sq_j + fp * sq_j1) / (2.0 - fp);
      admissible = true;
    }
  } else {
    double f_min = fac * std::pow((sq_j + sq_j1) / (sq_j1 - sq_j), std::max(pj, qj));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      const double fq = std::pow(f_bar, -1.0 / qj);
      const double w = -phi_j1 / log_eps;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sqbar_j = ((2.0 + w + fq) * sq_j + fp * sq_j1) / den;
      sqbar_j1 = (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den;
      admissible = true;
    }
  }
  ContourParams out;
  if (!admissible) return out;
  const double le = log_eps - std::log(f_bar);
  const double w = -sqbar_j1 * sqbar_j1 / le;
  out.mu = std::pow(((1.0 + w) * sqbar_j + sqbar_j1) / (2.0 + w), 2);
  out.h = -2.0 * std::numbers::pi / le * (sqbar_j1 - sqbar_j) /
          ((1.0 + w) * sqbar_j + sqbar_j1);
  out.nodes = std::ceil(std::sqrt(1.0 - le / out.mu) / out.h);
  return out;
}

// Parameters for a contour right of the last singularity (unbounded region).
ContourParams unbounded_region(double phi_j, double pj, double log_eps) {
  const double sq_phi = std::sqrt(phi_j);
  double phibar = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
  double sqbar = std::sqrt(phibar);
  const double f_min = 1.0;
  const double f_max = 10.0;
  const double f_tar = 5.0;

  double nodes = 0.0;
  double a_par = 0.0;
  double sq_mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double phi_t = phibar;
    const double log_eps_phi_t = log_eps / phi_t;
    nodes = std::ceil(phi_t / std::numbers::pi *
                      (1.0 - 1.5 * log_eps_phi_t + std::sqrt(1.0 - 2.0 * log_eps_phi_t)));
    a_par = std::numbers::pi * nodes / phi_t;
    sq_mu = sqbar * std::abs(4.0 - a_par) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a_par));
    const double fbar = std::pow((sqbar - sq_phi) / sq_mu, -pj);
    if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) break;
    sqbar = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi;
    phibar = sqbar * sqbar;
  }
  ContourParams out;
  out.mu = sq_mu * sq_mu;
  out.h = (-3.0 * a_par - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a_par)) / (4.0 - a_par) / nodes;
  out.nodes = nodes;

  const double log_mach = std::log(kEps);
  const double threshold = log_eps - log_mach;
  if (out.mu > threshold) {
    const double q = std::abs(pj) < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(out.mu);
    const double phibar2 = std::pow(q + sq_phi, 2);
    if (phibar2 < threshold) {
      const double w = std::sqrt(log_mach / (log_mach - log_eps));
      const double u = std::sqrt(-phibar2 / log_mach);
      out.mu = threshold;
      out.nodes = std::ceil(w * log_eps / 2.0 / std::numbers::pi / (u * w - 1.0));
      out.h = std::sqrt(log_mach / (log_mach - log_eps)) / out.nodes;
    } else {
      out = ContourParams{};
    }
  }
  return out;
}

// Contribution of the algebraic term -z^{-k} / Gamma(beta - alpha k), z = -eta.
// k-th algebraic term and a bound on it that ignores the sin factor, so that
// terms near a pole of Gamma do not look like convergence.
struct AlgebraicTerm {
  double value;
  double envelope;
};

AlgebraicTerm algebraic_term(double alpha, double beta, double eta, int k) {
  const double x = beta - alpha * k;
  // -(-eta)^{-k} = (-1)^{k+1} eta^{-k}
  const double sign_z = (k % 2 == 0) ? -1.0 : 1.0;
  if (x > 0.0) {
    const double v = sign_z * std::exp(-k * std::log(eta)) * rgamma(x);
    return {v, std::abs(v)};
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi for x < 0
  const double env = std::exp(log_gamma(1.0 - x) - std::log(std::numbers::pi) - k * std::log(eta));
  if (is_gamma_pole(x)) return {0.0, env};
  const double s = std::sin(std::numbers::pi * (x - 2.0 * std::floor(0.5 * x)));
  return {sign_z * s * env, env};
}

}  // namespace

std::string_view name(Regime r) {
  switch (r) {
    case Regime::closed_form: return "closed_form";
    case Regime::series: return "series";
    case Regime::contour: return "contour";
    case Regime::asymptotic: return "asymptotic";
  }
  return "unknown";
}

Thresholds default_thresholds() { return Thresholds{}; }

Evaluation series(const MLQuery& q) {
  validate(q);
  long double sum = 0.0L;
  long double zk = 1.0L;
  double max_term = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSeriesCap; ++k) {
    const double term = static_cast<double>(zk) * rgamma(q.alpha * k + q.beta);
    sum += term;
    const double mag = std::abs(term);
    max_term = std::max(max_term, mag);
    const bool decreasing = mag <= prev;
    prev = mag;
    if (decreasing && k > 0 && mag <= 0.5 * kEps * (std::abs(static_cast<double>(sum)) + 1e-300)) {
      const double err = 4.0 * kEps * max_term * std::sqrt(static_cast<double>(k + 1));
      if (err > kSeriesAbsBudget) {
        throw NumericalError("ml series: cancellation exceeds budget at z = " +
                             std::to_string(q.z));
      }
      return {static_cast<double>(sum), err, Regime::series};
    }
    zk *= q.z;
  }
  throw NumericalError("ml series: term cap reached at z = " + std::to_string(q.z));
}

Evaluation contour(const MLQuery& q) {
  validate(q);
  const double alpha = q.alpha;
  const double beta = q.beta;
  const double z = q.z;
  if (z == 0.0) return {rgamma(beta), 0.0, Regime::contour};

  // Singularities sorted by phi; the origin is always present.
  std::vector<cplx> poles = principal_poles(alpha, z);
  std::sort(poles.begin(), poles.end(),
            [](cplx a, cplx b) { return phi_of(a) < phi_of(b); });
  std::vector<cplx> sing{cplx(0.0, 0.0)};
  std::vector<double> phi{0.0};
  for (const cplx& s : poles) {
    if (phi_of(s) > 1e-15) {
      sing.push_back(s);
      phi.push_back(phi_of(s));
    }
  }
  const std::size_t n_sing = sing.size();
  std::vector<double> p(n_sing, 1.0);
  std::vector<double> qs(n_sing, 1.0);
  p[0] = std::max(0.0, -2.0 * (alpha - beta + 1.0));
  qs[n_sing - 1] = std::numeric_limits<double>::infinity();
  phi.push_back(std::numeric_limits<double>::infinity());

  const double log_eps = kContourLogTarget;
  const double round_off_bound = log_eps - std::log(kEps);
  ContourParams best;
  std::size_t best_region = 0;
  for (std::size_t j = 0; j < n_sing; ++j) {
    if (!(phi[j] < round_off_bound && phi[j] < phi[j + 1])) continue;
    const ContourParams cp = j + 1 < n_sing
                                 ? bounded_region(phi[j], phi[j + 1], p[j], qs[j], log_eps)
                                 : unbounded_region(phi[j], p[j], log_eps);
    if (cp.nodes < best.nodes) {
      best = cp;
      best_region = j;
    }
  }
  if (!std::isfinite(best.nodes) || best.nodes > kContourMaxNodes) {
    throw NumericalError("ml contour: no admissible integration region at z = " +
                         std::to_string(z));
  }

  // Conjugate symmetry of the integrand for real z halves the work:
  // integral = h/(2 pi) [Im S_0 + 2 sum_{k>=1} Im S_k].
  const int n_nodes = static_cast<int>(best.nodes);
  const double mu = best.mu;
  const double h = best.h;
  double acc = 0.0;
  for (int k = n_nodes; k >= 0; --k) {
    const double u = h * k;
    const cplx zk = mu * std::pow(cplx(1.0, u), 2);
    const cplx dz = cplx(-2.0 * mu * u, 2.0 * mu);
    const cplx f = std::pow(zk, alpha - beta) / (std::pow(zk, alpha) - z);
    const double im = (std::exp(zk) * f * dz).imag();
    acc += (k == 0 ? 1.0 : 2.0) * im;
  }
  double value = h * acc / (2.0 * std::numbers::pi);

  for (std::size_t j = best_region + 1; j < n_sing; ++j) {
    value += pole_residue(alpha, beta, sing[j]).real();
  }
  if (!std::isfinite(value)) {
    throw NumericalError("ml contour: non-finite result at z = " + std::to_string(z));
  }
  return {value, std::exp(log_eps) * std::max(1.0, std::abs(value)), Regime::contour};
}

Evaluation asymptotic(const MLQuery& q) {
  validate(q);
  if (!(q.z < 0.0)) throw std::invalid_argument("ml asymptotic: requires z < 0");
  const double eta = -q.z;

  double residues = 0.0;
  for (const cplx& s : principal_poles(q.alpha, q.z)) {
    if (phi_of(s) > 1e-15) residues += pole_residue(q.alpha, q.beta, s).real();
  }

  double sum = 0.0;
  double last_env = std::numeric_limits<double>::infinity();
  double error = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 2000; ++k) {
    const AlgebraicTerm t = algebraic_term(q.alpha, q.beta, eta, k);
    if (t.envelope > last_env) {  // divergence begins: optimal truncation reached
      error = t.envelope;
      break;
    }
    last_env = t.envelope;
    if (t.envelope <= 0.25 * kEps * std::abs(sum)) {
      error = t.envelope;
      break;
    }
    sum += t.value;
  }
  const double value = sum + residues;
  return {value, error + kEps * std::abs(value), Regime::asymptotic};
}

Evaluation evaluate(const MLQuery& q, const Thresholds& th) {
  validate(q);
  if (q.z == 0.0) return {rgamma(q.beta), 0.0, Regime::closed_form};
  if (q.alpha == 1.0 && q.beta == 1.0) return {std::exp(q.z), 0.0, Regime::closed_form};
  if (q.alpha == 2.0 && q.z < 0.0 && (q.beta == 1.0 || q.beta == 2.0)) {
    const double w = std::sqrt(-q.z);
    return {q.beta == 1.0 ? std::cos(w) : std::sin(w) / w, 0.0, Regime::closed_form};
  }

  if (std::abs(q.z) <= th.series_radius) {
    try {
      return series(q);
    } catch (const NumericalError&) {
      // heavy cancellation (small alpha): fall through to the contour scheme
    }
  }
  if (q.z < 0.0 && -q.z >= th.asymptotic_start) {
    const Evaluation a = asymptotic(q);
    if (a.error_estimate <= kAsymptoticRelTol * std::abs(a.value)) return a;
  }
  return contour(q);
}

}  // namespace ml_regime

double ml(const MLQuery& q) { return ml_regime::evaluate(q).value; }

}  // namespace fracwave
