#include "fracwave/eigensystem.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave {

using detail::require;

Eigensystem::Eigensystem(Eigen::VectorXd lambdas, Evaluator phi, Eigen::VectorXd quad_nodes,
                         Eigen::VectorXd quad_weights, Interval domain, std::string provider,
                         std::map<std::string, double> metadata)
    : lambdas_(std::move(lambdas)),
      phi_(std::move(phi)),
      nodes_(std::move(quad_nodes)),
      weights_(std::move(quad_weights)),
      domain_(domain),
      provider_(std::move(provider)),
      metadata_(std::move(metadata)) {
  require(lambdas_.size() >= 1, "eigensystem needs at least one mode");
  require(nodes_.size() == weights_.size() && nodes_.size() > 0, "quadrature nodes/weights mismatch");
  require(domain_.hi > domain_.lo, "empty domain");
  for (int n = 0; n < lambdas_.size(); ++n) {
    if (!(lambdas_[n] > 0.0) || !std::isfinite(lambdas_[n]))
      throw NumericalError("nonpositive eigenvalue lambda_" + std::to_string(n + 1) + " = " +
                           std::to_string(lambdas_[n]));
    if (n > 0 && lambdas_[n] < lambdas_[n - 1])
      throw NumericalError("eigenvalues not sorted ascending");
  }
  basis_.resize(nodes_.size(), lambdas_.size());
  for (int q = 0; q < nodes_.size(); ++q)
    for (int n = 0; n < lambdas_.size(); ++n) basis_(q, n) = phi_(n, nodes_[q]);
}

Eigen::VectorXd Eigensystem::phi_at(double x) const {
  Eigen::VectorXd v(size());
  for (int n = 0; n < size(); ++n) v[n] = phi_(n, x);
  return v;
}

Eigen::MatrixXd Eigensystem::gram() const {
  return basis_.transpose() * weights_.asDiagonal() * basis_;
}

Eigensystem dirichlet_laplacian_1d(int n_modes, double length) {
  require(n_modes >= 1, "n_modes must be >= 1");
  require(length > 0.0 && std::isfinite(length), "length must be positive");
  const double pi = std::numbers::pi;

  Eigen::VectorXd lambdas(n_modes);
  for (int n = 0; n < n_modes; ++n) lambdas[n] = std::pow((n + 1) * pi / length, 2);

  // Trapezoid on M panels is exact for sin(m pi x/L) sin(n pi x/L) whenever
  // m + n < 2M; endpoint values vanish, so only interior nodes are kept.
  const int panels = 4 * n_modes + 8;
  const double h = length / panels;
  Eigen::VectorXd nodes(panels - 1), weights(panels - 1);
  for (int q = 1; q < panels; ++q) {
    nodes[q - 1] = q * h;
    weights[q - 1] = h;
  }

  const double scale = std::sqrt(2.0 / length);
  auto phi = [scale, pi, length](int n, double x) {
    return scale * std::sin((n + 1) * pi * x / length);
  };
  return Eigensystem(std::move(lambdas), phi, std::move(nodes), std::move(weights),
                     Interval{0.0, length}, "dirichlet_laplacian_1d",
                     {{"length", length}, {"quadrature_panels", panels}});
}

namespace {

struct Tridiagonal {
  Eigen::VectorXd diag;  // size m
  Eigen::VectorXd off;   // size m-1, symmetric
  double h;
};

Tridiagonal assemble(const Coefficient& a, const Coefficient& c, int mesh_size, Interval iv) {
  require(mesh_size >= 2, "mesh_size must be >= 2");
  require(iv.hi > iv.lo, "empty interval");
  const int m = mesh_size - 1;  // interior unknowns
  const double h = iv.length() / mesh_size;
  const double h2 = h * h;

  Eigen::VectorXd a_mid(mesh_size);
  for (int i = 0; i < mesh_size; ++i) {
    a_mid[i] = a(iv.lo + (i + 0.5) * h);
    require(std::isfinite(a_mid[i]) && a_mid[i] > 0.0,
            "coefficient a must be positive on the mesh (x = " + std::to_string(iv.lo + (i + 0.5) * h) + ")");
  }

  Tridiagonal t{Eigen::VectorXd(m), Eigen::VectorXd(std::max(m - 1, 0)), h};
  Eigen::VectorXd lower(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) {
    const double x = iv.lo + (i + 1) * h;
    const double ci = c(x);
    require(std::isfinite(ci) && ci >= 0.0, "coefficient c must be nonnegative on the mesh");
    t.diag[i] = (a_mid[i] + a_mid[i + 1]) / h2 + ci;
    if (i + 1 < m) t.off[i] = -a_mid[i + 1] / h2;  // row i, column i+1
    if (i > 0) lower[i - 1] = -a_mid[i] / h2;      // row i, column i-1
  }
  // Row-wise assembly of the two off-diagonals must agree.
  for (int i = 0; i + 1 < m; ++i)
    if (lower[i] != t.off[i]) throw NumericalError("non-symmetric assembly detected");
  return t;
}

// Solve (T - sigma I) x = b for symmetric tridiagonal T, Gaussian elimination
// with partial pivoting (the shifted matrix is indefinite).
Eigen::VectorXd shifted_solve(const Tridiagonal& t, double sigma, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(t.diag.size());
  // Upper factor has up to two superdiagonals after pivoting.
  Eigen::VectorXd d = t.diag.array() - sigma, du = Eigen::VectorXd::Zero(m), du2 = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd dl = Eigen::VectorXd::Zero(m);
  for (int i = 0; i + 1 < m; ++i) {
    du[i] = t.off[i];
    dl[i] = t.off[i];
  }
  Eigen::VectorXd x = b;
  const double tiny = 1e-300;
  for (int i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      x[i + 1] -= f * x[i];
      // du2[i] stays 0
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      du[i] = tmp;
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= f * x[i];
    }
  }
  if (d[m - 1] == 0.0) d[m - 1] = tiny;
  x[m - 1] /= d[m - 1];
  if (m >= 2) x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2];
  for (int i = m - 3; i >= 0; --i) x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  return x;
}

Eigen::VectorXd tridiagonal_eigenvalues(const Tridiagonal& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(t.diag, t.off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal eigenvalue iteration failed");
  return solver.eigenvalues();  // ascending
}

}  // namespace

Eigen::VectorXd sturm_liouville_fd_eigenvalues(const Coefficient& a, const Coefficient& c,
                                               int mesh_size, int count, Interval interval) {
  require(count >= 1 && count <= mesh_size - 1, "need 1 <= count <= mesh_size - 1");
  const Tridiagonal t = assemble(a, c, mesh_size, interval);
  Eigen::VectorXd ev = tridiagonal_eigenvalues(t).head(count);
  if (ev[0] <= 0.0) throw NumericalError("nonpositive eigenvalue in Sturm-Liouville discretization");
  return ev;
}

Eigensystem sturm_liouville_fd(const Coefficient& a, const Coefficient& c, int mesh_size,
                               int n_modes, Interval interval) {
  require(n_modes >= 1 && n_modes <= mesh_size - 1, "need 1 <= n_modes <= mesh_size - 1");
  const Tridiagonal t = assemble(a, c, mesh_size, interval);
  const int m = mesh_size - 1;
  const double h = t.h;

  Eigen::VectorXd all = tridiagonal_eigenvalues(t);
  if (all[0] <= 0.0) throw NumericalError("nonpositive eigenvalue in Sturm-Liouville discretization");
  Eigen::VectorXd lambdas = all.head(n_modes);

  // Inverse iteration with a slightly perturbed shift; eigenvalues of a
  // Sturm-Liouville problem are simple, so a few sweeps suffice. Vectors are
  // re-orthogonalized against earlier ones to clean up round-off.
  Eigen::MatrixXd vecs(m, n_modes);
  for (int n = 0; n < n_modes; ++n) {
    const double gap = std::min(n > 0 ? all[n] - all[n - 1] : all[1] - all[0],
                                n + 1 < m ? all[n + 1] - all[n] : all[n]);
    const double sigma = all[n] - 1e-6 * std::max(gap, 1e-12 * all[n]);
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x[i] = 1.0 + 0.1 * std::sin(1.7 * i + 0.3 * n);  // generic start
    for (int sweep = 0; sweep < 4; ++sweep) {
      x = shifted_solve(t, sigma, x);
      for (int k = 0; k < n; ++k) x -= vecs.col(k).dot(x) * h * vecs.col(k);
      x /= std::sqrt(h) * x.norm();
    }
    int lead = 0;
    while (lead < m - 1 && std::abs(x[lead]) < 1e-12) ++lead;
    if (x[lead] < 0) x = -x;
    vecs.col(n) = x;
  }

  // Trapezoid on the mesh; boundary values are zero so only interior nodes matter.
  Eigen::VectorXd nodes(m), weights = Eigen::VectorXd::Constant(m, h);
  for (int i = 0; i < m; ++i) nodes[i] = interval.lo + (i + 1) * h;

  const double lo = interval.lo;
  auto phi = [vecs, h, lo, m](int n, double x) {
    // mesh index of x with zero Dirichlet values at 0 and m+1
    const double s = (x - lo) / h;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, m);
    const double w = s - i;
    auto at = [&](int j) { return (j <= 0 || j >= m + 1) ? 0.0 : vecs(j - 1, n); };
    return (1.0 - w) * at(i) + w * at(i + 1);
  };
  return Eigensystem(std::move(lambdas), phi, std::move(nodes), std::move(weights), interval,
                     "sturm_liouville_fd",
                     {{"mesh_size", mesh_size}, {"interval_lo", interval.lo}, {"interval_hi", interval.hi}});
}

void check_field(const SpectralField& field, const Eigensystem& es) {
  require(field.size() == es.size(), "spectral field has " + std::to_string(field.size()) +
                                         " coefficients, eigensystem has " + std::to_string(es.size()));
  require(field.allFinite(), "spectral field has non-finite coefficients");
}

SpectralField project(const Eigen::Ref<const Eigen::VectorXd>& samples, const Eigensystem& es) {
  require(samples.size() == es.quadrature_nodes().size(),
          "samples must be given on the eigensystem quadrature nodes");
  return es.basis().transpose() * es.quadrature_weights().cwiseProduct(samples);
}

SpectralField project(const std::function<double(double)>& g, const Eigensystem& es) {
  const Eigen::VectorXd& x = es.quadrature_nodes();
  Eigen::VectorXd samples(x.size());
  for (int q = 0; q < x.size(); ++q) samples[q] = g(x[q]);
  return project(samples, es);
}

double dnorm(const SpectralField& field, double s, const Eigensystem& es) {
  require(s >= -1.0, "dnorm needs s >= -1");
  check_field(field, es);
  return (es.lambdas().array().pow(s) * field.array()).matrix().norm();
}

SpectralField apply_inverse_A(const SpectralField& field, const Eigensystem& es) {
  check_field(field, es);
  return field.cwiseQuotient(es.lambdas());
}

double evaluate_at(const SpectralField& field, double x, const Eigensystem& es) {
  check_field(field, es);
  require(es.domain().contains(x), "point " + std::to_string(x) + " outside the domain");
  double sum = 0.0;
  for (int n = 0; n < es.size(); ++n) sum += field[n] * es.phi(n, x);  // ascending n
  return sum;
}

double tail_bound(const SpectralField& field, const Eigensystem& es) {
  check_field(field, es);
  const int n = es.size();
  const int half = n / 2;
  return field.tail(n - half).norm() / es.lambdas()[n - 1];
}

}  // namespace fracwave
