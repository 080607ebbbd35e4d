#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <map>
#include <string>

namespace fracwave {

/// Coefficients (g, phi_n), n = 1..N, of a spatial field.
using SpectralField = Eigen::VectorXd;

/// Spatial domain; only intervals are provided.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool on_boundary(double x, double tol = 1e-12) const {
    return std::abs(x - lo) <= tol * length() || std::abs(x - hi) <= tol * length();
  }
};

/// Dirichlet eigensystem {(lambda_n, phi_n)} of a symmetric elliptic operator,
/// truncated to N modes, with a quadrature rule for L2 inner products.
/// Immutable after construction.
class Eigensystem {
 public:
  /// phi(n, x) with 0-based mode index n.
  using Evaluator = std::function<double(int, double)>;

  Eigensystem(Eigen::VectorXd lambdas, Evaluator phi, Eigen::VectorXd quad_nodes,
              Eigen::VectorXd quad_weights, Interval domain, std::string provider,
              std::map<std::string, double> metadata = {});

  int size() const { return static_cast<int>(lambdas_.size()); }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  double lambda(int n) const { return lambdas_[n]; }
  double phi(int n, double x) const { return phi_(n, x); }

  /// All N eigenfunctions at x.
  Eigen::VectorXd phi_at(double x) const;

  const Eigen::VectorXd& quadrature_nodes() const { return nodes_; }
  const Eigen::VectorXd& quadrature_weights() const { return weights_; }
  /// basis()(q, n) = phi_n(node_q).
  const Eigen::MatrixXd& basis() const { return basis_; }

  const Interval& domain() const { return domain_; }
  const std::string& provider() const { return provider_; }
  const std::map<std::string, double>& metadata() const { return metadata_; }

  /// Gram matrix of the eigenfunctions under the bundled quadrature.
  Eigen::MatrixXd gram() const;

 private:
  Eigen::VectorXd lambdas_;
  Evaluator phi_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd basis_;
  Interval domain_;
  std::string provider_;
  std::map<std::string, double> metadata_;
};

/// -d^2/dx^2 on (0, L): lambda_n = (n pi / L)^2, phi_n = sqrt(2/L) sin(n pi x / L).
/// The trapezoid rule on 4N+8 panels integrates products of the first N modes exactly.
Eigensystem dirichlet_laplacian_1d(int n_modes, double length);

using Coefficient = std::function<double(double)>;

/// Three-point flux discretization of -(a u')' + c u with Dirichlet ends on a
/// uniform mesh of `mesh_size` panels. Eigenvectors are normalized in the
/// trapezoid inner product and extended to the interval by linear interpolation.
/// Requires a >= kappa > 0, c >= 0 on the mesh and n_modes <= mesh_size - 1.
Eigensystem sturm_liouville_fd(const Coefficient& a, const Coefficient& c, int mesh_size,
                               int n_modes, Interval interval);

/// Lowest `count` eigenvalues of the same discretization (no eigenvectors).
Eigen::VectorXd sturm_liouville_fd_eigenvalues(const Coefficient& a, const Coefficient& c,
                                               int mesh_size, int count, Interval interval);

/// Throws std::invalid_argument unless the field is finite and sized for es.
void check_field(const SpectralField& field, const Eigensystem& es);

/// Quadrature approximation of (g, phi_n) from samples of g on the quadrature nodes.
SpectralField project(const Eigen::Ref<const Eigen::VectorXd>& samples, const Eigensystem& es);

/// Projection of a function given pointwise.
SpectralField project(const std::function<double(double)>& g, const Eigensystem& es);

/// D(A^s) norm (sum_n lambda_n^{2s} coeffs_n^2)^{1/2}, s >= -1.
double dnorm(const SpectralField& field, double s, const Eigensystem& es);

/// A^{-1}: coeffs_n / lambda_n.
SpectralField apply_inverse_A(const SpectralField& field, const Eigensystem& es);

/// sum_n coeffs_n phi_n(x). Throws for x outside the domain.
double evaluate_at(const SpectralField& field, double x, const Eigensystem& es);

/// Truncation diagnostic lambda_N^{-1} * ||coefficients of the upper half of the modes||.
double tail_bound(const SpectralField& field, const Eigensystem& es);

}  // namespace fracwave
