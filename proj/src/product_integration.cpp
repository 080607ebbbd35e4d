#include "fracwave/product_integration.hpp"

#include <vector>

#include "fracwave/error.hpp"

namespace fracwave {

using detail::require;

namespace {

// Integrals of k(tk - s) against the two hats of [tj, tj1], written through
// the moments at tau_hi = tk - tj, tau_lo = tk - tj1.
inline void hat_integrals(const Moments& hi, const Moments& lo, double h, double& left, double& right) {
  const double i0 = hi.first - lo.first;
  const double i1 = hi.second - lo.second - h * lo.first;
  left = i0 - i1 / h;
  right = i1 / h;
}

}  // namespace

ConvolutionWeights::ConvolutionWeights(const TimeGrid& grid, const KernelMoments& moments)
    : grid_(grid), toeplitz_(grid.is_uniform()) {
  const int K = grid.intervals();
  if (toeplitz_) {
    const double h = grid.step();
    std::vector<Moments> m(K + 1);
    m[0] = {0.0, 0.0};
    for (int i = 1; i <= K; ++i) m[i] = moments(i * h);
    left_ = Eigen::VectorXd::Zero(K + 1);
    right_ = Eigen::VectorXd::Zero(K + 1);
    for (int lag = 1; lag <= K; ++lag) hat_integrals(m[lag], m[lag - 1], h, left_[lag], right_[lag]);
    return;
  }
  w_ = Eigen::MatrixXd::Zero(K + 1, K + 1);
  const Eigen::VectorXd& t = grid.nodes();
  for (int k = 1; k <= K; ++k) {
    Moments hi = moments(t[k]);
    for (int j = 0; j < k; ++j) {
      const Moments lo = (j + 1 == k) ? Moments{0.0, 0.0} : moments(t[k] - t[j + 1]);
      double l, r;
      hat_integrals(hi, lo, t[j + 1] - t[j], l, r);
      w_(k, j) += l;
      w_(k, j + 1) += r;
      hi = lo;
    }
  }
}

double ConvolutionWeights::weight(int k, int j) const {
  if (j > k) return 0.0;
  if (!toeplitz_) return w_(k, j);
  double w = 0.0;
  if (j < k) w += left_[k - j];
  if (j >= 1) w += right_[k - j + 1];
  return w;
}

Eigen::VectorXd ConvolutionWeights::apply(const Eigen::VectorXd& samples) const {
  require(samples.size() == grid_.size(), "sample count does not match the time grid");
  const int n = grid_.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  if (!toeplitz_) {
    for (int k = 1; k < n; ++k) out[k] = w_.row(k).head(k + 1).dot(samples.head(k + 1));
    return out;
  }
  for (int k = 1; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += weight(k, j) * samples[j];
    out[k] = s;
  }
  return out;
}

Eigen::MatrixXd ConvolutionWeights::dense() const {
  if (!toeplitz_) return w_;
  const int n = grid_.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k)
    for (int j = 0; j <= k; ++j) w(k, j) = weight(k, j);
  return w;
}

void ConvolutionWeights::add_scaled(const ConvolutionWeights& other, double c) {
  require(grid_ == other.grid_, "convolution weights on different grids");
  if (toeplitz_) {
    left_ += c * other.left_;
    right_ += c * other.right_;
  } else {
    w_ += c * other.w_;
  }
}

}  // namespace fracwave
