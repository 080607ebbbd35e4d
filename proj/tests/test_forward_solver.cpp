#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "fracwave/error.hpp"
#include "fracwave/forward_solver.hpp"
#include "fracwave/gamma.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "oracle/ml_series.hpp"

using namespace fracwave;

namespace {

const double pi = std::numbers::pi;

std::shared_ptr<const Eigensystem> laplacian(int n) {
  return std::make_shared<const Eigensystem>(dirichlet_laplacian_1d(n, pi));
}

Eigen::VectorXd unit(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

Eigen::VectorXd sample(const TimeGrid& g, const std::function<double(double)>& f) {
  Eigen::VectorXd v(g.size());
  for (int k = 0; k < g.size(); ++k) v[k] = f(g[k]);
  return v;
}

// trapezoid L2(0,T) norm of nodal values
double l2_time(const Eigen::VectorXd& v, const TimeGrid& g) {
  double s = 0;
  for (int k = 0; k + 1 < g.size(); ++k) s += 0.5 * (g[k + 1] - g[k]) * (v[k] * v[k] + v[k + 1] * v[k + 1]);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("forward_solver") {

TEST_CASE("alpha = 2 anchors") {
  auto es = laplacian(4);
  const TimeGrid grid = TimeGrid::uniform(20.0, 200);
  const HomogeneousProblem pc{es, 2.0, unit(4, 0), Eigen::VectorXd::Zero(4)};
  const HomogeneousProblem ps{es, 2.0, Eigen::VectorXd::Zero(4), unit(4, 0)};
  const CoefficientHistory hc = solve_homogeneous(pc, grid), hs = solve_homogeneous(ps, grid);
  for (int k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(hc(k, 0) - std::cos(grid[k])) <= 1e-12);
    CHECK(std::abs(hs(k, 0) - std::sin(grid[k])) <= 1e-12);
  }
  CHECK(hc.rightCols(3).cwiseAbs().maxCoeff() == 0.0);
  // observation of the cos history at pi/2
  const PointTrajectory tr = observe(hc, pi / 2, *es, grid);
  for (int k = 0; k < grid.size(); ++k)
    CHECK(std::abs(tr.values[k] - std::sqrt(2 / pi) * std::cos(grid[k])) <= 1e-12);
}

TEST_CASE("alpha = 1.5 at x = pi/2 reproduces E_{1.5,1}(-t^1.5)") {
  auto es = laplacian(5);
  const TimeGrid grid = TimeGrid::uniform(4.0, 16);
  const HomogeneousProblem p{es, 1.5, unit(5, 0), Eigen::VectorXd::Zero(5)};
  const PointTrajectory tr = observe(solve_homogeneous(p, grid), pi / 2, *es, grid);
  for (int k = 0; k < grid.size(); ++k) {
    const double ref = oracle::ml_series(1.5, 1.0, -std::pow(grid[k], 1.5));
    CHECK(std::abs(tr.values[k] * std::sqrt(pi / 2) - ref) <= 1e-12);
  }
}

TEST_CASE("zero data and t = 0") {
  auto es = laplacian(6);
  const TimeGrid grid = TimeGrid::uniform(3.0, 30);
  const HomogeneousProblem z{es, 1.5, Eigen::VectorXd::Zero(6), Eigen::VectorXd::Zero(6)};
  CHECK(solve_homogeneous(z, grid).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXd u0 = Eigen::VectorXd::LinSpaced(6, 1, 2);
  const HomogeneousProblem p{es, 1.7, u0, Eigen::VectorXd::Ones(6)};
  CHECK(solve_homogeneous(p, grid).row(0).transpose() == u0);
  const TimeGrid g2 = TimeGrid::uniform(1.0, 4);
  CHECK(observe(CoefficientHistory::Zero(5, 6), 1.0, *es, g2).values.cwiseAbs().maxCoeff() == 0.0);
  // Dirichlet point
  const PointTrajectory edge = observe(solve_homogeneous(p, grid), 0.0, *es, grid);
  CHECK(edge.values.cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("problem validation") {
  auto es = laplacian(3);
  HomogeneousProblem p{es, 0.9, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)};
  CHECK_THROWS_AS(solve_homogeneous(p, TimeGrid::uniform(1, 2)), std::invalid_argument);
  p.alpha = 1.5;
  p.u1 = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(solve_homogeneous(p, TimeGrid::uniform(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(observe(CoefficientHistory::Zero(3, 3), 4.0, *es, TimeGrid::uniform(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("inhomogeneous: rho = 1 against the series oracle") {
  const Eigensystem es = dirichlet_laplacian_1d(3, pi);
  for (double a : {1.3, 1.5, 1.8}) {
    for (const TimeGrid& grid : {TimeGrid::uniform(5.0, 64), TimeGrid::graded(5.0, 64, 2.0)}) {
      const Eigen::VectorXd one = Eigen::VectorXd::Ones(grid.size());
      const CoefficientHistory h = solve_inhomogeneous(SeparatedSource{one, Eigen::Vector3d(1, 1, 1)}, es, a, grid);
      for (int k = 0; k < grid.size(); k += 8) {
        for (int n = 0; n < 3; ++n) {
          const double ref = oracle::scaled_ml(a, a + 1, es.lambda(n), grid[k], a);
          CHECK(std::abs(h(k, n) - ref) <= 1e-12 + 1e-10 * std::abs(ref));
        }
      }
    }
  }
}

TEST_CASE("inhomogeneous: zero source, vanishing eigenvalue, alpha = 2 rejected") {
  const Eigensystem es = dirichlet_laplacian_1d(3, pi);
  const TimeGrid grid = TimeGrid::uniform(2.0, 40);
  CHECK(solve_inhomogeneous(SeparatedSource{Eigen::VectorXd::Zero(41), Eigen::Vector3d(1, 2, 3)}, es, 1.5, grid)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  const Eigen::VectorXd mu = duhamel_mode(1e-8, 1.4, Eigen::VectorXd::Ones(41), grid);
  for (int k = 0; k < 41; ++k)
    CHECK(mu[k] == doctest::Approx(std::pow(grid[k], 1.4) * rgamma(2.4)).epsilon(1e-7));
  CHECK_THROWS_AS(solve_inhomogeneous(SeparatedSource{Eigen::VectorXd::Ones(41), Eigen::Vector3d(1, 0, 0)}, es, 2.0, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_inhomogeneous(SeparatedSource{Eigen::VectorXd::Ones(40), Eigen::Vector3d(1, 0, 0)}, es, 1.5, grid),
                  std::invalid_argument);
}

TEST_CASE("general modal source agrees with the separated form") {
  const Eigensystem es = dirichlet_laplacian_1d(4, pi);
  const TimeGrid grid = TimeGrid::uniform(3.0, 60);
  const Eigen::VectorXd rho = sample(grid, [](double t) { return std::cos(2 * t) + t; });
  const Eigen::Vector4d f(0.5, -1, 0, 2);
  const Eigen::MatrixXd F = rho * f.transpose();
  const CoefficientHistory a = solve_inhomogeneous(SeparatedSource{rho, f}, es, 1.6, grid);
  const CoefficientHistory b = solve_inhomogeneous(F, es, 1.6, grid);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("quadrature order on rho = t^2") {
  // mu(t) = 2 t^{a+2} E_{a,a+3}(-lambda t^a)
  const double T = 5.0;
  for (double a : {1.3, 1.7}) {
    for (double lambda : {1.0, 9.0}) {
      std::vector<double> err;
      for (int K : {64, 128, 256}) {
        const TimeGrid grid = TimeGrid::uniform(T, K);
        const Eigen::VectorXd mu = duhamel_mode(lambda, a, sample(grid, [](double t) { return t * t; }), grid);
        double e = 0;
        for (int k = K / 8; k <= K; k += K / 8)
          e = std::max(e, std::abs(mu[k] - 2 * oracle::scaled_ml(a, a + 3, lambda, grid[k], a + 2)));
        err.push_back(e);
      }
      INFO("alpha=" << a << " lambda=" << lambda);
      CHECK(std::log2(err[0] / err[1]) >= 1.8);
      CHECK(std::log2(err[1] / err[2]) >= 1.8);
    }
  }
}

TEST_CASE("rl_integral") {
  const TimeGrid grid = TimeGrid::uniform(3.0, 60);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(61);
  const Eigen::VectorXd lin = sample(grid, [](double t) { return t; });
  const Eigen::VectorXd j1 = rl_integral(0.5, one, grid), jt = rl_integral(0.5, lin, grid);
  for (int k = 0; k <= 60; ++k) {
    CHECK(std::abs(j1[k] - std::sqrt(grid[k]) * rgamma(1.5)) <= 1e-14);
    CHECK(std::abs(jt[k] - rgamma(2.5) * std::pow(grid[k], 1.5)) <= 1e-13);
  }
  // beta = 1 is the plain integral
  const Eigen::VectorXd ji = rl_integral(1.0, lin, grid);
  CHECK(std::abs(ji[60] - 4.5) <= 1e-13);
  // t^2, beta = 0.3: O(h^2)
  std::vector<double> err;
  for (int K : {50, 100, 200}) {
    const TimeGrid g = TimeGrid::uniform(2.0, K);
    const Eigen::VectorXd j = rl_integral(0.3, sample(g, [](double t) { return t * t; }), g);
    double e = 0;
    for (int k = 0; k <= K; ++k) e = std::max(e, std::abs(j[k] - 2 * rgamma(3.3) * std::pow(g[k], 2.3)));
    err.push_back(e);
  }
  CHECK(err[0] <= 1e-2);
  CHECK(std::log2(err[0] / err[1]) >= 1.8);
  CHECK(std::log2(err[1] / err[2]) >= 1.8);
  CHECK_THROWS_AS(rl_integral(0.0, one, grid), std::invalid_argument);
  CHECK_THROWS_AS(rl_integral(1.2, one, grid), std::invalid_argument);
}

TEST_CASE("linearity") {
  auto es = laplacian(6);
  const TimeGrid grid = TimeGrid::uniform(6.0, 90);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> g;
  auto rnd = [&](int n) {
    Eigen::VectorXd v(n);
    for (auto& x : v) x = g(gen);
    return v;
  };
  const Eigen::VectorXd a0 = rnd(6), a1 = rnd(6), b0 = rnd(6), b1 = rnd(6);
  const double s = 0.7, t = -1.3;
  const auto ha = solve_homogeneous({es, 1.6, a0, a1}, grid), hb = solve_homogeneous({es, 1.6, b0, b1}, grid);
  const auto hab = solve_homogeneous({es, 1.6, s * a0 + t * b0, s * a1 + t * b1}, grid);
  CHECK((hab - s * ha - t * hb).cwiseAbs().maxCoeff() <= 1e-13);

  const Eigen::VectorXd r1 = rnd(91), r2 = rnd(91), f1 = rnd(6), f2 = rnd(6);
  const auto w11 = solve_inhomogeneous(SeparatedSource{r1, f1}, *es, 1.4, grid);
  const auto w21 = solve_inhomogeneous(SeparatedSource{r2, f1}, *es, 1.4, grid);
  const auto w12 = solve_inhomogeneous(SeparatedSource{r1, f2}, *es, 1.4, grid);
  const auto wr = solve_inhomogeneous(SeparatedSource{s * r1 + t * r2, f1}, *es, 1.4, grid);
  const auto wf = solve_inhomogeneous(SeparatedSource{r1, s * f1 + t * f2}, *es, 1.4, grid);
  const double scale = w11.cwiseAbs().maxCoeff();
  CHECK((wr - s * w11 - t * w21).cwiseAbs().maxCoeff() <= 1e-13 * scale);
  CHECK((wf - s * w11 - t * w12).cwiseAbs().maxCoeff() <= 1e-13 * scale);
}

TEST_CASE("regularity estimate with one grid-sup constant") {
  // ||u(t)||_{D(A^{b+g})} <= C sum_j ||u_j||_{D(A^b)} t^{j - a g}, b = 0
  auto es = laplacian(16);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> g;
  for (double a : {1.3, 1.7}) {
    double C = 0;
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd u0(16), u1(16);
      for (int n = 0; n < 16; ++n) u0[n] = g(gen) / (n + 1), u1[n] = g(gen) / (n + 1);
      const HomogeneousProblem p{es, a, u0, u1};
      for (double gam : {0.0, 0.5, 1.0}) {
        for (double t = 1e-3; t <= 50.0; t *= 1.25) {
          const SpectralField u = solve_homogeneous_at(p, t);
          const double rhs = dnorm(u0, 0, *es) * std::pow(t, -a * gam) + dnorm(u1, 0, *es) * std::pow(t, 1 - a * gam);
          C = std::max(C, dnorm(u, gam, *es) / rhs);
        }
      }
    }
    MESSAGE("alpha " << a << ": regularity constant ~ " << C);
    CHECK(std::isfinite(C));
    CHECK(C < 10.0);
  }
}

TEST_CASE("kernel integral bound pi C0 / (2 alpha)") {
  for (double a : {1.2, 1.5, 1.8}) {
    double C0 = 0;
    for (double eta = 0; eta < 1e6; eta = eta * 1.05 + 1e-3)
      C0 = std::max(C0, std::abs(ml(a, a, -eta)) * (1 + eta * eta));
    const double bound = pi * C0 / (2 * a);
    const double T = 10.0;
    for (double lambda : {1.0, 4.0, 25.0, 400.0}) {
      // int_0^T lambda t^{a-1} |E_{a,a}(-lambda t^a)| dt = (1/a) int_0^{lambda T^a} |E_{a,a}(-eta)| d eta
      const double top = lambda * std::pow(T, a);
      const int M = 4000;
      double s = 0;
      for (int i = 0; i < M; ++i) {
        const double e0 = top * std::pow(static_cast<double>(i) / M, 3), e1 = top * std::pow((i + 1.0) / M, 3);
        s += 0.5 * (e1 - e0) * (std::abs(ml(a, a, -e0)) + std::abs(ml(a, a, -e1)));
      }
      s /= a;
      INFO("alpha=" << a << " lambda=" << lambda);
      CHECK(s <= bound * (1 + 1e-6));
    }
  }
}

TEST_CASE("L2 stability of the source-to-solution map") {
  auto es = laplacian(12);
  const double a = 1.5, T = 8.0;
  const TimeGrid grid = TimeGrid::uniform(T, 256);
  double C0 = 0;
  for (double eta = 0; eta < 1e6; eta = eta * 1.05 + 1e-3) C0 = std::max(C0, std::abs(ml(a, a, -eta)) * (1 + eta * eta));
  const double C2 = pi * C0 / (2 * a);
  std::mt19937_64 gen(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd rho(grid.size()), f(12);
    for (auto& x : rho) x = g(gen);
    for (auto& x : f) x = g(gen);
    const CoefficientHistory w = solve_inhomogeneous(SeparatedSource{rho, f}, *es, a, grid);
    // ||w||_{L2(0,T; D(A))}
    Eigen::VectorXd wn(grid.size());
    for (int k = 0; k < grid.size(); ++k) wn[k] = dnorm(w.row(k).transpose(), 1.0, *es);
    CHECK(l2_time(wn, grid) <= C2 * l2_time(rho, grid) * f.norm() * 1.01);
  }
}

}
