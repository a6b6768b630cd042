#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "rigidpen/errors.hpp"
#include "rigidpen/linear_solver.hpp"

namespace rigidpen {
namespace {

Eigen::MatrixXd dense(const LinearOperator& op) {
  const std::size_t n = op.size();
  Eigen::MatrixXd a(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    op.apply(e, col);
    for (std::size_t r = 0; r < n; ++r) a(r, c) = col[r];
    e[c] = 0.0;
  }
  return a;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

FaceScalars random_faces(const GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.5, 2.0);
  FaceScalars f(g);
  for (double& x : f.u) x = d(rng);
  for (double& x : f.v) x = d(rng);
  return f;
}

TEST(PressureOperator, SymmetricSemidefiniteWithConstantNullSpace) {
  const GridSpec g(7, 9, 0.2);
  std::mt19937_64 rng(1);
  const PressureOperator op(random_faces(g, rng));
  const Eigen::MatrixXd a = dense(op);
  EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((a * Eigen::VectorXd::Ones(a.rows())).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
  EXPECT_NEAR(ev(0), 0.0, 1e-9);
  EXPECT_GT(ev(1), 1e-3);
  const Eigen::VectorXd diag = a.diagonal();
  const std::vector<double> d = op.diagonal();
  for (int k = 0; k < a.rows(); ++k) EXPECT_NEAR(d[k], diag(k), 1e-12);
}

TEST(DiffusionOperator, MatchesGhostCellStencil) {
  const GridSpec g(6, 5, 0.25);
  std::mt19937_64 rng(2);
  const double mu_dt = 0.03;
  for (FaceComponent c : {FaceComponent::U, FaceComponent::V}) {
    const FaceScalars rho = random_faces(g, rng);
    const DiffusionOperator op(c, rho, mu_dt);
    const std::vector<double>& rf = c == FaceComponent::U ? rho.u : rho.v;
    std::vector<double> x = random_vector(op.size(), rng);
    // wall-normal faces carry zero in a no-slip field
    StaggeredVelocity holder(g);
    (c == FaceComponent::U ? holder.u : holder.v) = x;
    holder.zero_boundary();
    x = c == FaceComponent::U ? holder.u : holder.v;

    std::vector<double> y(op.size());
    op.apply(x, y);
    const std::vector<double> lap = oracle::ghost_laplacian(g, c == FaceComponent::U, x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0 && y[k] == 0.0) continue;
      EXPECT_NEAR(y[k], rf[k] * x[k] - mu_dt * lap[k], 1e-12) << k;
    }
  }
}

TEST(DiffusionOperator, SymmetricPositiveDefinite) {
  const GridSpec g(5, 6, 0.1);
  std::mt19937_64 rng(3);
  for (FaceComponent c : {FaceComponent::U, FaceComponent::V}) {
    const DiffusionOperator op(c, random_faces(g, rng), 0.01);
    const Eigen::MatrixXd a = dense(op);
    EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues()(0), 0.0);
    const std::vector<double> d = op.diagonal();
    for (int k = 0; k < a.rows(); ++k) EXPECT_NEAR(d[k], a(k, k), 1e-12);
  }
}

TEST(ConjugateGradient, MatchesDenseSolveOnDiffusion) {
  const GridSpec g(12, 10, 0.1);
  std::mt19937_64 rng(4);
  for (FaceComponent c : {FaceComponent::U, FaceComponent::V}) {
    const DiffusionOperator op(c, random_faces(g, rng), 0.05);
    const std::vector<double> b = random_vector(op.size(), rng);
    std::vector<double> x(op.size(), 0.0);
    const SolveStats s = conjugate_gradient(op, b, x, 1e-12, 1000);
    EXPECT_LE(s.relative_residual, 1e-12);
    EXPECT_DOUBLE_EQ(s.initial_relative_residual, 1.0);
    const Eigen::VectorXd ref = dense(op).ldlt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
    for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(x[k], ref(k), 1e-9);
  }
}

TEST(ConjugateGradient, SingularPressureSolveInZeroMeanGauge) {
  const GridSpec g(10, 8, 0.125);
  std::mt19937_64 rng(5);
  const PressureOperator op(random_faces(g, rng));
  const std::vector<double> b = random_vector(op.size(), rng);
  std::vector<double> x(op.size(), 0.0);
  conjugate_gradient(op, b, x, 1e-12, 5000);

  // Reference: pin the first unknown, solve, then shift to zero mean.
  Eigen::MatrixXd a = dense(op);
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  rhs.array() -= rhs.mean();
  a.row(0).setZero();
  a(0, 0) = 1.0;
  rhs(0) = 0.0;
  Eigen::VectorXd ref = a.partialPivLu().solve(rhs);
  ref.array() -= ref.mean();

  double mean = 0.0;
  for (double v : x) mean += v;
  EXPECT_NEAR(mean / x.size(), 0.0, 1e-14);
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(x[k], ref(k), 1e-8);
}

TEST(ConjugateGradient, ZeroRightHandSide) {
  const GridSpec g(6, 6, 0.1);
  std::mt19937_64 rng(6);
  const PressureOperator op(random_faces(g, rng));
  std::vector<double> x = random_vector(op.size(), rng);
  const SolveStats s = conjugate_gradient(op, std::vector<double>(op.size(), 0.0), x, 1e-10, 10);
  EXPECT_EQ(s.iterations, 0);
  for (double v : x) EXPECT_EQ(v, 0.0);
  // constant right-hand sides are pure gauge for the Neumann problem
  const SolveStats c = conjugate_gradient(op, std::vector<double>(op.size(), 3.0), x, 1e-10, 10);
  EXPECT_EQ(c.iterations, 0);
}

TEST(ConjugateGradient, WarmStartFromSolutionNeedsNoIterations) {
  const GridSpec g(8, 8, 0.125);
  std::mt19937_64 rng(7);
  const DiffusionOperator op(FaceComponent::U, random_faces(g, rng), 0.02);
  const std::vector<double> b = random_vector(op.size(), rng);
  std::vector<double> x(op.size(), 0.0);
  const SolveStats cold = conjugate_gradient(op, b, x, 1e-10, 1000);
  EXPECT_GT(cold.iterations, 0);
  const SolveStats warm = conjugate_gradient(op, b, x, 1e-10, 1000);
  EXPECT_EQ(warm.iterations, 0);
  EXPECT_LE(warm.initial_relative_residual, 1e-10);
}

TEST(ConjugateGradient, IterationCapThrows) {
  const GridSpec g(16, 16, 1.0 / 16);
  std::mt19937_64 rng(8);
  const PressureOperator op(random_faces(g, rng));
  const std::vector<double> b = random_vector(op.size(), rng);
  std::vector<double> x(op.size(), 0.0);
  try {
    conjugate_gradient(op, b, x, 1e-14, 3);
    FAIL() << "expected LinearSolveFailed";
  } catch (const LinearSolveFailed& e) {
    EXPECT_EQ(e.iterations(), 3);
    EXPECT_GT(e.residual(), 1e-14);
  }
}

}  // namespace
}  // namespace rigidpen
