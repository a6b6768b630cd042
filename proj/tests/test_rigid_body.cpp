#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rigidpen/errors.hpp"
#include "rigidpen/reduce.hpp"
#include "rigidpen/rigid_body.hpp"
#include "rigidpen/transport.hpp"

namespace rigidpen {
namespace {

CellField weights(const CellField& rho, const CellField& h) {
  CellField w(rho.grid);
  for (std::size_t k = 0; k < w.values.size(); ++k) w.values[k] = rho.values[k] * h.values[k];
  return w;
}

TEST(ComputeMoments, CenteredBlock) {
  const GridSpec g(4, 4, 0.5);
  const CellField rho(g, 1.5);
  CellField h(g);
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i) h(i, j) = 1.0;
  const Moments m = compute_moments(rho, h);
  EXPECT_DOUBLE_EQ(m.mass, 1.5);
  EXPECT_DOUBLE_EQ(m.center.x, 1.0);
  EXPECT_DOUBLE_EQ(m.center.y, 1.0);
  // four cell centers at distance sqrt(2)/4 from the centroid
  EXPECT_NEAR(m.inertia, 1.5 * 0.25 * 4 * 0.125, 1e-15);
}

TEST(ComputeMoments, EmptyIndicatorIsSolidVanished) {
  const GridSpec g(6, 6, 0.1);
  EXPECT_THROW(compute_moments(CellField(g, 1.0), CellField(g, 0.0)), SolidVanished);
}

TEST(ComputeMoments, BenchmarkDiskMassAndInertia) {
  const double dx = 1.0 / 256;
  const GridSpec g(512, 1536, dx);
  const double radius = 0.125;
  const double rho_s = 1.5;
  const LevelSet level = make_disk_level_set(g, {{1.0, 4.0}, radius});
  const double band = 2.0 * dx * 2.0 * M_PI * radius;
  for (bool sharp : {true, false}) {
    const CellField h = indicator_from_levelset(level, sharp);
    const Moments m = compute_moments(CellField(g, rho_s), h);
    EXPECT_NEAR(m.mass, rho_s * M_PI * radius * radius, band * rho_s);
    const double polar = rho_s * M_PI * std::pow(radius, 4) / 2.0;
    EXPECT_NEAR(m.inertia, polar, band * rho_s * radius * radius);
    EXPECT_NEAR(m.center.x, 1.0, 1e-12);
    EXPECT_NEAR(m.center.y, 4.0, 1e-12);
  }
}

TEST(RigidVelocityFromFlow, ConstantField) {
  const GridSpec g(16, 16, 1.0 / 16);
  std::mt19937_64 rng(4);
  const CellField h = oracle::random_ellipse_indicator(g, rng);
  const CellField rho = oracle::random_density(g, rng);
  const RigidState s = rigid_velocity_from_flow(StaggeredVelocity(g, 0.7, -1.3), rho, h);
  EXPECT_NEAR(s.v_trans.x, 0.7, 1e-14);
  EXPECT_NEAR(s.v_trans.y, -1.3, 1e-14);
  EXPECT_NEAR(s.omega, 0.0, 1e-12);
}

TEST(RigidVelocityFromFlow, RotationAboutCentroid) {
  const GridSpec g(64, 64, 1.0 / 64);
  const LevelSet level = make_disk_level_set(g, {{0.5, 0.5}, 0.2});
  const CellField h = indicator_from_levelset(level, false);
  const CellField rho(g, 2.0);
  const double omega = 3.0;
  const StaggeredVelocity vel = sample_faces(g, [&](Vec2 x) { return cross(omega, x - Vec2{0.5, 0.5}); });
  const RigidState s = rigid_velocity_from_flow(vel, rho, h);
  EXPECT_NEAR(s.v_trans.x, 0.0, 1e-10);
  EXPECT_NEAR(s.v_trans.y, 0.0, 1e-10);
  EXPECT_NEAR(s.omega, omega, 1e-10);
}

TEST(RigidVelocityFromFlow, MatchesLeastSquaresOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const GridSpec g(24, 20, 0.05);
    const StaggeredVelocity vel = oracle::random_velocity(g, rng, 2.0);
    const CellField rho = oracle::random_density(g, rng);
    const CellField h = oracle::random_ellipse_indicator(g, rng);
    const RigidState s = rigid_velocity_from_flow(vel, rho, h);
    const oracle::RigidFit fit = oracle::rigid_least_squares(vel, weights(rho, h));
    const Vec2 v_center = fit.velocity_at_origin + cross(fit.omega, s.center);
    const double scale = 1.0 + std::abs(fit.omega) + norm(v_center);
    EXPECT_NEAR(s.omega, fit.omega, 1e-9 * scale);
    EXPECT_NEAR(s.v_trans.x, v_center.x, 1e-9 * scale);
    EXPECT_NEAR(s.v_trans.y, v_center.y, 1e-9 * scale);
  }
}

TEST(RigidField, Translation) {
  const GridSpec g(5, 5, 0.2);
  RigidState s;
  s.v_trans = {1.0, 0.0};
  const StaggeredVelocity f = rigid_field(s, g);
  for (double u : f.u) EXPECT_EQ(u, 1.0);
  for (double v : f.v) EXPECT_EQ(v, 0.0);
}

TEST(RigidField, RotationMatchesAnalyticValues) {
  const GridSpec g(6, 8, 0.25);
  RigidState s;
  s.omega = 2.0;
  s.center = {0.7, 1.1};
  const StaggeredVelocity f = rigid_field(s, g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i)
      EXPECT_DOUBLE_EQ(f.u_at(i, j), -2.0 * (g.u_face(i, j).y - 1.1));
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) EXPECT_DOUBLE_EQ(f.v_at(i, j), 2.0 * (g.v_face(i, j).x - 0.7));
}

TEST(RigidField, RoundTripThroughExtraction) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const GridSpec g(32, 32, 1.0 / 32);
  for (int trial = 0; trial < 10; ++trial) {
    const CellField h = oracle::random_ellipse_indicator(g, rng);
    const CellField rho = oracle::random_density(g, rng);
    RigidState s;
    s.center = compute_moments(rho, h).center;
    s.v_trans = {d(rng), d(rng)};
    s.omega = d(rng);
    const RigidState back = rigid_velocity_from_flow(rigid_field(s, g), rho, h);
    EXPECT_NEAR(back.v_trans.x, s.v_trans.x, 1e-10);
    EXPECT_NEAR(back.v_trans.y, s.v_trans.y, 1e-10);
    EXPECT_NEAR(back.omega, s.omega, 1e-10);
  }
}

TEST(ProjectionResidual, RigidInputLeavesNoDefect) {
  const GridSpec g(32, 32, 1.0 / 32);
  std::mt19937_64 rng(12);
  const CellField h = oracle::random_ellipse_indicator(g, rng);
  const CellField rho = oracle::random_density(g, rng);
  RigidState gen;
  gen.center = {0.3, 0.6};
  gen.v_trans = {0.5, -0.25};
  gen.omega = 1.5;
  const StaggeredVelocity vel = rigid_field(gen, g);
  const RigidState s = rigid_velocity_from_flow(vel, rho, h);
  EXPECT_LE(projection_residual(vel, rho, h, s), 1e-12);
  const auto cells = cell_centered_velocity(vel);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (h(i, j) == 0.0) continue;
      const Vec2 diff = cells[g.cell_index(i, j)] - s.velocity_at(g.cell_center(i, j));
      EXPECT_LE(norm(diff), 1e-12);
    }
}

TEST(ProjectionResidual, FuzzedOrthogonalityAndEnergySplit) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const GridSpec g(20 + trial % 7, 18 + trial % 5, 0.05);
    const StaggeredVelocity vel = oracle::random_velocity(g, rng, 3.0);
    const CellField rho = oracle::random_density(g, rng);
    const CellField h = oracle::random_ellipse_indicator(g, rng);
    const RigidState s = rigid_velocity_from_flow(vel, rho, h);
    ASSERT_LE(projection_residual(vel, rho, h, s), 1e-10);

    const auto cells = cell_centered_velocity(vel);
    double total = 0.0, rigid = 0.0, defect = 0.0;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const double w = rho(i, j) * h(i, j);
        const Vec2 u = cells[g.cell_index(i, j)];
        const Vec2 us = s.velocity_at(g.cell_center(i, j));
        total += w * dot(u, u);
        rigid += w * dot(us, us);
        defect += w * dot(u - us, u - us);
      }
    ASSERT_NEAR(total, rigid + defect, 1e-9 * total);
  }
}

TEST(RigidState, InertiaPositiveForNonemptySolid) {
  const GridSpec g(8, 8, 0.125);
  CellField h(g);
  h(3, 4) = 0.2;
  h(4, 4) = 1.0;
  EXPECT_GT(compute_moments(CellField(g, 1.0), h).inertia, 0.0);
}

TEST(AdvancePose, EulerIncrements) {
  RigidState s;
  s.v_trans = {1.0, 0.0};
  const RigidState a = advance_pose(s, 0.1);
  EXPECT_DOUBLE_EQ(a.translation.x, 0.1);
  EXPECT_DOUBLE_EQ(a.translation.y, 0.0);

  RigidState r;
  r.omega = M_PI;
  EXPECT_DOUBLE_EQ(advance_pose(r, 1.0).rotation, M_PI);

  RigidState c;
  c.v_trans = {0.5, -2.0};
  c.omega = 0.25;
  RigidState many = c;
  for (int k = 0; k < 8; ++k) many = advance_pose(many, 0.125);
  const RigidState once = advance_pose(c, 1.0);
  EXPECT_NEAR(many.translation.x, once.translation.x, 1e-15);
  EXPECT_NEAR(many.translation.y, once.translation.y, 1e-15);
  EXPECT_NEAR(many.rotation, once.rotation, 1e-15);
}

TEST(PairwiseReduce, IndependentOfSplitting) {
  std::vector<double> x(1000);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double& v : x) v = d(rng) * 1e6;
  EXPECT_EQ(pairwise_sum(x), pairwise_sum(x));
  double plain = 0.0;
  for (double v : x) plain += v;
  EXPECT_NEAR(pairwise_sum(x), plain, 1e-6);
}

}  // namespace
}  // namespace rigidpen
