#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rigidpen/diagnostics.hpp"
#include "rigidpen/errors.hpp"

namespace rigidpen {
namespace {

TEST(DeformationNormSolid, RigidFieldHasNoDefect) {
  const GridSpec g(48, 48, 1.0 / 48);
  const LevelSet level = make_disk_level_set(g, {{0.4, 0.6}, 0.2});
  const StaggeredVelocity vel =
      sample_faces(g, [](Vec2 x) { return Vec2{0.3, -2.0} + cross(4.0, x - Vec2{0.1, 0.9}); });
  EXPECT_LE(deformation_norm_solid(vel, level), 1e-10);
}

TEST(DeformationNormSolid, UniformShearOverKCells) {
  const GridSpec g(12, 12, 0.1);
  CellField phi(g, 1.0);
  int k = 0;
  for (int j = 3; j < 8; ++j)
    for (int i = 4; i < 7; ++i) {
      phi(i, j) = -1.0;
      ++k;
    }
  const StaggeredVelocity shear = sample_faces(g, [](Vec2 x) { return Vec2{x.y, 0.0}; });
  EXPECT_NEAR(deformation_norm_solid(shear, make_level_set(phi, {0.55, 0.55})),
              g.dx() * std::sqrt(k / 2.0), 1e-13);
}

TEST(DeformationNormSolid, EmptySolidThrows) {
  const GridSpec g(8, 8, 0.125);
  EXPECT_THROW(deformation_norm_solid(StaggeredVelocity(g), make_level_set(CellField(g, 1.0), {})),
               SolidVanished);
}

TEST(ConvergenceOrder, ReferenceSweepRows) {
  // The reference table prints 1.0247 for this row; the log-ratio of its
  // printed defects is 1.02457.
  EXPECT_NEAR(convergence_order(4.30838, 3.84749e-2, 1e-4, 1e-6), 1.02457, 5e-6);
  EXPECT_NEAR(convergence_order(4.30838, 3.84749e-2, 1e-4, 1e-6), 1.0247, 2e-4);
  EXPECT_NEAR(convergence_order(3.84749e-2, 3.45379e-4, 1e-6, 1e-8), 1.0234, 5e-5);
  EXPECT_NEAR(convergence_order(3.45379e-4, 3.81643e-6, 1e-8, 1e-10), 0.9783, 5e-5);
}

TEST(ConvergenceOrder, ExactFirstOrder) {
  EXPECT_DOUBLE_EQ(convergence_order(0.7, 0.7 * 1e-2, 1e-4, 1e-6), 1.0);
  EXPECT_DOUBLE_EQ(convergence_order(3.0, 3.0 * 8.0, 0.5, 4.0), 1.0);
}

TEST(ConvergenceOrder, RejectsInvalidInput) {
  EXPECT_THROW(convergence_order(0.0, 1.0, 1e-4, 1e-6), DomainError);
  EXPECT_THROW(convergence_order(1.0, -1.0, 1e-4, 1e-6), DomainError);
  EXPECT_THROW(convergence_order(1.0, 1.0, 0.0, 1e-6), DomainError);
  EXPECT_THROW(convergence_order(1.0, 0.5, 1e-6, 1e-6), DomainError);
  EXPECT_THROW(convergence_order(std::nan(""), 0.5, 1e-4, 1e-6), DomainError);
}

TEST(CrossSectionProfile, ConstantField) {
  const GridSpec g(16, 24, 0.125);
  const StaggeredVelocity vel(g, 0.0, -3.0);
  const auto samples = cross_section_profile(vel, ProfileAxis::Horizontal, VelocityComponent::V, 1.3);
  ASSERT_EQ(samples.size(), 16u);
  for (const ProfileSample& s : samples) EXPECT_DOUBLE_EQ(s.value, -3.0);
}

TEST(CrossSectionProfile, RotationGivesLinearProfile) {
  const GridSpec g(32, 32, 1.0 / 32);
  const Vec2 c{0.45, 0.6};
  const double omega = 2.5;
  const StaggeredVelocity vel = sample_faces(g, [&](Vec2 x) { return cross(omega, x - c); });
  const auto samples = cross_section_profile(vel, ProfileAxis::Horizontal, VelocityComponent::V, c.y);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    EXPECT_NEAR(samples[k].value, omega * (samples[k].position - c.x), 1e-12);
    if (k > 0) {
      EXPECT_NEAR(samples[k].position - samples[k - 1].position, g.dx(), 1e-15);
      EXPECT_NEAR(samples[k].value - samples[k - 1].value, omega * g.dx(), 1e-12);
    }
  }
}

TEST(CrossSectionProfile, LatticePositions) {
  const GridSpec g(8, 12, 0.25);
  const StaggeredVelocity vel(g);
  // u along a horizontal line sits on the vertical cell edges
  const auto hu = cross_section_profile(vel, ProfileAxis::Horizontal, VelocityComponent::U, 1.0);
  ASSERT_EQ(hu.size(), 9u);
  EXPECT_DOUBLE_EQ(hu.front().position, 0.0);
  EXPECT_DOUBLE_EQ(hu.back().position, 2.0);
  const auto hv = cross_section_profile(vel, ProfileAxis::Horizontal, VelocityComponent::V, 1.0);
  ASSERT_EQ(hv.size(), 8u);
  EXPECT_DOUBLE_EQ(hv.front().position, 0.125);
  const auto vv = cross_section_profile(vel, ProfileAxis::Vertical, VelocityComponent::V, 1.0);
  ASSERT_EQ(vv.size(), 13u);
  EXPECT_DOUBLE_EQ(vv.back().position, 3.0);
  const auto vu = cross_section_profile(vel, ProfileAxis::Vertical, VelocityComponent::U, 1.0);
  ASSERT_EQ(vu.size(), 12u);
}

TEST(CrossSectionProfile, LineOutsideDomainThrows) {
  const GridSpec g(8, 8, 0.25);
  const StaggeredVelocity vel(g);
  EXPECT_THROW(cross_section_profile(vel, ProfileAxis::Horizontal, VelocityComponent::V, 2.5), DomainError);
  EXPECT_THROW(cross_section_profile(vel, ProfileAxis::Vertical, VelocityComponent::U, -0.1), DomainError);
}

TEST(SweepReport, SortsAndFillsOrders) {
  std::vector<SweepEntry> entries(3);
  entries[0].eta = 1e-8;
  entries[0].d_norm = 2e-5;
  entries[1].eta = 1e-4;
  entries[1].d_norm = 0.2;
  entries[2].eta = 1e-6;
  entries[2].d_norm = 2e-3;
  const SweepReport r = make_sweep_report(entries, 1.0 / 64, 2e-4, 0.05, 42);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_EQ(r.entries[0].eta, 1e-4);
  EXPECT_FALSE(r.entries[0].alpha);
  EXPECT_NEAR(*r.entries[1].alpha, 1.0, 1e-12);
  EXPECT_NEAR(*r.entries[2].alpha, 1.0, 1e-12);
  EXPECT_EQ(r.scenario_hash, 42u);
}

TEST(SweepReport, FailedEntriesAreSkipped) {
  std::vector<SweepEntry> entries(3);
  entries[0] = {1e-4, 0.1, {}, false, {}};
  entries[1] = {1e-6, 0.0, {}, true, "blew up"};
  entries[2] = {1e-8, 1e-5, {}, false, {}};
  const SweepReport r = make_sweep_report(entries, 0.1, 0.1, 1.0, 0);
  EXPECT_FALSE(r.entries[1].alpha);
  EXPECT_NEAR(*r.entries[2].alpha, 1.0, 1e-12);
}

TEST(SweepReport, DuplicateEtaThrows) {
  std::vector<SweepEntry> entries(2);
  entries[0].eta = entries[1].eta = 1e-6;
  entries[0].d_norm = entries[1].d_norm = 1.0;
  EXPECT_THROW(make_sweep_report(entries, 0.1, 0.1, 1.0, 0), DomainError);
}

}  // namespace
}  // namespace rigidpen
