#include "rigidpen/rigid_body.hpp"

#include <algorithm>
#include <cmath>

#include "rigidpen/errors.hpp"
#include "rigidpen/reduce.hpp"

namespace rigidpen {

namespace {

Vec2 cell_center_of(const GridSpec& g, std::size_t k) {
  const int i = static_cast<int>(k % g.nx());
  const int j = static_cast<int>(k / g.nx());
  return g.cell_center(i, j);
}

}  // namespace

Moments compute_moments(const CellField& rho, const CellField& indicator) {
  const GridSpec& g = rho.grid;
  const std::size_t n = g.cell_count();
  const double area = g.cell_area();
  const auto weight = [&](std::size_t k) { return rho.values[k] * indicator.values[k]; };

  Moments m;
  m.mass = area * pairwise_reduce(0, n, weight);
  if (!(m.mass > 0.0)) throw SolidVanished();
  m.center.x = area * pairwise_reduce(0, n, [&](std::size_t k) {
                 return weight(k) * cell_center_of(g, k).x;
               }) / m.mass;
  m.center.y = area * pairwise_reduce(0, n, [&](std::size_t k) {
                 return weight(k) * cell_center_of(g, k).y;
               }) / m.mass;
  m.inertia = area * pairwise_reduce(0, n, [&](std::size_t k) {
                const Vec2 r = cell_center_of(g, k) - m.center;
                return weight(k) * dot(r, r);
              });
  return m;
}

RigidState rigid_velocity_from_flow(const StaggeredVelocity& vel, const CellField& rho,
                                    const CellField& indicator) {
  const GridSpec& g = vel.grid;
  const Moments m = compute_moments(rho, indicator);
  const std::vector<Vec2> uc = cell_centered_velocity(vel);
  const std::size_t n = g.cell_count();
  const double area = g.cell_area();
  const auto weight = [&](std::size_t k) { return rho.values[k] * indicator.values[k]; };

  RigidState s;
  s.mass = m.mass;
  s.center = m.center;
  s.inertia = m.inertia;
  s.v_trans.x = area * pairwise_reduce(0, n, [&](std::size_t k) { return weight(k) * uc[k].x; }) /
                m.mass;
  s.v_trans.y = area * pairwise_reduce(0, n, [&](std::size_t k) { return weight(k) * uc[k].y; }) /
                m.mass;
  const double angular_momentum = area * pairwise_reduce(0, n, [&](std::size_t k) {
                                    return weight(k) * cross(cell_center_of(g, k) - m.center, uc[k]);
                                  });
  s.omega = m.inertia > 0.0 ? angular_momentum / m.inertia : 0.0;
  return s;
}

StaggeredVelocity rigid_field(const RigidState& state, const GridSpec& g) {
  return sample_faces(g, [&](Vec2 x) { return state.velocity_at(x); });
}

double projection_residual(const StaggeredVelocity& vel, const CellField& rho,
                           const CellField& indicator, const RigidState& state) {
  const GridSpec& g = vel.grid;
  const std::vector<Vec2> uc = cell_centered_velocity(vel);
  const std::size_t n = g.cell_count();
  const auto weight = [&](std::size_t k) { return rho.values[k] * indicator.values[k]; };
  const auto basis = [&](int which, std::size_t k) -> Vec2 {
    switch (which) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      default: return cross(1.0, cell_center_of(g, k) - state.center);
    }
  };

  double worst = 0.0;
  for (int b = 0; b < 3; ++b) {
    const double defect = pairwise_reduce(0, n, [&](std::size_t k) {
      const Vec2 x = cell_center_of(g, k);
      return weight(k) * dot(uc[k] - state.velocity_at(x), basis(b, k));
    });
    const double scale = pairwise_reduce(
        0, n, [&](std::size_t k) { return weight(k) * norm(uc[k]) * norm(basis(b, k)); });
    if (scale > 0.0) worst = std::max(worst, std::abs(defect) / scale);
  }
  return worst;
}

RigidState advance_pose(RigidState state, double dt) {
  state.translation += dt * state.v_trans;
  state.rotation += dt * state.omega;
  return state;
}

}  // namespace rigidpen
