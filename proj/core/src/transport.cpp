#include "rigidpen/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rigidpen/errors.hpp"

namespace rigidpen {

Vec2 LevelSet::to_initial(Vec2 x) const {
  return reference0 + rotate(x - reference, -angle);
}

Vec2 LevelSet::to_current(Vec2 x0) const {
  return reference + rotate(x0 - reference0, angle);
}

double LevelSet::initial_distance(Vec2 x0) const {
  if (initial_shape) return initial_shape->signed_distance(x0);
  return sample_cell_field(initial_phi, x0);
}

LevelSet make_disk_level_set(const GridSpec& grid, const Disk& disk) {
  CellField phi = sample_cells(grid, [&](Vec2 x) { return disk.signed_distance(x); });
  LevelSet level{phi, disk, phi, disk.center, disk.center, 0.0};
  return level;
}

LevelSet make_level_set(CellField phi, Vec2 reference) {
  CellField initial = phi;
  return LevelSet{std::move(phi), std::nullopt, std::move(initial), reference, reference, 0.0};
}

CellField advect_density(const CellField& rho, const StaggeredVelocity& vel, double dt,
                         AdvectionScheme scheme) {
  const GridSpec& g = rho.grid;
  CellField out(g);
  if (scheme == AdvectionScheme::SemiLagrangian) {
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const Vec2 x = g.cell_center(i, j);
        const Vec2 foot = x - dt * interpolate_velocity(vel, x).value;
        out(i, j) = sample_cell_field(rho, foot);
      }
    return out;
  }

  const double c = dt / g.dx();
  double courant = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double uw = std::max(vel.u_at(i, j), 0.0);
      const double ue = std::min(vel.u_at(i + 1, j), 0.0);
      const double vs = std::max(vel.v_at(i, j), 0.0);
      const double vn = std::min(vel.v_at(i, j + 1), 0.0);
      courant = std::max(courant, c * (uw - ue + vs - vn));
      const double r = rho(i, j);
      const double rw = i > 0 ? rho(i - 1, j) : r;
      const double re = i + 1 < g.nx() ? rho(i + 1, j) : r;
      const double rs = j > 0 ? rho(i, j - 1) : r;
      const double rn = j + 1 < g.ny() ? rho(i, j + 1) : r;
      out(i, j) = r - c * (uw * (r - rw) + ue * (re - r) + vs * (r - rs) + vn * (rn - r));
    }
  }
  if (courant > 1.0 + 1e-12) throw CflExceeded(courant);
  return out;
}

double solid_wall_clearance(const LevelSet& level) {
  const GridSpec& g = level.grid();
  double clearance = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (level.phi(i, j) < 0.0) clearance = std::min(clearance, g.wall_distance(g.cell_center(i, j)));
  return clearance;
}

LevelSet advect_indicator(const LevelSet& level, const RigidState& state, double dt,
                          IndicatorTransport mode) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const GridSpec& g = level.grid();
  LevelSet next = level;

  const Vec2 step = dt * state.velocity_at(level.reference);
  const double turn = dt * state.omega;
  if (step == Vec2{} && turn == 0.0) return next;

  next.reference = level.reference + step;
  next.angle = level.angle + turn;
  if (mode == IndicatorTransport::ExactRigidTransform) {
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        next.phi(i, j) = next.initial_distance(next.to_initial(g.cell_center(i, j)));
  } else {
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const Vec2 x = g.cell_center(i, j);
        next.phi(i, j) = sample_cell_field(level.phi, x - dt * state.velocity_at(x));
      }
  }

  const double clearance = solid_wall_clearance(next);
  if (clearance < 2.0 * g.dx()) throw BoundaryContact(clearance);
  return next;
}

CellField indicator_from_levelset(const LevelSet& level, bool sharp, double width) {
  const GridSpec& g = level.grid();
  CellField h(g);
  if (sharp) {
    for (std::size_t k = 0; k < h.values.size(); ++k) h.values[k] = level.phi.values[k] < 0.0 ? 1.0 : 0.0;
    return h;
  }
  const double scale = 1.0 / (2.0 * g.dx() * width);
  for (std::size_t k = 0; k < h.values.size(); ++k)
    h.values[k] = std::clamp(0.5 - level.phi.values[k] * scale, 0.0, 1.0);
  return h;
}

double solid_area(const LevelSet& level) {
  const auto count = std::count_if(level.phi.values.begin(), level.phi.values.end(),
                                   [](double p) { return p < 0.0; });
  return static_cast<double>(count) * level.grid().cell_area();
}

}  // namespace rigidpen
