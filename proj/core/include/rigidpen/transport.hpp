#pragma once

#include <optional>

#include "rigidpen/grid.hpp"
#include "rigidpen/params.hpp"
#include "rigidpen/rigid_body.hpp"

namespace rigidpen {

struct Disk {
  Vec2 center;
  double radius = 0.0;

  double signed_distance(Vec2 x) const { return norm(x - center) - radius; }
};

/// Signed distance to the solid boundary, negative inside. Alongside the
/// current values it keeps the t = 0 shape and the rigid pose that maps it
/// to its current position, so the rigid-transform path never accumulates
/// interpolation error.
struct LevelSet {
  CellField phi;
  std::optional<Disk> initial_shape;
  CellField initial_phi;
  /// Tracked body point: `reference0` at t = 0, `reference` now.
  Vec2 reference0;
  Vec2 reference;
  double angle = 0.0;

  const GridSpec& grid() const { return phi.grid; }
  /// Map a point of the current configuration back to the t = 0 one.
  Vec2 to_initial(Vec2 x) const;
  Vec2 to_current(Vec2 x0) const;
  /// Signed distance of the initial shape at an initial-configuration point.
  double initial_distance(Vec2 x0) const;
};

LevelSet make_disk_level_set(const GridSpec& grid, const Disk& disk);
/// Level set from sampled values; `reference` is the body point tracked by
/// the pose (normally the centroid).
LevelSet make_level_set(CellField phi, Vec2 reference);

/// Throws CflExceeded when the donor-cell Courant number exceeds 1 with
/// Upwind1.
CellField advect_density(const CellField& rho, const StaggeredVelocity& vel, double dt,
                         AdvectionScheme scheme);

/// Moves the solid rigidly by `state` over dt. Throws BoundaryContact when a
/// solid cell ends up within two cells of a wall.
LevelSet advect_indicator(const LevelSet& level, const RigidState& state, double dt,
                          IndicatorTransport mode);

/// Sharp: H = 1 where phi < 0. Smooth: H = clamp(1/2 - phi / (2 dx w), 0, 1).
CellField indicator_from_levelset(const LevelSet& level, bool sharp, double width = 1.0);

/// Area of the cells with phi < 0.
double solid_area(const LevelSet& level);

/// Smallest wall distance of a cell center with phi < 0, +inf if none.
double solid_wall_clearance(const LevelSet& level);

}  // namespace rigidpen
