#pragma once

#include "rigidpen/grid.hpp"

namespace rigidpen {

/// Density-weighted moments of the solid, midpoint quadrature on cells.
struct Moments {
  double mass = 0.0;
  Vec2 center;
  /// Polar moment about `center`; the 2D form of the inertia tensor.
  double inertia = 0.0;
};

struct RigidState {
  double mass = 0.0;
  Vec2 center;
  double inertia = 0.0;
  Vec2 v_trans;
  double omega = 0.0;
  /// Accumulated rotation angle since t = 0.
  double rotation = 0.0;
  /// Accumulated displacement of the body since t = 0.
  Vec2 translation;

  Vec2 velocity_at(Vec2 x) const { return v_trans + cross(omega, x - center); }
};

/// Throws SolidVanished when the weighted indicator sums to zero.
Moments compute_moments(const CellField& rho, const CellField& indicator);

/// Rigid velocity (V, omega) whose linear and angular momentum over the
/// solid match those of `vel`, using cell-centered velocities. Pose
/// accumulators in the result are zero.
RigidState rigid_velocity_from_flow(const StaggeredVelocity& vel, const CellField& rho,
                                    const CellField& indicator);

/// V + omega x r evaluated at every face center, walls included.
StaggeredVelocity rigid_field(const RigidState& state, const GridSpec& grid);

/// Orthogonality defect of u - u_s against the three rigid basis fields
/// (1,0), (0,1) and e_z x r in the rho*H weighted inner product:
///   max_xi |sum rho H (u - u_s) . xi dx^2| / sum rho H |u| |xi| dx^2.
/// Returns 0 when the normalizing sum vanishes.
double projection_residual(const StaggeredVelocity& vel, const CellField& rho,
                           const CellField& indicator, const RigidState& state);

/// Forward-Euler update of the pose accumulators.
RigidState advance_pose(RigidState state, double dt);

}  // namespace rigidpen
