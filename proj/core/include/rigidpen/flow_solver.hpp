#pragma once

#include "rigidpen/grid.hpp"
#include "rigidpen/linear_solver.hpp"
#include "rigidpen/params.hpp"
#include "rigidpen/rigid_body.hpp"
#include "rigidpen/transport.hpp"

namespace rigidpen {

struct SimState {
  StaggeredVelocity vel;
  /// Pressure of the last projection; reused as the next initial guess.
  CellField pressure;
  LevelSet level;
  RigidState body;
  double time = 0.0;
  long step = 0;
};

struct StepDiagnostics {
  double max_divergence = 0.0;
  int poisson_iters = 0;
  double poisson_residual = 0.0;
  int diffusion_iters = 0;
  /// 1/2 sum rho_face |u|^2 dx^2 over all faces.
  double kinetic_energy = 0.0;
  /// || H (u - u_s) ||_L2 on faces after penalization.
  double penalization_defect = 0.0;
  double cfl = 0.0;
};

/// Fluid at rest, pressure zero, body moments from the initial indicator.
SimState make_initial_state(LevelSet level, const SolverParams& params);

/// rho_s H + rho_f (1 - H).
CellField density_from_indicator(const CellField& indicator, const SolverParams& params);

struct PredictStats {
  double cfl = 0.0;
  int diffusion_iters = 0;
};

/// Advection, implicit diffusion and gravity; wall-normal faces stay 0.
/// Throws CflExceeded when the Upwind1 Courant number exceeds 1 or the
/// advected field is not finite, and LinearSolveFailed.
StaggeredVelocity predict_velocity(const StaggeredVelocity& vel, const CellField& rho,
                                   const SolverParams& params, PredictStats* stats = nullptr);

struct Projection {
  StaggeredVelocity vel;
  CellField pressure;
  SolveStats stats;
};

/// Solves div((dt/rho) grad p) = div(vel_star) with Neumann walls and a
/// zero-mean gauge, and returns vel_star - (dt/rho) grad p. Throws
/// InvalidDensity or LinearSolveFailed.
Projection project_velocity(const StaggeredVelocity& vel_star, const CellField& rho,
                            const SolverParams& params, const CellField* initial_guess = nullptr);

/// Face-wise blend toward the rigid velocity, with the indicator averaged to
/// faces. Implicit: (u + k H u_s) / (1 + k H); explicit: (1 - k H) u + k H u_s,
/// with k = dt / eta.
StaggeredVelocity penalize_velocity(const StaggeredVelocity& vel, const CellField& indicator,
                                    const RigidState& state, const SolverParams& params);

double kinetic_energy(const StaggeredVelocity& vel, const CellField& rho);

double penalization_defect(const StaggeredVelocity& vel, const CellField& indicator,
                           const RigidState& state);

struct StepResult {
  SimState state;
  StepDiagnostics diagnostics;
};

/// One time step: predict, project, extract the rigid velocity of the
/// projected field, penalize, move the solid. The input state is untouched,
/// so a thrown BoundaryContact leaves the caller's state intact.
StepResult full_step(const SimState& state, const SolverParams& params);

}  // namespace rigidpen
