#pragma once

#include "rigidpen/grid.hpp"

namespace rigidpen {

enum class AdvectionScheme { Upwind1, SemiLagrangian };
enum class IndicatorTransport { ExactRigidTransform, SemiLagrangian };

/// Implicit is the default. Explicit exists to reproduce the degenerate
/// eta = dt projection-method update.
enum class PenalizationMode { Implicit, Explicit };

struct SolverParams {
  double rho_s = 1.5;
  double rho_f = 1.0;
  double mu = 0.01;
  Vec2 gravity{0.0, -980.0};
  double eta = 1e-8;
  double dt = 1e-4;
  double poisson_tol = 1e-9;
  int poisson_max_iter = 20000;
  AdvectionScheme advection_scheme = AdvectionScheme::Upwind1;
  IndicatorTransport indicator_transport = IndicatorTransport::ExactRigidTransform;
  PenalizationMode penalization = PenalizationMode::Implicit;
  bool sharp_indicator = false;
  /// Half-width, in cells, of the smooth indicator ramp.
  double indicator_width = 2.0;
  bool post_penalization_projection = false;

  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

}  // namespace rigidpen
