#include "rigidpen/flow_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rigidpen/errors.hpp"
#include "rigidpen/reduce.hpp"

namespace rigidpen {

CellField density_from_indicator(const CellField& indicator, const SolverParams& params) {
  CellField rho(indicator.grid);
  for (std::size_t k = 0; k < rho.values.size(); ++k) {
    const double h = indicator.values[k];
    rho.values[k] = params.rho_s * h + params.rho_f * (1.0 - h);
  }
  return rho;
}

SimState make_initial_state(LevelSet level, const SolverParams& params) {
  const GridSpec grid = level.grid();
  const CellField h = indicator_from_levelset(level, params.sharp_indicator, params.indicator_width);
  const Moments m = compute_moments(density_from_indicator(h, params), h);
  RigidState body;
  body.mass = m.mass;
  body.center = m.center;
  body.inertia = m.inertia;
  return SimState{StaggeredVelocity(grid), CellField(grid), std::move(level), body, 0.0, 0};
}

namespace {

StaggeredVelocity advect_upwind(const StaggeredVelocity& vel, double dt, double& courant) {
  const GridSpec& g = vel.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  const double c = dt / g.dx();
  StaggeredVelocity out(g);
  courant = 0.0;

  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const double u = vel.u_at(i, j);
      const double v = 0.25 * (vel.v_at(i - 1, j) + vel.v_at(i, j) + vel.v_at(i - 1, j + 1) +
                               vel.v_at(i, j + 1));
      const double south = j > 0 ? vel.u_at(i, j - 1) : -u;
      const double north = j + 1 < ny ? vel.u_at(i, j + 1) : -u;
      const double dudx = u > 0.0 ? u - vel.u_at(i - 1, j) : vel.u_at(i + 1, j) - u;
      const double dudy = v > 0.0 ? u - south : north - u;
      out.u_at(i, j) = u - c * (u * dudx + v * dudy);
      courant = std::max(courant, c * (std::abs(u) + std::abs(v)));
    }
  }
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double v = vel.v_at(i, j);
      const double u = 0.25 * (vel.u_at(i, j - 1) + vel.u_at(i + 1, j - 1) + vel.u_at(i, j) +
                               vel.u_at(i + 1, j));
      const double west = i > 0 ? vel.v_at(i - 1, j) : -v;
      const double east = i + 1 < nx ? vel.v_at(i + 1, j) : -v;
      const double dvdx = u > 0.0 ? v - west : east - v;
      const double dvdy = v > 0.0 ? v - vel.v_at(i, j - 1) : vel.v_at(i, j + 1) - v;
      out.v_at(i, j) = v - c * (u * dvdx + v * dvdy);
      courant = std::max(courant, c * (std::abs(u) + std::abs(v)));
    }
  }
  return out;
}

StaggeredVelocity advect_semi_lagrangian(const StaggeredVelocity& vel, double dt,
                                         double& courant) {
  const GridSpec& g = vel.grid;
  StaggeredVelocity out(g);
  courant = 0.0;
  const double c = dt / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) {
      const Vec2 x = g.u_face(i, j);
      const Vec2 a = interpolate_velocity(vel, x).value;
      courant = std::max(courant, c * (std::abs(a.x) + std::abs(a.y)));
      out.u_at(i, j) = interpolate_velocity(vel, x - dt * a).value.x;
    }
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Vec2 x = g.v_face(i, j);
      const Vec2 a = interpolate_velocity(vel, x).value;
      courant = std::max(courant, c * (std::abs(a.x) + std::abs(a.y)));
      out.v_at(i, j) = interpolate_velocity(vel, x - dt * a).value.y;
    }
  return out;
}

void check_density(const CellField& rho) {
  for (double r : rho.values)
    if (!(r > 0.0)) throw InvalidDensity(r);
}

}  // namespace

StaggeredVelocity predict_velocity(const StaggeredVelocity& vel, const CellField& rho,
                                   const SolverParams& params, PredictStats* stats) {
  check_density(rho);
  double courant = 0.0;
  StaggeredVelocity star = params.advection_scheme == AdvectionScheme::Upwind1
                               ? advect_upwind(vel, params.dt, courant)
                               : advect_semi_lagrangian(vel, params.dt, courant);
  if (params.advection_scheme == AdvectionScheme::Upwind1 && courant > 1.0)
    throw CflExceeded(courant);
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(star.u.begin(), star.u.end(), finite) ||
      !std::all_of(star.v.begin(), star.v.end(), finite))
    throw CflExceeded(std::numeric_limits<double>::infinity());

  for (double& u : star.u) u += params.dt * params.gravity.x;
  for (double& v : star.v) v += params.dt * params.gravity.y;
  star.zero_boundary();

  // (rho I - mu dt Laplacian) u = rho u*, one solve per component.
  const FaceScalars rho_face = face_average(rho);
  int iters = 0;
  for (FaceComponent comp : {FaceComponent::U, FaceComponent::V}) {
    std::vector<double>& x = comp == FaceComponent::U ? star.u : star.v;
    const std::vector<double>& r = comp == FaceComponent::U ? rho_face.u : rho_face.v;
    std::vector<double> rhs(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) rhs[k] = r[k] * x[k];
    const DiffusionOperator op(comp, rho_face, params.mu * params.dt);
    iters += conjugate_gradient(op, rhs, x, params.poisson_tol, params.poisson_max_iter).iterations;
  }
  star.zero_boundary();

  if (stats) {
    stats->cfl = courant;
    stats->diffusion_iters = iters;
  }
  return star;
}

Projection project_velocity(const StaggeredVelocity& vel_star, const CellField& rho,
                            const SolverParams& params, const CellField* initial_guess) {
  check_density(rho);
  const GridSpec& g = vel_star.grid;
  FaceScalars beta = face_average(rho);
  for (double& b : beta.u) b = params.dt / b;
  for (double& b : beta.v) b = params.dt / b;

  CellField rhs = divergence(vel_star);
  for (double& r : rhs.values) r = -r;

  Projection out{vel_star, initial_guess ? *initial_guess : CellField(g), {}};
  const PressureOperator op(beta);
  out.stats = conjugate_gradient(op, rhs.values, out.pressure.values, params.poisson_tol,
                                 params.poisson_max_iter);

  const StaggeredVelocity grad = gradient(out.pressure);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) out.vel.u_at(i, j) -= beta.u_at(i, j) * grad.u_at(i, j);
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out.vel.v_at(i, j) -= beta.v_at(i, j) * grad.v_at(i, j);
  return out;
}

StaggeredVelocity penalize_velocity(const StaggeredVelocity& vel, const CellField& indicator,
                                    const RigidState& state, const SolverParams& params) {
  const GridSpec& g = vel.grid;
  const FaceScalars h = face_average(indicator);
  const double k = params.dt / params.eta;
  const bool implicit = params.penalization == PenalizationMode::Implicit;
  StaggeredVelocity out = vel;

  const auto blend = [&](double u, double hf, Vec2 x, bool x_component) {
    if (hf == 0.0) return u;
    const Vec2 us = state.velocity_at(x);
    const double target = x_component ? us.x : us.y;
    const double w = k * hf;
    return implicit ? (u + w * target) / (1.0 + w) : (1.0 - w) * u + w * target;
  };
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i)
      out.u_at(i, j) = blend(vel.u_at(i, j), h.u_at(i, j), g.u_face(i, j), true);
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out.v_at(i, j) = blend(vel.v_at(i, j), h.v_at(i, j), g.v_face(i, j), false);
  return out;
}

double kinetic_energy(const StaggeredVelocity& vel, const CellField& rho) {
  const FaceScalars r = face_average(rho);
  const double eu = pairwise_reduce(0, vel.u.size(),
                                    [&](std::size_t k) { return r.u[k] * vel.u[k] * vel.u[k]; });
  const double ev = pairwise_reduce(0, vel.v.size(),
                                    [&](std::size_t k) { return r.v[k] * vel.v[k] * vel.v[k]; });
  return 0.5 * (eu + ev) * vel.grid.cell_area();
}

double penalization_defect(const StaggeredVelocity& vel, const CellField& indicator,
                           const RigidState& state) {
  const GridSpec& g = vel.grid;
  const FaceScalars h = face_average(indicator);
  const StaggeredVelocity us = rigid_field(state, g);
  const auto term = [](double hf, double a, double b) {
    const double d = hf * (a - b);
    return d * d;
  };
  double s = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) s += term(h.u_at(i, j), vel.u_at(i, j), us.u_at(i, j));
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) s += term(h.v_at(i, j), vel.v_at(i, j), us.v_at(i, j));
  return std::sqrt(s * g.cell_area());
}

StepResult full_step(const SimState& state, const SolverParams& params) {
  const SolverParams& p = params;
  const CellField h = indicator_from_levelset(state.level, p.sharp_indicator, p.indicator_width);
  const CellField rho = density_from_indicator(h, p);

  StepDiagnostics diag;
  PredictStats predict_stats;
  const StaggeredVelocity predicted = predict_velocity(state.vel, rho, p, &predict_stats);
  Projection projected = project_velocity(predicted, rho, p, &state.pressure);
  diag.cfl = predict_stats.cfl;
  diag.diffusion_iters = predict_stats.diffusion_iters;
  diag.poisson_iters = projected.stats.iterations;
  diag.poisson_residual = projected.stats.relative_residual;

  RigidState body = rigid_velocity_from_flow(projected.vel, rho, h);
  body.rotation = state.body.rotation;
  body.translation = state.body.translation;

  StaggeredVelocity next_vel = penalize_velocity(projected.vel, h, body, p);
  CellField pressure = std::move(projected.pressure);
  if (p.post_penalization_projection) {
    Projection again = project_velocity(next_vel, rho, p);
    next_vel = std::move(again.vel);
    diag.poisson_iters += again.stats.iterations;
    for (std::size_t k = 0; k < pressure.values.size(); ++k)
      pressure.values[k] += again.pressure.values[k];
  }

  diag.max_divergence = max_abs(divergence(next_vel));
  diag.kinetic_energy = kinetic_energy(next_vel, rho);
  diag.penalization_defect = penalization_defect(next_vel, h, body);

  LevelSet level = advect_indicator(state.level, body, p.dt, p.indicator_transport);
  body = advance_pose(body, p.dt);

  return StepResult{SimState{std::move(next_vel), std::move(pressure), std::move(level), body,
                             double(state.step + 1) * p.dt, state.step + 1},
                    diag};
}

}  // namespace rigidpen
