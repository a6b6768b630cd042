#include "rigidpen/grid.hpp"

#include <algorithm>
#include <cmath>

#include "rigidpen/errors.hpp"

namespace rigidpen {

GridSpec::GridSpec(int nx, int ny, double dx, Vec2 origin)
    : nx_(nx), ny_(ny), dx_(dx), origin_(origin) {
  if (nx < 4 || ny < 4) throw DomainError("grid needs at least 4 cells per direction");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("grid spacing must be positive");
}

bool GridSpec::contains(Vec2 p) const noexcept {
  const Vec2 e = extent();
  const double slack = 1e-12 * std::max(e.x, e.y);
  return p.x >= origin_.x - slack && p.x <= origin_.x + e.x + slack &&
         p.y >= origin_.y - slack && p.y <= origin_.y + e.y + slack;
}

double GridSpec::wall_distance(Vec2 p) const noexcept {
  const Vec2 e = extent();
  return std::min({p.x - origin_.x, origin_.x + e.x - p.x, p.y - origin_.y, origin_.y + e.y - p.y});
}

void StaggeredVelocity::zero_boundary() {
  for (int j = 0; j < grid.ny(); ++j) {
    u_at(0, j) = 0.0;
    u_at(grid.nx(), j) = 0.0;
  }
  for (int i = 0; i < grid.nx(); ++i) {
    v_at(i, 0) = 0.0;
    v_at(i, grid.ny()) = 0.0;
  }
}

namespace {

struct LatticeCoord {
  int i0;
  double t;
};

// Locate `f` (lattice units) in a lattice of `n` nodes; the weight may leave
// [0, 1] near the ends, giving linear extrapolation.
LatticeCoord locate_extrapolating(double f, int n) {
  const int i0 = std::clamp(static_cast<int>(std::floor(f)), 0, n - 2);
  return {i0, f - i0};
}

LatticeCoord locate_clamped(double f, int n) {
  f = std::clamp(f, 0.0, double(n - 1));
  const int i0 = std::min(static_cast<int>(std::floor(f)), n - 2);
  return {i0, f - i0};
}

double bilerp(double f00, double f10, double f01, double f11, double tx, double ty) {
  return (1.0 - ty) * ((1.0 - tx) * f00 + tx * f10) + ty * ((1.0 - tx) * f01 + tx * f11);
}

}  // namespace

InterpolatedVelocity interpolate_velocity(const StaggeredVelocity& vel, Vec2 point) {
  const GridSpec& g = vel.grid;
  InterpolatedVelocity out;
  const Vec2 lo = g.origin();
  const Vec2 hi = lo + g.extent();
  if (!g.contains(point)) out.clamped = true;
  point.x = std::clamp(point.x, lo.x, hi.x);
  point.y = std::clamp(point.y, lo.y, hi.y);

  const double fx = (point.x - lo.x) / g.dx();
  const double fy = (point.y - lo.y) / g.dx();
  {
    const auto [i0, tx] = locate_extrapolating(fx, g.nx() + 1);
    const auto [j0, ty] = locate_extrapolating(fy - 0.5, g.ny());
    out.value.x = bilerp(vel.u_at(i0, j0), vel.u_at(i0 + 1, j0), vel.u_at(i0, j0 + 1),
                         vel.u_at(i0 + 1, j0 + 1), tx, ty);
  }
  {
    const auto [i0, tx] = locate_extrapolating(fx - 0.5, g.nx());
    const auto [j0, ty] = locate_extrapolating(fy, g.ny() + 1);
    out.value.y = bilerp(vel.v_at(i0, j0), vel.v_at(i0 + 1, j0), vel.v_at(i0, j0 + 1),
                         vel.v_at(i0 + 1, j0 + 1), tx, ty);
  }
  return out;
}

double sample_cell_field(const CellField& field, Vec2 point) {
  const GridSpec& g = field.grid;
  const auto [i0, tx] = locate_clamped((point.x - g.origin().x) / g.dx() - 0.5, g.nx());
  const auto [j0, ty] = locate_clamped((point.y - g.origin().y) / g.dx() - 0.5, g.ny());
  return bilerp(field(i0, j0), field(i0 + 1, j0), field(i0, j0 + 1), field(i0 + 1, j0 + 1), tx,
                ty);
}

std::vector<Vec2> cell_centered_velocity(const StaggeredVelocity& vel) {
  const GridSpec& g = vel.grid;
  std::vector<Vec2> out(g.cell_count());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out[g.cell_index(i, j)] = {0.5 * (vel.u_at(i, j) + vel.u_at(i + 1, j)),
                                 0.5 * (vel.v_at(i, j) + vel.v_at(i, j + 1))};
  return out;
}

CellField divergence(const StaggeredVelocity& vel) {
  const GridSpec& g = vel.grid;
  CellField div(g);
  const double inv_dx = 1.0 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      div(i, j) = (vel.u_at(i + 1, j) - vel.u_at(i, j) + vel.v_at(i, j + 1) - vel.v_at(i, j)) *
                  inv_dx;
  return div;
}

StaggeredVelocity gradient(const CellField& p) {
  const GridSpec& g = p.grid;
  StaggeredVelocity grad(g);
  const double inv_dx = 1.0 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) grad.u_at(i, j) = (p(i, j) - p(i - 1, j)) * inv_dx;
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) grad.v_at(i, j) = (p(i, j) - p(i, j - 1)) * inv_dx;
  return grad;
}

FaceScalars face_average(const CellField& c) {
  const GridSpec& g = c.grid;
  FaceScalars f(g);
  for (int j = 0; j < g.ny(); ++j) {
    f.u_at(0, j) = c(0, j);
    f.u_at(g.nx(), j) = c(g.nx() - 1, j);
    for (int i = 1; i < g.nx(); ++i) f.u_at(i, j) = 0.5 * (c(i - 1, j) + c(i, j));
  }
  for (int i = 0; i < g.nx(); ++i) {
    f.v_at(i, 0) = c(i, 0);
    f.v_at(i, g.ny()) = c(i, g.ny() - 1);
  }
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) f.v_at(i, j) = 0.5 * (c(i, j - 1) + c(i, j));
  return f;
}

std::vector<SymmetricTensor2> deformation_tensor_cellwise(const StaggeredVelocity& vel) {
  const GridSpec& g = vel.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  const double inv_dx = 1.0 / g.dx();

  // Shear rate du/dy + dv/dx at the (nx+1) x (ny+1) cell corners.
  std::vector<double> shear(std::size_t(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    const int ju = std::clamp(j, 1, ny - 1);  // u rows ju-1, ju bracket the node
    for (int i = 0; i <= nx; ++i) {
      const int iv = std::clamp(i, 1, nx - 1);
      const double dudy = (vel.u_at(i, ju) - vel.u_at(i, ju - 1)) * inv_dx;
      const double dvdx = (vel.v_at(iv, j) - vel.v_at(iv - 1, j)) * inv_dx;
      shear[std::size_t(j) * (nx + 1) + i] = dudy + dvdx;
    }
  }

  std::vector<SymmetricTensor2> d(g.cell_count());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto node = [&](int a, int b) { return shear[std::size_t(b) * (nx + 1) + a]; };
      SymmetricTensor2& t = d[g.cell_index(i, j)];
      t.d11 = (vel.u_at(i + 1, j) - vel.u_at(i, j)) * inv_dx;
      t.d22 = (vel.v_at(i, j + 1) - vel.v_at(i, j)) * inv_dx;
      t.d12 = 0.125 * (node(i, j) + node(i + 1, j) + node(i, j + 1) + node(i + 1, j + 1));
    }
  }
  return d;
}

double max_abs(const CellField& c) {
  double m = 0.0;
  for (double x : c.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace rigidpen
