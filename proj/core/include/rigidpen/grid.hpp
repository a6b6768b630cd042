#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rigidpen {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// Scalar 2D cross product a x b.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// omega x r for an out-of-plane angular velocity omega.
constexpr Vec2 cross(double omega, Vec2 r) { return {-omega * r.y, omega * r.x}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Uniform rectangular grid of square cells. Cell (i, j) spans
/// [origin.x + i dx, origin.x + (i+1) dx] x [origin.y + j dx, origin.y + (j+1) dx].
class GridSpec {
 public:
  GridSpec(int nx, int ny, double dx, Vec2 origin = {});

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  Vec2 origin() const noexcept { return origin_; }
  Vec2 extent() const noexcept { return {nx_ * dx_, ny_ * dx_}; }
  double cell_area() const noexcept { return dx_ * dx_; }

  std::size_t cell_count() const noexcept { return std::size_t(nx_) * ny_; }
  std::size_t u_count() const noexcept { return std::size_t(nx_ + 1) * ny_; }
  std::size_t v_count() const noexcept { return std::size_t(nx_) * (ny_ + 1); }

  std::size_t cell_index(int i, int j) const noexcept { return std::size_t(j) * nx_ + i; }
  std::size_t u_index(int i, int j) const noexcept { return std::size_t(j) * (nx_ + 1) + i; }
  std::size_t v_index(int i, int j) const noexcept { return std::size_t(j) * nx_ + i; }

  Vec2 cell_center(int i, int j) const noexcept {
    return {origin_.x + (i + 0.5) * dx_, origin_.y + (j + 0.5) * dx_};
  }
  Vec2 u_face(int i, int j) const noexcept {
    return {origin_.x + i * dx_, origin_.y + (j + 0.5) * dx_};
  }
  Vec2 v_face(int i, int j) const noexcept {
    return {origin_.x + (i + 0.5) * dx_, origin_.y + j * dx_};
  }
  /// Closed-domain membership with a relative slack of 1e-12.
  bool contains(Vec2 p) const noexcept;
  /// Distance from p to the nearest wall (negative outside).
  double wall_distance(Vec2 p) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int nx_;
  int ny_;
  double dx_;
  Vec2 origin_;
};

/// One scalar per cell, row-major (i fastest).
struct CellField {
  explicit CellField(const GridSpec& g, double fill = 0.0) : grid(g), values(g.cell_count(), fill) {}

  double& operator()(int i, int j) { return values[grid.cell_index(i, j)]; }
  double operator()(int i, int j) const { return values[grid.cell_index(i, j)]; }

  GridSpec grid;
  std::vector<double> values;
};

/// Face-centered scalars on the MAC lattice: `u` on the (nx+1) x ny vertical
/// faces, `v` on the nx x (ny+1) horizontal faces. Used for velocities and
/// for face coefficients.
struct StaggeredVelocity {
  explicit StaggeredVelocity(const GridSpec& g, double fill_u = 0.0, double fill_v = 0.0)
      : grid(g), u(g.u_count(), fill_u), v(g.v_count(), fill_v) {}

  double& u_at(int i, int j) { return u[grid.u_index(i, j)]; }
  double u_at(int i, int j) const { return u[grid.u_index(i, j)]; }
  double& v_at(int i, int j) { return v[grid.v_index(i, j)]; }
  double v_at(int i, int j) const { return v[grid.v_index(i, j)]; }

  /// Zero the wall-normal faces (u at i = 0, nx and v at j = 0, ny).
  void zero_boundary();

  GridSpec grid;
  std::vector<double> u;
  std::vector<double> v;
};

using FaceScalars = StaggeredVelocity;

struct SymmetricTensor2 {
  double d11 = 0.0;
  double d12 = 0.0;
  double d22 = 0.0;
};

template <class F>
StaggeredVelocity sample_faces(const GridSpec& g, const F& field) {
  StaggeredVelocity vel(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i) vel.u_at(i, j) = field(g.u_face(i, j)).x;
  for (int j = 0; j <= g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) vel.v_at(i, j) = field(g.v_face(i, j)).y;
  return vel;
}

template <class F>
CellField sample_cells(const GridSpec& g, const F& field) {
  CellField c(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) c(i, j) = field(g.cell_center(i, j));
  return c;
}

struct InterpolatedVelocity {
  Vec2 value;
  bool clamped = false;  ///< the query point was outside the domain
};

/// Bilinear interpolation of each component on its own face lattice. Points
/// in the half-cell strips beyond the outermost face rows are extrapolated
/// linearly, so the result is exact for affine fields over the whole closed
/// domain. Points outside the domain are clamped onto it.
InterpolatedVelocity interpolate_velocity(const StaggeredVelocity& vel, Vec2 point);

/// Bilinear sample of a cell field at `point`; the lattice is clamped at the
/// outermost cell centers (constant extension), so the result stays within
/// the field's range.
double sample_cell_field(const CellField& field, Vec2 point);

std::vector<Vec2> cell_centered_velocity(const StaggeredVelocity& vel);

CellField divergence(const StaggeredVelocity& vel);

/// Face gradient of a cell scalar; wall-normal faces get 0.
StaggeredVelocity gradient(const CellField& p);

/// Average of the two cells adjacent to every face; wall faces copy their
/// single neighbour.
FaceScalars face_average(const CellField& c);

/// D11 and D22 from face differences at the cell, D12 averaged from the four
/// corner nodes. Node derivatives touching the wall are one-sided.
std::vector<SymmetricTensor2> deformation_tensor_cellwise(const StaggeredVelocity& vel);

double max_abs(const CellField& c);

}  // namespace rigidpen
