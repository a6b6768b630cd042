#include "rigidpen/linear_solver.hpp"

#include <cmath>

#include "rigidpen/errors.hpp"
#include "rigidpen/reduce.hpp"

namespace rigidpen {

PressureOperator::PressureOperator(FaceScalars beta) : beta_(std::move(beta)) {}

void PressureOperator::apply(std::span<const double> x, std::span<double> y) const {
  const GridSpec& g = beta_.grid;
  const int nx = g.nx();
  const int ny = g.ny();
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.cell_index(i, j);
      const double xc = x[k];
      double s = 0.0;
      if (i > 0) s += beta_.u_at(i, j) * (xc - x[k - 1]);
      if (i + 1 < nx) s += beta_.u_at(i + 1, j) * (xc - x[k + 1]);
      if (j > 0) s += beta_.v_at(i, j) * (xc - x[k - nx]);
      if (j + 1 < ny) s += beta_.v_at(i, j + 1) * (xc - x[k + nx]);
      y[k] = s * inv_dx2;
    }
  }
}

std::vector<double> PressureOperator::diagonal() const {
  const GridSpec& g = beta_.grid;
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());
  std::vector<double> d(g.cell_count());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double s = 0.0;
      if (i > 0) s += beta_.u_at(i, j);
      if (i + 1 < g.nx()) s += beta_.u_at(i + 1, j);
      if (j > 0) s += beta_.v_at(i, j);
      if (j + 1 < g.ny()) s += beta_.v_at(i, j + 1);
      d[g.cell_index(i, j)] = s * inv_dx2;
    }
  return d;
}

DiffusionOperator::DiffusionOperator(FaceComponent component, FaceScalars rho_face, double mu_dt)
    : component_(component), rho_face_(std::move(rho_face)), mu_dt_(mu_dt) {}

std::size_t DiffusionOperator::size() const {
  return component_ == FaceComponent::U ? rho_face_.grid.u_count() : rho_face_.grid.v_count();
}

template <class F>
void DiffusionOperator::for_each_row(const F& f) const {
  const GridSpec& g = rho_face_.grid;
  constexpr long kPinned = -1;
  constexpr long kWall = -2;
  if (component_ == FaceComponent::U) {
    const int mx = g.nx() + 1;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < mx; ++i) {
        const long k = static_cast<long>(g.u_index(i, j));
        if (i == 0 || i == g.nx()) {
          f(k, true, kPinned, kPinned, kPinned, kPinned);
          continue;
        }
        f(k, false, i - 1 == 0 ? kPinned : k - 1, i + 1 == g.nx() ? kPinned : k + 1,
          j == 0 ? kWall : k - mx, j + 1 == g.ny() ? kWall : k + mx);
      }
  } else {
    const int mx = g.nx();
    for (int j = 0; j <= g.ny(); ++j)
      for (int i = 0; i < mx; ++i) {
        const long k = static_cast<long>(g.v_index(i, j));
        if (j == 0 || j == g.ny()) {
          f(k, true, kPinned, kPinned, kPinned, kPinned);
          continue;
        }
        f(k, false, i == 0 ? kWall : k - 1, i + 1 == mx ? kWall : k + 1,
          j - 1 == 0 ? kPinned : k - mx, j + 1 == g.ny() ? kPinned : k + mx);
      }
  }
}

void DiffusionOperator::apply(std::span<const double> x, std::span<double> y) const {
  const double c = mu_dt_ / (rho_face_.grid.dx() * rho_face_.grid.dx());
  const std::vector<double>& rho = component_ == FaceComponent::U ? rho_face_.u : rho_face_.v;
  for_each_row([&](long k, bool pinned, long w, long e, long s, long n) {
    if (pinned) {
      y[k] = x[k];
      return;
    }
    const double xc = x[k];
    double lap = 0.0;
    for (long nb : {w, e, s, n}) {
      if (nb >= 0) lap += xc - x[nb];
      else if (nb == -1) lap += xc;
      else lap += 2.0 * xc;
    }
    y[k] = rho[k] * xc + c * lap;
  });
}

std::vector<double> DiffusionOperator::diagonal() const {
  const double c = mu_dt_ / (rho_face_.grid.dx() * rho_face_.grid.dx());
  const std::vector<double>& rho = component_ == FaceComponent::U ? rho_face_.u : rho_face_.v;
  std::vector<double> d(size());
  for_each_row([&](long k, bool pinned, long w, long e, long s, long n) {
    if (pinned) {
      d[k] = 1.0;
      return;
    }
    double weight = 0.0;
    for (long nb : {w, e, s, n}) weight += nb == -2 ? 2.0 : 1.0;
    d[k] = rho[k] + c * weight;
  });
  return d;
}

namespace {

void remove_mean(std::span<double> v) {
  const double mean = pairwise_sum(v) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

}  // namespace

SolveStats conjugate_gradient(const LinearOperator& op, std::span<const double> b_in,
                              std::span<double> x, double tol, int max_iter) {
  const std::size_t n = op.size();
  std::vector<double> b(b_in.begin(), b_in.end());
  if (op.singular()) remove_mean(b);

  SolveStats stats;
  const double b_norm = std::sqrt(dot(b, b));
  if (!std::isfinite(b_norm)) throw LinearSolveFailed(0, b_norm);
  if (b_norm == 0.0) {
    for (double& xi : x) xi = 0.0;
    return stats;
  }

  const std::vector<double> diag = op.diagonal();
  std::vector<double> r(n), z(n), p(n), ap(n);
  op.apply(x, r);
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
  double r_norm = std::sqrt(dot(r, r));
  stats.initial_relative_residual = r_norm / b_norm;
  stats.relative_residual = stats.initial_relative_residual;

  const auto precondition = [&] {
    for (std::size_t k = 0; k < n; ++k) z[k] = diag[k] > 0.0 ? r[k] / diag[k] : r[k];
  };
  precondition();
  p = z;
  double rz = dot(r, z);

  while (r_norm > tol * b_norm) {
    if (stats.iterations >= max_iter) throw LinearSolveFailed(stats.iterations, r_norm / b_norm);
    op.apply(p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    ++stats.iterations;
    r_norm = std::sqrt(dot(r, r));
    stats.relative_residual = r_norm / b_norm;
    if (!std::isfinite(r_norm)) throw LinearSolveFailed(stats.iterations, r_norm);
    precondition();
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  if (op.singular()) remove_mean(x);
  return stats;
}

}  // namespace rigidpen
