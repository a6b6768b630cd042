#pragma once

#include <span>
#include <vector>

#include "rigidpen/grid.hpp"

namespace rigidpen {

/// Symmetric positive (semi-)definite operator applied matrix-free.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual std::vector<double> diagonal() const = 0;
  /// True when constants span the null space (pure Neumann problems).
  virtual bool singular() const { return false; }
};

/// -div(beta grad p) on cells with homogeneous Neumann walls. `beta` holds one
/// coefficient per face; wall faces are ignored.
class PressureOperator final : public LinearOperator {
 public:
  explicit PressureOperator(FaceScalars beta);
  std::size_t size() const override { return beta_.grid.cell_count(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  std::vector<double> diagonal() const override;
  bool singular() const override { return true; }

 private:
  FaceScalars beta_;
};

enum class FaceComponent { U, V };

/// rho_face I - mu dt Laplacian on one velocity lattice with no-slip walls:
/// wall-normal faces are pinned (identity rows), tangential walls impose a
/// zero value half a cell beyond the last face row.
class DiffusionOperator final : public LinearOperator {
 public:
  DiffusionOperator(FaceComponent component, FaceScalars rho_face, double mu_dt);
  std::size_t size() const override;
  void apply(std::span<const double> x, std::span<double> y) const override;
  std::vector<double> diagonal() const override;

 private:
  // Calls f(k, is_pinned, west, east, south, north) with neighbour indices or
  // -1 for a pinned wall face and -2 for a tangential wall.
  template <class F>
  void for_each_row(const F& f) const;

  FaceComponent component_;
  FaceScalars rho_face_;
  double mu_dt_;
};

struct SolveStats {
  int iterations = 0;
  /// ||b - A x|| / ||b|| at exit (0 when b = 0).
  double relative_residual = 0.0;
  /// ||b - A x0|| / ||b|| for the supplied initial guess.
  double initial_relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradient. `x` holds the initial guess on
/// entry. For singular operators the right-hand side is made zero-mean and
/// the solution is returned with zero mean. Throws LinearSolveFailed when
/// `max_iter` is reached or the residual stops being finite.
SolveStats conjugate_gradient(const LinearOperator& op, std::span<const double> b,
                              std::span<double> x, double tol, int max_iter);

}  // namespace rigidpen
