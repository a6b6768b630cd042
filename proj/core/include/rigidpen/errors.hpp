#pragma once

#include <stdexcept>
#include <string>

namespace rigidpen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The solid indicator has no positive cell; the body left the grid or
/// transport failed.
class SolidVanished : public Error {
 public:
  SolidVanished() : Error("solid indicator is empty") {}
};

class CflExceeded : public Error {
 public:
  explicit CflExceeded(double courant)
      : Error("CFL condition violated, Courant number " + std::to_string(courant)),
        courant_(courant) {}
  double courant() const noexcept { return courant_; }

 private:
  double courant_;
};

/// The solid came within two cells of the domain walls.
class BoundaryContact : public Error {
 public:
  explicit BoundaryContact(double clearance)
      : Error("solid within two cells of the wall (clearance " +
              std::to_string(clearance) + ")"),
        clearance_(clearance) {}
  double clearance() const noexcept { return clearance_; }

 private:
  double clearance_;
};

class LinearSolveFailed : public Error {
 public:
  LinearSolveFailed(int iterations, double residual)
      : Error("linear solve did not converge after " + std::to_string(iterations) +
              " iterations, relative residual " + std::to_string(residual)),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class InvalidDensity : public Error {
 public:
  explicit InvalidDensity(double value)
      : Error("non-positive density " + std::to_string(value)) {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Configuration parse or validation failure. `line` is 0 when the error is
/// not tied to a specific line of the input.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rigidpen
