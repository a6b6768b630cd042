#include "rigidpen/params.hpp"

#include "rigidpen/errors.hpp"

namespace rigidpen {

void SolverParams::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(what);
  };
  require(rho_s > 0.0, "rho_s must be positive");
  require(rho_f > 0.0, "rho_f must be positive");
  require(mu > 0.0, "mu must be positive");
  require(eta > 0.0, "eta must be positive");
  require(dt > 0.0, "dt must be positive");
  require(poisson_tol > 0.0 && poisson_tol < 1.0, "poisson_tol must lie in (0, 1)");
  require(poisson_max_iter > 0, "poisson_max_iter must be positive");
  require(indicator_width > 0.0, "indicator_width must be positive");
}

}  // namespace rigidpen
