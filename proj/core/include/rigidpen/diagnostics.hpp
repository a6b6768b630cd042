#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidpen/grid.hpp"
#include "rigidpen/transport.hpp"

namespace rigidpen {

/// sqrt( sum over cells with phi < 0 of (D11^2 + 2 D12^2 + D22^2) dx^2 ).
/// Throws SolidVanished when no cell has phi < 0.
double deformation_norm_solid(const StaggeredVelocity& vel, const LevelSet& level);

/// log(e1 / e2) / log(eta1 / eta2). Throws DomainError on non-positive input
/// or eta1 == eta2.
double convergence_order(double e1, double e2, double eta1, double eta2);

enum class ProfileAxis { Horizontal, Vertical };
enum class VelocityComponent { U, V };

struct ProfileSample {
  double position = 0.0;
  double value = 0.0;
};

/// Samples `component` along the line y = coordinate (Horizontal) or
/// x = coordinate (Vertical), at the positions of that component's face
/// lattice along the line, in ascending order. Throws DomainError when the
/// line lies outside the domain.
std::vector<ProfileSample> cross_section_profile(const StaggeredVelocity& vel, ProfileAxis axis,
                                                 VelocityComponent component, double coordinate);

struct SweepEntry {
  double eta = 0.0;
  double d_norm = 0.0;
  std::optional<double> alpha;
  bool failed = false;
  std::string error;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  double dx = 0.0;
  double dt = 0.0;
  double t_probe = 0.0;
  std::uint64_t scenario_hash = 0;
};

/// Sorts by strictly decreasing eta and fills alpha of every successful entry
/// against the previous successful one. Throws DomainError on duplicate eta.
SweepReport make_sweep_report(std::vector<SweepEntry> entries, double dx, double dt,
                              double t_probe, std::uint64_t scenario_hash);

}  // namespace rigidpen
