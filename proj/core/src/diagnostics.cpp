#include "rigidpen/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rigidpen/errors.hpp"
#include "rigidpen/reduce.hpp"

namespace rigidpen {

double deformation_norm_solid(const StaggeredVelocity& vel, const LevelSet& level) {
  const std::vector<SymmetricTensor2> d = deformation_tensor_cellwise(vel);
  const std::vector<double>& phi = level.phi.values;
  if (std::none_of(phi.begin(), phi.end(), [](double p) { return p < 0.0; }))
    throw SolidVanished();
  const double sum = pairwise_reduce(0, d.size(), [&](std::size_t k) {
    if (!(phi[k] < 0.0)) return 0.0;
    const SymmetricTensor2& t = d[k];
    return t.d11 * t.d11 + 2.0 * t.d12 * t.d12 + t.d22 * t.d22;
  });
  return std::sqrt(sum * vel.grid.cell_area());
}

double convergence_order(double e1, double e2, double eta1, double eta2) {
  if (!(e1 > 0.0 && e2 > 0.0 && eta1 > 0.0 && eta2 > 0.0))
    throw DomainError("convergence_order needs positive errors and parameters");
  if (eta1 == eta2) throw DomainError("convergence_order needs distinct parameters");
  return std::log(e1 / e2) / std::log(eta1 / eta2);
}

std::vector<ProfileSample> cross_section_profile(const StaggeredVelocity& vel, ProfileAxis axis,
                                                 VelocityComponent component, double coordinate) {
  const GridSpec& g = vel.grid;
  const bool horizontal = axis == ProfileAxis::Horizontal;
  const double lo = horizontal ? g.origin().y : g.origin().x;
  const double hi = lo + (horizontal ? g.extent().y : g.extent().x);
  if (!(coordinate >= lo && coordinate <= hi))
    throw DomainError("profile line outside the domain");

  // Along-line lattice: nodes on cell edges when the component is normal to
  // the faces stacked along the line, cell centers otherwise.
  const bool on_edges = horizontal == (component == VelocityComponent::U);
  const int count = (horizontal ? g.nx() : g.ny()) + (on_edges ? 1 : 0);
  const double start = (horizontal ? g.origin().x : g.origin().y) + (on_edges ? 0.0 : 0.5 * g.dx());

  std::vector<ProfileSample> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double s = start + k * g.dx();
    const Vec2 point = horizontal ? Vec2{s, coordinate} : Vec2{coordinate, s};
    const Vec2 value = interpolate_velocity(vel, point).value;
    out.push_back({s, component == VelocityComponent::U ? value.x : value.y});
  }
  return out;
}

SweepReport make_sweep_report(std::vector<SweepEntry> entries, double dx, double dt,
                              double t_probe, std::uint64_t scenario_hash) {
  std::sort(entries.begin(), entries.end(),
            [](const SweepEntry& a, const SweepEntry& b) { return a.eta > b.eta; });
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (entries[k].eta == entries[k - 1].eta) throw DomainError("duplicate eta in sweep");

  const SweepEntry* previous = nullptr;
  for (SweepEntry& e : entries) {
    e.alpha.reset();
    if (e.failed) continue;
    if (previous && previous->d_norm > 0.0 && e.d_norm > 0.0)
      e.alpha = convergence_order(previous->d_norm, e.d_norm, previous->eta, e.eta);
    previous = &e;
  }
  return SweepReport{std::move(entries), dx, dt, t_probe, scenario_hash};
}

}  // namespace rigidpen
