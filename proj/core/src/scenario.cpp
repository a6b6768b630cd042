#include "rigidpen/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "rigidpen/errors.hpp"

namespace rigidpen {

namespace {

constexpr const char* kCsvVersion = "# rigidpen-csv v1\n";

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string eta_dir_name(double eta) { return "eta_" + format_double(eta); }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

bool ScenarioArtifacts::any_failed() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunResult& r) { return r.failed; });
}

SimState initial_state(const ScenarioConfig& config) {
  return make_initial_state(make_disk_level_set(config.grid(), config.body), config.params);
}

RunResult simulate(const ScenarioConfig& config, double eta, const std::filesystem::path& vtk_dir) {
  ScenarioConfig cfg = config;
  cfg.params.eta = eta;
  const SolverParams& params = cfg.params;

  RunResult run;
  run.eta = eta;

  std::multimap<long, double> probe_steps;
  for (double t : cfg.probe_times) probe_steps.emplace(cfg.step_of(t), t);
  std::multimap<long, ProfileRequest> profile_steps;
  for (const ProfileRequest& r : cfg.output.profiles) profile_steps.emplace(cfg.step_of(r.time), r);

  const auto observe = [&](const SimState& s) {
    for (auto [it, end] = probe_steps.equal_range(s.step); it != end; ++it) {
      ProbeRecord p;
      p.time = s.time;
      p.d_norm = deformation_norm_solid(s.vel, s.level);
      p.center = s.level.reference;
      p.v_trans = s.body.v_trans;
      p.omega = s.body.omega;
      p.solid_area = solid_area(s.level);
      run.probes.push_back(p);
    }
    for (auto [it, end] = profile_steps.equal_range(s.step); it != end; ++it) {
      const ProfileRequest& req = it->second;
      const double coordinate = req.coordinate.value_or(
          req.axis == ProfileAxis::Horizontal ? s.level.reference.y : s.level.reference.x);
      run.profiles.push_back(
          {req, coordinate, cross_section_profile(s.vel, req.axis, req.component, coordinate)});
    }
    if (!vtk_dir.empty() && cfg.output.vtk_every && s.step % *cfg.output.vtk_every == 0) {
      const std::string stem = std::to_string(s.step);
      write_file(vtk_dir / ("fields_" + stem + ".vtk"), vtk_fields(s, params));
      write_file(vtk_dir / ("interface_" + stem + ".vtk"), vtk_interface(s.level));
    }
  };

  SimState state = initial_state(cfg);
  try {
    observe(state);
    const long steps = cfg.step_count();
    for (long n = 0; n < steps; ++n) {
      StepResult result = full_step(state, params);
      state = std::move(result.state);
      run.steps.push_back({state.step, state.time, result.diagnostics});
      observe(state);
    }
  } catch (const Error& e) {
    run.failed = true;
    run.error = e.what();
  }
  run.final_state = std::move(state);
  return run;
}

namespace {

void write_run_files(const RunResult& run, const std::filesystem::path& dir) {
  write_file(dir / "diagnostics.csv", diagnostics_csv(run));
  write_file(dir / "probes.csv", probes_csv(run));
  for (const ProfileRecord& p : run.profiles)
    write_file(dir / ("profile_" + p.request.tag() + ".csv"), profile_csv(p));
}

}  // namespace

ScenarioArtifacts run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();
  const std::filesystem::path out =
      options.out_dir.empty() ? std::filesystem::path(config.output.csv_dir) : options.out_dir;
  ScenarioArtifacts artifacts;

  if (options.mode == RunMode::Single) {
    artifacts.runs.push_back(
        simulate(config, config.params.eta, options.write_files ? out : std::filesystem::path{}));
    if (options.write_files) write_run_files(artifacts.runs.front(), out);
    return artifacts;
  }

  if (config.sweep_etas.empty()) throw ConfigError("sweep requested but sweep.etas is empty");
  std::vector<double> etas = config.sweep_etas;
  std::sort(etas.begin(), etas.end(), std::greater<>());
  artifacts.runs.resize(etas.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < etas.size(); k = next++) {
      const std::filesystem::path dir = out / eta_dir_name(etas[k]);
      artifacts.runs[k] = simulate(config, etas[k], options.write_files ? dir : std::filesystem::path{});
      if (options.write_files) write_run_files(artifacts.runs[k], dir);
    }
  };
  const int threads = std::clamp(options.threads, 1, static_cast<int>(etas.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const double t_probe = config.probe_times.empty()
                             ? config.t_final
                             : *std::max_element(config.probe_times.begin(), config.probe_times.end());
  const long probe_step = config.step_of(t_probe);
  std::vector<SweepEntry> entries;
  for (const RunResult& run : artifacts.runs) {
    SweepEntry e;
    e.eta = run.eta;
    const auto probe = std::find_if(run.probes.begin(), run.probes.end(), [&](const ProbeRecord& p) {
      return config.step_of(p.time) == probe_step;
    });
    if (probe == run.probes.end()) {
      e.failed = true;
      e.error = run.failed ? run.error : "no probe recorded at t_probe";
    } else {
      e.d_norm = probe->d_norm;
    }
    entries.push_back(e);
  }
  artifacts.sweep = make_sweep_report(std::move(entries), config.dx, config.params.dt, t_probe,
                                      config.hash());
  if (options.write_files) write_file(out / "sweep.csv", sweep_csv(*artifacts.sweep));
  return artifacts;
}

std::string diagnostics_csv(const RunResult& run) {
  std::string s = kCsvVersion;
  s += "step,t,max_div,E_kin,defect,cfl,poisson_iters\n";
  for (const StepRecord& r : run.steps) {
    const StepDiagnostics& d = r.diagnostics;
    s += std::to_string(r.step) + "," + format_double(r.time) + "," + format_double(d.max_divergence) +
         "," + format_double(d.kinetic_energy) + "," + format_double(d.penalization_defect) + "," +
         format_double(d.cfl) + "," + std::to_string(d.poisson_iters) + "\n";
  }
  return s;
}

std::string probes_csv(const RunResult& run) {
  std::string s = kCsvVersion;
  s += "t,d_norm,center_x,center_y,v_x,v_y,omega,solid_area\n";
  for (const ProbeRecord& p : run.probes)
    s += format_double(p.time) + "," + format_double(p.d_norm) + "," + format_double(p.center.x) + "," +
         format_double(p.center.y) + "," + format_double(p.v_trans.x) + "," +
         format_double(p.v_trans.y) + "," + format_double(p.omega) + "," +
         format_double(p.solid_area) + "\n";
  return s;
}

std::string profile_csv(const ProfileRecord& profile) {
  std::string s = kCsvVersion;
  s += "position,value\n";
  for (const ProfileSample& p : profile.samples)
    s += format_double(p.position) + "," + format_double(p.value) + "\n";
  return s;
}

std::string sweep_csv(const SweepReport& report) {
  std::string s = kCsvVersion;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(report.scenario_hash));
  s += "# dx=" + format_double(report.dx) + " dt=" + format_double(report.dt) +
       " t_probe=" + format_double(report.t_probe) + " scenario=" + hash + "\n";
  s += "eta,d_norm,alpha\n";
  for (const SweepEntry& e : report.entries)
    s += format_double(e.eta) + "," + (e.failed ? std::string("nan") : format_double(e.d_norm)) + "," +
         (e.alpha ? format_double(*e.alpha) : std::string()) + "\n";
  return s;
}

std::string vtk_fields(const SimState& state, const SolverParams& params) {
  const GridSpec& g = state.level.grid();
  const CellField h = indicator_from_levelset(state.level, params.sharp_indicator, params.indicator_width);
  const CellField rho = density_from_indicator(h, params);
  const std::vector<Vec2> uc = cell_centered_velocity(state.vel);

  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\nrigidpen fields t=" << format_double(state.time)
      << "\nASCII\nDATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.nx() + 1 << " " << g.ny() + 1 << " 1\n"
      << "ORIGIN " << format_double(g.origin().x) << " " << format_double(g.origin().y) << " 0\n"
      << "SPACING " << format_double(g.dx()) << " " << format_double(g.dx()) << " 1\n"
      << "CELL_DATA " << g.cell_count() << "\n";
  const auto scalars = [&](const char* name, const CellField& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : f.values) out << format_double(v) << "\n";
  };
  scalars("rho", rho);
  scalars("indicator", h);
  scalars("phi", state.level.phi);
  scalars("pressure", state.pressure);
  out << "VECTORS velocity double\n";
  for (const Vec2& v : uc) out << format_double(v.x) << " " << format_double(v.y) << " 0\n";
  return out.str();
}

std::string vtk_interface(const LevelSet& level) {
  const GridSpec& g = level.grid();
  std::vector<Vec2> points;
  const auto crossing = [&](int i0, int j0, int i1, int j1) {
    const double a = level.phi(i0, j0);
    const double b = level.phi(i1, j1);
    const double t = a / (a - b);
    return g.cell_center(i0, j0) + t * (g.cell_center(i1, j1) - g.cell_center(i0, j0));
  };
  // Marching squares over the lattice of cell centers.
  for (int j = 0; j + 1 < g.ny(); ++j) {
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const bool in00 = level.phi(i, j) < 0.0;
      const bool in10 = level.phi(i + 1, j) < 0.0;
      const bool in11 = level.phi(i + 1, j + 1) < 0.0;
      const bool in01 = level.phi(i, j + 1) < 0.0;
      std::vector<Vec2> hits;
      if (in00 != in10) hits.push_back(crossing(i, j, i + 1, j));
      if (in10 != in11) hits.push_back(crossing(i + 1, j, i + 1, j + 1));
      if (in11 != in01) hits.push_back(crossing(i + 1, j + 1, i, j + 1));
      if (in01 != in00) hits.push_back(crossing(i, j + 1, i, j));
      for (std::size_t k = 0; k + 1 < hits.size(); k += 2) {
        points.push_back(hits[k]);
        points.push_back(hits[k + 1]);
      }
    }
  }
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\nrigidpen zero level set\nASCII\nDATASET POLYDATA\n"
      << "POINTS " << points.size() << " double\n";
  for (const Vec2& p : points) out << format_double(p.x) << " " << format_double(p.y) << " 0\n";
  const std::size_t segments = points.size() / 2;
  out << "LINES " << segments << " " << 3 * segments << "\n";
  for (std::size_t k = 0; k < segments; ++k) out << "2 " << 2 * k << " " << 2 * k + 1 << "\n";
  return out.str();
}

}  // namespace rigidpen
