#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rigidpen/diagnostics.hpp"
#include "rigidpen/flow_solver.hpp"
#include "rigidpen/params.hpp"
#include "rigidpen/transport.hpp"

namespace rigidpen {

struct ProfileRequest {
  ProfileAxis axis = ProfileAxis::Horizontal;
  /// Line position; empty means "through the current body center".
  std::optional<double> coordinate;
  double time = 0.0;
  VelocityComponent component = VelocityComponent::V;

  /// File-name tag, e.g. "h_center_t0.1_v".
  std::string tag() const;
};

struct OutputConfig {
  std::string csv_dir = ".";
  std::optional<long> vtk_every;
  std::vector<ProfileRequest> profiles;
};

/// Run description. Defaults are the sedimenting-cylinder benchmark: a
/// 2 x 6 box at dx = 1/256, rho_f = 1, mu = 0.01, a disk of radius 0.125 and
/// density 1.5 centered at (1, 4), g = -980, dt = 1e-4, probed at t = 0.1.
struct ScenarioConfig {
  int nx = 512;
  int ny = 1536;
  double dx = 1.0 / 256.0;
  Vec2 origin;
  SolverParams params;
  Disk body{{1.0, 4.0}, 0.125};
  double t_final = 0.1;
  std::vector<double> probe_times{0.1};
  std::vector<double> sweep_etas;
  OutputConfig output;
  long max_steps = 10'000'000;

  GridSpec grid() const { return GridSpec(nx, ny, dx, origin); }
  long step_count() const;
  long step_of(double t) const;
  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
  /// FNV-1a of the canonical text form.
  std::uint64_t hash() const;
};

/// Parses the INI-like key/value format and validates the result. Missing
/// keys take the benchmark defaults; unknown keys are errors.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical text form listing every key; parse_config(to_config_text(c))
/// reproduces c.
std::string to_config_text(const ScenarioConfig& config);

struct StepRecord {
  long step = 0;
  double time = 0.0;
  StepDiagnostics diagnostics;
};

struct ProbeRecord {
  double time = 0.0;
  double d_norm = 0.0;
  Vec2 center;
  Vec2 v_trans;
  double omega = 0.0;
  double solid_area = 0.0;
};

struct ProfileRecord {
  ProfileRequest request;
  double coordinate = 0.0;
  std::vector<ProfileSample> samples;
};

struct RunResult {
  double eta = 0.0;
  std::vector<StepRecord> steps;
  std::vector<ProbeRecord> probes;
  std::vector<ProfileRecord> profiles;
  std::optional<SimState> final_state;
  bool failed = false;
  std::string error;
};

/// Initial state of a scenario: fluid at rest around the configured disk.
SimState initial_state(const ScenarioConfig& config);

/// Integrates one configuration at penalization parameter `eta` up to
/// t_final. Solver errors are caught and reported through `failed`/`error`;
/// the last good state is kept in `final_state`. Writes VTK snapshots into
/// `vtk_dir` when it is non-empty and output.vtk_every is set.
RunResult simulate(const ScenarioConfig& config, double eta,
                   const std::filesystem::path& vtk_dir = {});

enum class RunMode { Single, Sweep };

struct RunOptions {
  RunMode mode = RunMode::Single;
  /// Overrides output.csv_dir when non-empty.
  std::filesystem::path out_dir;
  /// Number of sweep entries integrated concurrently.
  int threads = 1;
  bool write_files = true;
};

struct ScenarioArtifacts {
  std::vector<RunResult> runs;
  std::optional<SweepReport> sweep;
  bool any_failed() const;
};

/// Single mode integrates numerics.eta and writes diagnostics.csv,
/// probes.csv and profile_<tag>.csv into the output directory. Sweep mode
/// does the same for every sweep.etas entry in eta_<value>/ subdirectories
/// and writes sweep.csv. Throws ConfigError for a sweep without etas.
ScenarioArtifacts run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

// CSV serialization. Every file starts with the "# rigidpen-csv v1" line.
std::string format_double(double value);
std::string diagnostics_csv(const RunResult& run);
std::string probes_csv(const RunResult& run);
std::string profile_csv(const ProfileRecord& profile);
std::string sweep_csv(const SweepReport& report);

/// Legacy-ASCII VTK: cell fields as STRUCTURED_POINTS, and the zero level
/// set as POLYDATA line segments.
std::string vtk_fields(const SimState& state, const SolverParams& params);
std::string vtk_interface(const LevelSet& level);

}  // namespace rigidpen
