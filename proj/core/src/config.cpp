#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rigidpen/errors.hpp"
#include "rigidpen/scenario.hpp"

namespace rigidpen {

namespace {

constexpr Vec2 kBenchmarkExtent{2.0, 6.0};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_plain_number(std::string_view s, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("expected a number, got '" + std::string(s) + "'", line);
  return value;
}

// Accepts plain decimals and simple fractions such as 1/256.
double parse_number(std::string_view s, int line) {
  s = trim(s);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const double den = parse_plain_number(trim(s.substr(slash + 1)), line);
    if (den == 0.0) throw ConfigError("division by zero in '" + std::string(s) + "'", line);
    return parse_plain_number(trim(s.substr(0, slash)), line) / den;
  }
  return parse_plain_number(s, line);
}

long parse_integer(std::string_view s, int line) {
  s = trim(s);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("expected an integer, got '" + std::string(s) + "'", line);
  return value;
}

bool parse_bool(std::string_view s, int line) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ConfigError("expected a boolean, got '" + std::string(s) + "'", line);
}

std::vector<double> parse_number_list(std::string_view s, int line) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (std::string_view item : split(s, ',')) out.push_back(parse_number(item, line));
  return out;
}

ProfileRequest parse_profile(std::string_view s, int line) {
  const std::vector<std::string_view> parts = split(s, ':');
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError("profile entries read axis:coordinate:time[:component]", line);
  ProfileRequest r;
  if (parts[0] == "horizontal" || parts[0] == "h") {
    r.axis = ProfileAxis::Horizontal;
    r.component = VelocityComponent::V;
  } else if (parts[0] == "vertical" || parts[0] == "v") {
    r.axis = ProfileAxis::Vertical;
    r.component = VelocityComponent::U;
  } else {
    throw ConfigError("profile axis must be horizontal or vertical", line);
  }
  if (parts[1] != "center") r.coordinate = parse_number(parts[1], line);
  r.time = parse_number(parts[2], line);
  if (parts.size() == 4) {
    if (parts[3] == "u") r.component = VelocityComponent::U;
    else if (parts[3] == "v") r.component = VelocityComponent::V;
    else throw ConfigError("profile component must be u or v", line);
  }
  return r;
}

std::string profile_text(const ProfileRequest& r) {
  std::string s = r.axis == ProfileAxis::Horizontal ? "horizontal:" : "vertical:";
  s += r.coordinate ? format_double(*r.coordinate) : "center";
  s += ":" + format_double(r.time);
  s += r.component == VelocityComponent::U ? ":u" : ":v";
  return s;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, int)>;

template <class T>
Setter number_key(T member) {
  return [member](ScenarioConfig& c, std::string_view v, int line) { member(c) = parse_number(v, line); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"grid.nx", [](ScenarioConfig& c, std::string_view v, int l) { c.nx = int(parse_integer(v, l)); }},
      {"grid.ny", [](ScenarioConfig& c, std::string_view v, int l) { c.ny = int(parse_integer(v, l)); }},
      {"grid.dx", number_key([](ScenarioConfig& c) -> double& { return c.dx; })},
      {"grid.origin_x", number_key([](ScenarioConfig& c) -> double& { return c.origin.x; })},
      {"grid.origin_y", number_key([](ScenarioConfig& c) -> double& { return c.origin.y; })},
      {"fluid.rho", number_key([](ScenarioConfig& c) -> double& { return c.params.rho_f; })},
      {"fluid.mu", number_key([](ScenarioConfig& c) -> double& { return c.params.mu; })},
      {"body.center_x", number_key([](ScenarioConfig& c) -> double& { return c.body.center.x; })},
      {"body.center_y", number_key([](ScenarioConfig& c) -> double& { return c.body.center.y; })},
      {"body.radius", number_key([](ScenarioConfig& c) -> double& { return c.body.radius; })},
      {"body.rho", number_key([](ScenarioConfig& c) -> double& { return c.params.rho_s; })},
      {"physics.gravity_x", number_key([](ScenarioConfig& c) -> double& { return c.params.gravity.x; })},
      {"physics.gravity_y", number_key([](ScenarioConfig& c) -> double& { return c.params.gravity.y; })},
      {"numerics.eta", number_key([](ScenarioConfig& c) -> double& { return c.params.eta; })},
      {"numerics.dt", number_key([](ScenarioConfig& c) -> double& { return c.params.dt; })},
      {"numerics.poisson_tol", number_key([](ScenarioConfig& c) -> double& { return c.params.poisson_tol; })},
      {"numerics.poisson_max_iter",
       [](ScenarioConfig& c, std::string_view v, int l) { c.params.poisson_max_iter = int(parse_integer(v, l)); }},
      {"numerics.advection",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "upwind") c.params.advection_scheme = AdvectionScheme::Upwind1;
         else if (v == "semi_lagrangian") c.params.advection_scheme = AdvectionScheme::SemiLagrangian;
         else throw ConfigError("numerics.advection must be upwind or semi_lagrangian", l);
       }},
      {"numerics.indicator_transport",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "exact") c.params.indicator_transport = IndicatorTransport::ExactRigidTransform;
         else if (v == "semi_lagrangian") c.params.indicator_transport = IndicatorTransport::SemiLagrangian;
         else throw ConfigError("numerics.indicator_transport must be exact or semi_lagrangian", l);
       }},
      {"numerics.penalization",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "implicit") c.params.penalization = PenalizationMode::Implicit;
         else if (v == "explicit") c.params.penalization = PenalizationMode::Explicit;
         else throw ConfigError("numerics.penalization must be implicit or explicit", l);
       }},
      {"numerics.sharp_indicator",
       [](ScenarioConfig& c, std::string_view v, int l) { c.params.sharp_indicator = parse_bool(v, l); }},
      {"numerics.indicator_width", number_key([](ScenarioConfig& c) -> double& { return c.params.indicator_width; })},
      {"numerics.post_penalization_projection",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.params.post_penalization_projection = parse_bool(v, l);
       }},
      {"sweep.etas",
       [](ScenarioConfig& c, std::string_view v, int l) { c.sweep_etas = parse_number_list(v, l); }},
      {"output.csv_dir", [](ScenarioConfig& c, std::string_view v, int) { c.output.csv_dir = std::string(v); }},
      {"output.vtk_every",
       [](ScenarioConfig& c, std::string_view v, int l) {
         if (v == "none" || v.empty()) c.output.vtk_every.reset();
         else c.output.vtk_every = parse_integer(v, l);
       }},
      {"output.profiles",
       [](ScenarioConfig& c, std::string_view v, int l) {
         c.output.profiles.clear();
         if (v.empty()) return;
         for (std::string_view item : split(v, ',')) c.output.profiles.push_back(parse_profile(item, l));
       }},
      {"run.t_final", number_key([](ScenarioConfig& c) -> double& { return c.t_final; })},
      {"run.probe_times",
       [](ScenarioConfig& c, std::string_view v, int l) { c.probe_times = parse_number_list(v, l); }},
      {"run.max_steps", [](ScenarioConfig& c, std::string_view v, int l) { c.max_steps = parse_integer(v, l); }},
  };
  return table;
}

int derive_cells(double length, double dx, const char* key) {
  const double n = length / dx;
  const double rounded = std::round(n);
  if (std::abs(n - rounded) > 1e-9 * n)
    throw ConfigError(std::string(key) + " is required when the default extent is not a multiple of grid.dx");
  return static_cast<int>(rounded);
}

}  // namespace

std::string ProfileRequest::tag() const {
  std::string s = axis == ProfileAxis::Horizontal ? "h_" : "v_";
  s += coordinate ? format_double(*coordinate) : "center";
  s += "_t" + format_double(time);
  s += component == VelocityComponent::U ? "_u" : "_v";
  return s;
}

long ScenarioConfig::step_count() const { return std::lround(t_final / params.dt); }

long ScenarioConfig::step_of(double t) const { return std::lround(t / params.dt); }

void ScenarioConfig::validate() const {
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  try {
    (void)grid();
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const GridSpec g = grid();
  require(body.radius > 0.0, "body.radius must be positive");
  const double clearance = g.wall_distance(body.center) - body.radius;
  require(clearance >= 4.0 * dx, "body must clear the walls by at least 4 cells (clearance " +
                                     format_double(clearance) + ")");
  require(t_final > 0.0, "run.t_final must be positive");
  const double n = t_final / params.dt;
  require(std::abs(n - std::round(n)) <= 1e-6 * std::max(1.0, n),
          "run.t_final must be a multiple of numerics.dt");
  require(max_steps > 0, "run.max_steps must be positive");
  require(step_count() <= max_steps, "projected step count " + std::to_string(step_count()) +
                                         " exceeds run.max_steps " + std::to_string(max_steps));
  for (double t : probe_times)
    require(t >= 0.0 && t <= t_final * (1 + 1e-12), "run.probe_times must lie in [0, t_final]");
  std::vector<double> etas = sweep_etas;
  std::sort(etas.begin(), etas.end());
  for (std::size_t k = 0; k < etas.size(); ++k) {
    require(etas[k] > 0.0, "sweep.etas entries must be positive");
    require(k == 0 || etas[k] != etas[k - 1], "sweep.etas entries must be distinct");
  }
  if (output.vtk_every) require(*output.vtk_every > 0, "output.vtk_every must be positive");
  for (const ProfileRequest& r : output.profiles) {
    require(r.time >= 0.0 && r.time <= t_final * (1 + 1e-12), "profile time must lie in [0, t_final]");
    if (r.coordinate) {
      const double lo = r.axis == ProfileAxis::Horizontal ? origin.y : origin.x;
      const double len = r.axis == ProfileAxis::Horizontal ? g.extent().y : g.extent().x;
      require(*r.coordinate >= lo && *r.coordinate <= lo + len, "profile line outside the domain");
    }
  }
}

std::uint64_t ScenarioConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : to_config_text(*this)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::set<std::string, std::less<>> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    const std::string_view local = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (local.empty()) throw ConfigError("empty key", line_no);
    const std::string key = section.empty() ? std::string(local) : section + "." + std::string(local);

    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line_no);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line_no);
    it->second(config, value, line_no);
  }

  if (!seen.contains("grid.nx")) config.nx = derive_cells(kBenchmarkExtent.x, config.dx, "grid.nx");
  if (!seen.contains("grid.ny")) config.ny = derive_cells(kBenchmarkExtent.y, config.dx, "grid.ny");
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const ScenarioConfig& c) {
  const auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + format_double(v[k]);
    return s;
  };
  const SolverParams& p = c.params;
  std::ostringstream out;
  out << "[grid]\n"
      << "nx = " << c.nx << "\nny = " << c.ny << "\ndx = " << format_double(c.dx)
      << "\norigin_x = " << format_double(c.origin.x) << "\norigin_y = " << format_double(c.origin.y)
      << "\n\n[fluid]\nrho = " << format_double(p.rho_f) << "\nmu = " << format_double(p.mu)
      << "\n\n[body]\ncenter_x = " << format_double(c.body.center.x)
      << "\ncenter_y = " << format_double(c.body.center.y)
      << "\nradius = " << format_double(c.body.radius) << "\nrho = " << format_double(p.rho_s)
      << "\n\n[physics]\ngravity_x = " << format_double(p.gravity.x)
      << "\ngravity_y = " << format_double(p.gravity.y)
      << "\n\n[numerics]\neta = " << format_double(p.eta) << "\ndt = " << format_double(p.dt)
      << "\npoisson_tol = " << format_double(p.poisson_tol)
      << "\npoisson_max_iter = " << p.poisson_max_iter << "\nadvection = "
      << (p.advection_scheme == AdvectionScheme::Upwind1 ? "upwind" : "semi_lagrangian")
      << "\nindicator_transport = "
      << (p.indicator_transport == IndicatorTransport::ExactRigidTransform ? "exact" : "semi_lagrangian")
      << "\npenalization = " << (p.penalization == PenalizationMode::Implicit ? "implicit" : "explicit")
      << "\nsharp_indicator = " << (p.sharp_indicator ? "true" : "false")
      << "\nindicator_width = " << format_double(p.indicator_width)
      << "\npost_penalization_projection = " << (p.post_penalization_projection ? "true" : "false")
      << "\n\n[sweep]\netas = " << list(c.sweep_etas) << "\n\n[output]\ncsv_dir = " << c.output.csv_dir
      << "\nvtk_every = " << (c.output.vtk_every ? std::to_string(*c.output.vtk_every) : "none")
      << "\nprofiles = ";
  for (std::size_t k = 0; k < c.output.profiles.size(); ++k)
    out << (k ? ", " : "") << profile_text(c.output.profiles[k]);
  out << "\n\n[run]\nt_final = " << format_double(c.t_final) << "\nprobe_times = " << list(c.probe_times)
      << "\nmax_steps = " << c.max_steps << "\n";
  return out.str();
}

}  // namespace rigidpen
