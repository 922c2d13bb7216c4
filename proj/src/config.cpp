#include "lcflow/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "lcflow/errors.hpp"

namespace lcflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + v + "' is not a number");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
  }
  return x;
}

Vec3 to_vec3(const std::string& key, const std::string& v) {
  Vec3 out{};
  std::stringstream ss(v);
  std::string cell;
  int i = 0;
  while (std::getline(ss, cell, ',')) {
    if (i >= 3) throw ConfigError("key '" + key + "' needs exactly three components");
    out[i++] = to_double(key, trim(cell));
  }
  if (i != 3) throw ConfigError("key '" + key + "' needs exactly three components");
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  auto d = [&](double& field) { field = to_double(key, v); };
  auto i = [&](int& field) { field = static_cast<int>(to_int(key, v)); };
  const std::map<std::string, std::function<void()>> setters = {
      {"grid.n", [&] { i(n); }},
      {"grid.L", [&] { d(length); }},
      {"frank.k1", [&] { d(k1); }},
      {"frank.k2", [&] { d(k2); }},
      {"frank.k3", [&] { d(k3); }},
      {"time.dt", [&] { d(dt); }},
      {"time.cfl_safety", [&] { d(cfl_safety); }},
      {"time.t_end", [&] { d(t_end); }},
      {"init.kind", [&] { init_kind = v; }},
      {"init.amplitude", [&] { d(amplitude); }},
      {"init.seed",
       [&] {
         const long long s = to_int(key, v);
         if (s < 0) throw ConfigError("init.seed must be >= 0");
         seed = static_cast<std::uint64_t>(s);
       }},
      {"init.d_star", [&] { d_star = to_vec3(key, v); }},
      {"init.velocity", [&] { velocity = v; }},
      {"init.velocity_amplitude", [&] { d(velocity_amplitude); }},
      {"init.modes", [&] { i(modes); }},
      {"output.dir", [&] { output_dir = v; }},
      {"output.csv_name", [&] { csv_name = v; }},
      {"output.every", [&] { i(output_every); }},
      {"output.snapshot_every", [&] { i(snapshot_every); }},
      {"tolerances.unit_tol", [&] { d(unit_tol); }},
      {"tolerances.div_tol", [&] { d(div_tol); }},
      {"tolerances.residual_tol", [&] { d(residual_tol); }},
      {"tolerances.blowup_factor", [&] { d(blowup_factor); }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second();
}

std::map<std::string, std::string> RunConfig::keys() const {
  return {
      {"grid.n", std::to_string(n)},
      {"grid.L", fmt(length)},
      {"frank.k1", fmt(k1)},
      {"frank.k2", fmt(k2)},
      {"frank.k3", fmt(k3)},
      {"time.dt", fmt(dt)},
      {"time.cfl_safety", fmt(cfl_safety)},
      {"time.t_end", fmt(t_end)},
      {"init.kind", init_kind},
      {"init.amplitude", fmt(amplitude)},
      {"init.seed", std::to_string(seed)},
      {"init.d_star", fmt(d_star[0]) + ", " + fmt(d_star[1]) + ", " + fmt(d_star[2])},
      {"init.velocity", velocity},
      {"init.velocity_amplitude", fmt(velocity_amplitude)},
      {"init.modes", std::to_string(modes)},
      {"output.dir", output_dir},
      {"output.csv_name", csv_name},
      {"output.every", std::to_string(output_every)},
      {"output.snapshot_every", std::to_string(snapshot_every)},
      {"tolerances.unit_tol", fmt(unit_tol)},
      {"tolerances.div_tol", fmt(div_tol)},
      {"tolerances.residual_tol", fmt(residual_tol)},
      {"tolerances.blowup_factor", fmt(blowup_factor)},
  };
}

SolverConfig RunConfig::solver() const {
  SolverConfig s;
  s.frank = frank();
  s.dt_policy = dt > 0.0 ? DtPolicy::fixed : DtPolicy::cfl_adaptive;
  s.dt = dt > 0.0 ? dt : 1.0;
  s.cfl_safety = cfl_safety;
  s.t_end = t_end;
  s.unit_tol = unit_tol;
  s.div_tol = div_tol;
  s.residual_tol = residual_tol;
  s.blowup_factor = blowup_factor;
  s.output_every = output_every;
  return s;
}

void RunConfig::validate() const {
  (void)grid();
  (void)frank();
  if (dt < 0.0) throw ConfigError("time.dt must be >= 0 (0 selects the adaptive policy)");
  solver().validate();
  const double len = std::sqrt(d_star[0] * d_star[0] + d_star[1] * d_star[1] + d_star[2] * d_star[2]);
  if (!(std::abs(len - 1.0) <= 1e-12)) throw ConfigError("init.d_star must be a unit vector");
  static const std::set<std::string> kinds = {"equilibrium", "taylor-green", "director-perturb"};
  if (!kinds.count(init_kind)) throw ConfigError("unknown init.kind '" + init_kind + "'");
  static const std::set<std::string> vkinds = {"none", "taylor-green", "random"};
  if (!vkinds.count(velocity)) throw ConfigError("unknown init.velocity '" + velocity + "'");
  if (!(amplitude >= 0.0) || !(velocity_amplitude >= 0.0)) {
    throw ConfigError("amplitudes must be >= 0");
  }
  if (modes < 1 || 3 * modes > n) throw ConfigError("init.modes must lie in [1, n/3]");
  if (snapshot_every < 0) throw ConfigError("output.snapshot_every must be >= 0");
  if (csv_name.empty()) throw ConfigError("output.csv_name must not be empty");
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  RunConfig cfg = base;
  std::set<std::string> seen;
  std::stringstream ss(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.set(key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.keys()) out += k + " = " + v + "\n";
  return out;
}

}  // namespace lcflow
