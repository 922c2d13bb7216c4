#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "lcflow/dynamics.hpp"
#include "lcflow/frank_energy.hpp"
#include "lcflow/grid.hpp"

namespace lcflow {

/// Everything needed to reproduce a run.
///
/// File grammar (one entry per line):
///
///     # comment                  full-line or trailing, introduced by '#'
///     [section]                  prefixes following keys with "section."
///     key = value                key is [A-Za-z0-9_.]+, value runs to end of line
///
/// Keys are dotted (grid.n, frank.k1, init.d_star, ...); a key may appear only
/// once. Vector values are comma separated. See RunConfig::keys() for the full
/// list and README.md for an annotated example.
struct RunConfig {
  // grid
  int n = 32;
  double length = 6.283185307179586;  // 2 pi
  // frank
  double k1 = 1.0, k2 = 1.0, k3 = 1.0;
  // time
  double dt = 1e-4;  // 0 selects the CFL-adaptive policy
  double cfl_safety = 0.5;
  double t_end = 0.1;
  // init
  std::string init_kind = "equilibrium";  // equilibrium | taylor-green | director-perturb
  double amplitude = 0.0;
  std::uint64_t seed = 1;
  Vec3 d_star{0.0, 0.0, 1.0};
  std::string velocity = "none";  // none | taylor-green | random (director-perturb only)
  double velocity_amplitude = 0.0;
  int modes = 2;  // largest |k_i| of the random band-limited perturbations
  // output
  std::string output_dir = "out";
  std::string csv_name = "ledger.csv";
  int output_every = 1;
  int snapshot_every = 0;  // 0 disables intermediate snapshots
  // tolerances
  double unit_tol = 1e-12;
  double div_tol = 1e-10;
  double residual_tol = 1e-3;
  double blowup_factor = 1e3;

  bool operator==(const RunConfig&) const = default;

  /// Sets one dotted key from its textual value. Throws ConfigError for an
  /// unknown key or an unparsable value.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError if any invariant fails (grid, moduli, solver
  /// settings, |d_star| = 1 within 1e-12, known init kinds).
  void validate() const;

  Grid grid() const { return Grid(n, length); }
  FrankConstants frank() const { return FrankConstants(k1, k2, k3); }
  SolverConfig solver() const;

  /// All keys with their current values, rendered in the file grammar.
  std::map<std::string, std::string> keys() const;
};

/// Parses the text of a config file. Keys not mentioned keep their value in `base`.
RunConfig parse_config(const std::string& text, const RunConfig& base = RunConfig{});
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = RunConfig{});
std::string serialize_config(const RunConfig& cfg);

}  // namespace lcflow
