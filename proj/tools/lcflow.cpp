// lcflow: command-line front end for the nematic flow solver.
//
// Exit codes: 0 success, 1 usage or config error, 2 runtime or numerical
// failure, 3 verdict failure.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcflow/config.hpp"
#include "lcflow/diagnostics.hpp"
#include "lcflow/errors.hpp"
#include "lcflow/initial_data.hpp"
#include "lcflow/snapshot.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/verification.hpp"

namespace fs = std::filesystem;
using namespace lcflow;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRuntime = 2;
constexpr int kVerdict = 3;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;
};

void add_common(CLI::App* app, CommonArgs& a) {
  app->add_option("-c,--config", a.config_path, "config file (key = value lines)");
  app->add_option("--set", a.overrides, "override a config key, e.g. --set grid.n=64")
      ->type_name("KEY=VALUE");
  app->add_option("-j,--threads", a.threads, "worker threads (default: LCFLOW_THREADS or all)");
}

void apply_threads(int requested) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("LCFLOW_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw ConfigError(std::string("LCFLOW_THREADS is not an integer: ") + env);
      }
      if (threads <= 0) throw ConfigError("LCFLOW_THREADS must be positive");
    }
  }
  if (threads > 0) {
    omp_set_num_threads(threads);
    set_fft_threads(threads);
  }
}

// Precedence: defaults < config file < LCFLOW_OUTPUT_DIR < --set.
RunConfig resolve_config(const CommonArgs& a, const RunConfig& defaults) {
  RunConfig cfg = defaults;
  if (!a.config_path.empty()) {
    if (!fs::exists(a.config_path)) throw ConfigError("config file not found: " + a.config_path);
    cfg = load_config(a.config_path, defaults);
  }
  if (const char* env = std::getenv("LCFLOW_OUTPUT_DIR")) cfg.output_dir = env;
  for (const auto& kv : a.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  const fs::path probe = fs::path(dir) / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory is not writable: " + dir);
  }
  fs::remove(probe, ec);
  return dir;
}

// Forwards to the Monitor and writes snapshots on the configured cadence.
class SimulationObserver : public StateObserver {
 public:
  SimulationObserver(Monitor& monitor, fs::path dir, int snapshot_every)
      : monitor_(monitor), dir_(std::move(dir)), every_(snapshot_every) {}

  bool observe(const State& s, long step) override {
    if (step == 0 || (every_ > 0 && step % every_ == 0)) snapshot(s, step);
    return monitor_.observe(s, step);
  }

  void snapshot(const State& s, long step) {
    char tag[32];
    std::snprintf(tag, sizeof tag, "%08ld", step);
    write_snapshot(dir_ / ("u_" + std::string(tag)), s.u, "u", s.t);
    write_snapshot(dir_ / ("d_" + std::string(tag)), s.d, "d", s.t);
  }

 private:
  Monitor& monitor_;
  fs::path dir_;
  int every_;
};

int cmd_simulate(const CommonArgs& a) {
  apply_threads(a.threads);
  const RunConfig cfg = resolve_config(a, RunConfig{});
  const fs::path dir = prepare_output_dir(cfg.output_dir);
  {
    std::ofstream out(dir / "config.txt");
    out << serialize_config(cfg);
    if (!out) throw IoError("cannot write " + (dir / "config.txt").string());
  }

  const State s0 = generate_initial_data(cfg);
  std::ofstream csv(dir / cfg.csv_name);
  if (!csv) throw IoError("cannot write " + (dir / cfg.csv_name).string());
  Monitor monitor(cfg.frank(), {cfg.residual_tol, cfg.blowup_factor}, &csv);
  SimulationObserver observer(monitor, dir, cfg.snapshot_every);

  const SimulationResult result = simulate(s0, cfg.solver(), observer);
  write_snapshot(dir / "u_final", result.final_state.u, "u", result.final_state.t);
  write_snapshot(dir / "d_final", result.final_state.d, "d", result.final_state.t);
  csv.close();

  const std::string summary = monitor.summary_json(result.summary);
  {
    std::ofstream out(dir / "summary.json");
    out << summary << "\n";
    if (!out) throw IoError("cannot write summary.json");
  }
  std::cout << "steps " << result.summary.steps << ", t = " << result.summary.t_final
            << ", termination: "
            << (monitor.blowup_suspect() ? "blow_up_suspect" : result.summary.termination)
            << "\noutput: " << dir.string() << "\n";
  if (!result.summary.message.empty()) std::cerr << result.summary.message << "\n";
  const bool ok = result.summary.termination == "completed" && !monitor.blowup_suspect();
  return ok ? kOk : kRuntime;
}

int cmd_verify_gradients(const CommonArgs& a, int samples, std::uint64_t seed, double tol) {
  apply_threads(a.threads);
  const RunConfig cfg = resolve_config(a, RunConfig{});
  const GradientCheck g = check_gradients(cfg.frank(), samples, seed);
  std::printf("samples            %d\n", g.samples);
  std::printf("max rel err w_d    %.3e\n", g.w_d);
  std::printf("max rel err w_p    %.3e\n", g.w_p);
  std::printf("max rel err w_pp   %.3e\n", g.w_pp);
  const bool ok = g.worst() <= tol;
  std::printf("%s (tolerance %.1e)\n", ok ? "PASS" : "FAIL", tol);
  return ok ? kOk : kVerdict;
}

RunConfig verify_energy_defaults() {
  RunConfig d;
  d.n = 16;
  d.dt = 1e-4;
  d.t_end = 0.01;
  d.init_kind = "director-perturb";
  d.amplitude = 0.05;
  d.velocity = "taylor-green";
  d.velocity_amplitude = 0.02;
  return d;
}

int cmd_verify_energy(const CommonArgs& a) {
  apply_threads(a.threads);
  const RunConfig cfg = resolve_config(a, verify_energy_defaults());
  const State s0 = generate_initial_data(cfg);
  Monitor monitor(cfg.frank(), {cfg.residual_tol, cfg.blowup_factor});
  const SimulationResult result = simulate(s0, cfg.solver(), monitor);
  if (result.summary.termination != "completed") {
    std::cerr << "run did not complete: " << result.summary.termination << " "
              << result.summary.message << "\n";
    return kRuntime;
  }
  double max_abs = 0.0;
  for (const auto& r : monitor.history()) max_abs = std::max(max_abs, std::abs(r.balance_residual));
  const double rel = monitor.max_relative_residual();
  const LyapunovVerdict v = lyapunov_check(monitor.history(), cfg.residual_tol);
  auto show = [](const MonotonicityVerdict& m) {
    return m.monotone ? std::string("monotone")
                      : "violated at t = " + std::to_string(m.violated_at.value_or(0.0));
  };
  std::printf("steps                     %ld\n", result.summary.steps);
  std::printf("max |balance_residual|    %.3e\n", max_abs);
  std::printf("max relative residual     %.3e (tolerance %.1e)\n", rel, cfg.residual_tol);
  std::printf("lyap0                     %s\n", show(v.lyap0).c_str());
  std::printf("lyap1                     %s\n", show(v.lyap1).c_str());
  const bool ok = rel <= cfg.residual_tol && v.monotone();
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? kOk : kVerdict;
}

int cmd_scaling(const CommonArgs& a, int lambda, double tol) {
  apply_threads(a.threads);
  RunConfig defaults;
  defaults.init_kind = "director-perturb";
  defaults.amplitude = 0.1;
  defaults.velocity = "random";
  defaults.velocity_amplitude = 0.1;
  const RunConfig cfg = resolve_config(a, defaults);
  const ScalingReport r = scaling_test(cfg, lambda);
  std::printf("lambda        %d\n", r.lambda);
  std::printf("m(0)          %.10e\n", r.m0);
  std::printf("m(0) scaled   %.10e\n", r.m_scaled);
  std::printf("discrepancy   %.3e (tolerance %.1e)\n", r.discrepancy, tol);
  const bool ok = r.discrepancy <= tol;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? kOk : kVerdict;
}

// Minimal SVG line plot of selected ledger columns against t.
void write_svg(const fs::path& path, const CsvTable& t, const std::vector<std::size_t>& cols,
               bool log_scale) {
  const double W = 800, H = 480, ml = 80, mr = 160, mt = 30, mb = 50;
  double x0 = t.rows.front()[0], x1 = t.rows.back()[0];
  if (x1 <= x0) x1 = x0 + 1.0;
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  auto tr = [&](double v) { return log_scale ? std::log10(std::max(std::abs(v), 1e-300)) : v; };
  for (const auto& row : t.rows) {
    for (auto c : cols) {
      y0 = std::min(y0, tr(row[c]));
      y1 = std::max(y1, tr(row[c]));
    }
  }
  if (!(y1 > y0)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (tr(y) - y0) / (y1 - y0) * (H - mt - mb); };

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
      << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[64];
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0;
    const double fy = y0 + (y1 - y0) * k / 4.0;
    const double yy = H - mb - (H - mt - mb) * k / 4.0;
    std::snprintf(buf, sizeof buf, "%.3g", fx);
    out << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">"
        << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, log_scale ? "1e%.2g" : "%.4g", fy);
    out << "<text x=\"" << ml - 6 << "\" y=\"" << yy + 4 << "\" text-anchor=\"end\">" << buf
        << "</text>\n";
  }
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\">t</text>\n";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const char* color = colors[i % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : t.rows) out << px(row[0]) << "," << py(row[cols[i]]) << " ";
    out << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - mr + 30
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << W - mr + 36 << "\" y=\"" << ly << "\">" << t.columns[cols[i]]
        << "</text>\n";
  }
  out << "</svg>\n";
}

int cmd_report(const std::string& csv_path, const std::string& plot_path,
               const std::vector<std::string>& plot_cols, bool log_scale) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot read CSV " + csv_path);
  const CsvTable t = read_csv(in);
  if (t.rows.empty()) throw IoError("CSV " + csv_path + " has no data rows");

  std::printf("%-18s %14s %14s %14s %14s\n", "column", "first", "last", "min", "max");
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    double lo = t.rows[0][c], hi = lo;
    for (const auto& r : t.rows) {
      lo = std::min(lo, r[c]);
      hi = std::max(hi, r[c]);
    }
    std::printf("%-18s %14.6e %14.6e %14.6e %14.6e\n", t.columns[c].c_str(), t.rows.front()[c],
                t.rows.back()[c], lo, hi);
  }
  std::printf("rows %zu\n", t.rows.size());

  if (!plot_path.empty()) {
    std::vector<std::size_t> cols;
    for (const auto& name : plot_cols) {
      auto it = std::find(t.columns.begin(), t.columns.end(), name);
      if (it == t.columns.end()) throw ConfigError("unknown column '" + name + "'");
      cols.push_back(static_cast<std::size_t>(it - t.columns.begin()));
    }
    write_svg(plot_path, t, cols, log_scale);
    std::printf("plot written to %s\n", plot_path.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nematic liquid crystal flow solver and verification harness"};
  app.require_subcommand(1);

  CommonArgs sim_args, grad_args, energy_args, scaling_args;

  auto* sim = app.add_subcommand("simulate", "run a simulation, write CSV, snapshots, summary");
  add_common(sim, sim_args);
  std::string output_dir;
  sim->add_option("-o,--output-dir", output_dir, "output directory (overrides output.dir)");

  auto* grad = app.add_subcommand("verify-gradients", "finite-difference check of W_d, W_p, W_pp");
  add_common(grad, grad_args);
  int samples = 10000;
  std::uint64_t seed = 1;
  double grad_tol = 1e-6;
  grad->add_option("--samples", samples, "random samples")->check(CLI::PositiveNumber);
  grad->add_option("--seed", seed, "sample seed");
  grad->add_option("--tol", grad_tol, "relative error tolerance");

  auto* energy = app.add_subcommand("verify-energy", "short run: energy balance and Lyapunov verdicts");
  add_common(energy, energy_args);

  auto* scaling = app.add_subcommand("scaling-test", "m(0) under the parabolic rescaling");
  add_common(scaling, scaling_args);
  int lambda = 2;
  double scaling_tol = 0.02;
  scaling->add_option("-l,--lambda", lambda, "scaling factor (must divide grid.n)");
  scaling->add_option("--tol", scaling_tol, "relative discrepancy tolerance");

  auto* report = app.add_subcommand("report", "summary table and optional SVG plot of a CSV ledger");
  std::string csv_path, plot_path;
  std::vector<std::string> plot_cols{"e_total", "e_kin", "e_frank"};
  bool log_scale = false;
  report->add_option("csv", csv_path, "ledger CSV")->required();
  report->add_option("--plot", plot_path, "write an SVG plot to this path");
  report->add_option("--columns", plot_cols, "columns to plot")->delimiter(',');
  report->add_flag("--log", log_scale, "logarithmic y axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) {
      if (!output_dir.empty()) sim_args.overrides.push_back("output.dir=" + output_dir);
      return cmd_simulate(sim_args);
    }
    if (*grad) return cmd_verify_gradients(grad_args, samples, seed, grad_tol);
    if (*energy) return cmd_verify_energy(energy_args);
    if (*scaling) return cmd_scaling(scaling_args, lambda, scaling_tol);
    if (*report) return cmd_report(csv_path, plot_path, plot_cols, log_scale);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
