// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances below are fixed; do not loosen them to make a run pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcflow/config.hpp"
#include "lcflow/diagnostics.hpp"
#include "lcflow/frank_energy.hpp"
#include "lcflow/initial_data.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/norms.hpp"

using namespace lcflow;

namespace {

constexpr double kGradientTol = 1e-6;
constexpr double kEllipticitySlack = 1e-12;
constexpr double kReductionTol = 1e-8;
constexpr double kUnitIdentityTol = 1e-6;
constexpr double kBalanceTol = 1e-3;
constexpr double kMinObservedOrder = 1.5;
constexpr double kSmallDataM = 0.1;
constexpr double kUniformBoundFactor = 2.0;
constexpr double kScalingTol = 0.02;
constexpr double kHolderTol = 1e-12;

int failures = 0;
double holder_worst = 0.0;

void report(const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("%s  %-22s %s  [%.1f s]\n", pass ? "PASS" : "FAIL", name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class F>
void criterion(const char* name, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(name, pass, detail, s);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<FrankConstants> kConstantSets = {
    FrankConstants(1.0, 1.0, 1.0), FrankConstants(1.0, 0.5, 2.0), FrankConstants(0.3, 1.7, 0.9)};

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> sym{-1.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  Vec3 direction() {
    Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    const double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
    return v;
  }
  Mat3 matrix(double scale) {
    Mat3 m{};
    for (auto& row : m) {
      for (double& x : row) x = scale * sym(rng);
    }
    return m;
  }
};

double max_abs(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

// W is quadratic in d and in p separately, so central differences are exact
// up to round-off and make an independent oracle.
double gradient_discrepancy(const FrankConstants& c, Sampler& s) {
  const double len = 0.5 + 0.5 * (s.sym(s.rng) + 1.0);
  Vec3 d = s.direction();
  for (double& x : d) x *= len;
  const Mat3 p = s.matrix(1.0);
  const Mat3 xi = s.matrix(0.5);
  const PointState st{d, p};
  const double h = 1e-4;

  const Vec3 wd = w_d(st, c);
  Vec3 fd_d{};
  for (int i = 0; i < 3; ++i) {
    PointState a = st, b = st;
    a.d[i] += h;
    b.d[i] -= h;
    fd_d[i] = (energy_density(a, c) - energy_density(b, c)) / (2.0 * h);
  }
  double err = 0.0;
  {
    double diff = 0.0;
    for (int i = 0; i < 3; ++i) diff = std::max(diff, std::abs(wd[i] - fd_d[i]));
    err = std::max(err, diff / std::max(max_abs(wd), 1e-8));
  }

  const Mat3 wp = w_p(st, c);
  double diff = 0.0, scale = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      PointState a = st, b = st;
      a.p[j][k] += h;
      b.p[j][k] -= h;
      const double fd = (energy_density(a, c) - energy_density(b, c)) / (2.0 * h);
      diff = std::max(diff, std::abs(wp[j][k] - fd));
      scale = std::max(scale, std::abs(wp[j][k]));
    }
  }
  err = std::max(err, diff / std::max(scale, 1e-8));

  const double t = 0.1;
  PointState a = st, b = st;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      a.p[j][k] += t * xi[j][k];
      b.p[j][k] -= t * xi[j][k];
    }
  }
  const double fd2 = (energy_density(a, c) - 2.0 * energy_density(st, c) + energy_density(b, c)) / (t * t);
  const double wpp = w_pp_quadratic_form(d, xi, c);
  err = std::max(err, std::abs(wpp - fd2) / std::max(std::abs(wpp), 1e-8));
  return err;
}

RunConfig run_config(int n, double dt, double t_end, double amplitude, double tg) {
  RunConfig c;
  c.n = n;
  c.dt = dt;
  c.t_end = t_end;
  c.init_kind = "director-perturb";
  c.amplitude = amplitude;
  c.velocity = "taylor-green";
  c.velocity_amplitude = tg;
  c.seed = 7;
  c.validate();
  return c;
}

struct Run {
  std::vector<DiagnosticsRecord> history;
  RunSummary summary;
  double max_rel_residual = 0.0;
  std::string csv;
};

Run run(const RunConfig& cfg) {
  std::ostringstream csv;
  const SolverConfig sc = cfg.solver();
  Monitor mon(sc.frank, {sc.residual_tol, sc.blowup_factor}, &csv);
  const SimulationResult r = simulate(generate_initial_data(cfg), sc, mon);
  Run out{mon.history(), r.summary, mon.max_relative_residual(), csv.str()};
  for (const auto& rec : out.history) holder_worst = std::max(holder_worst, rec.holder_max);
  return out;
}

VectorField smooth_unit_director(const Grid& g, std::uint64_t seed) {
  Prng rng(seed);
  VectorField d = random_band_limited(g, 3, rng);
  d *= 0.5;
  for (auto& v : d.comp(2)) v += 1.0;
  kernels::renormalize(d);
  return d;
}

// Renormalized e3 + a (sin(m y), sin(m z), sin(m x)) with one wavenumber per component.
VectorField single_mode_director(const Grid& g, int m, double a) {
  VectorField d(g);
  for (int iz = 0; iz < g.n(); ++iz) {
    for (int iy = 0; iy < g.n(); ++iy) {
      for (int ix = 0; ix < g.n(); ++ix) {
        const auto i = g.index(ix, iy, iz);
        d(0, i) = a * std::sin(m * g.coord(iy));
        d(1, i) = a * std::sin(m * g.coord(iz));
        d(2, i) = 1.0 + a * std::sin(m * g.coord(ix));
      }
    }
  }
  kernels::renormalize(d);
  return d;
}

}  // namespace

int main() {
  criterion("gradient_consistency", [](std::string& detail) {
    double worst = 0.0;
    for (std::size_t k = 0; k < kConstantSets.size(); ++k) {
      Sampler s(100 + k);
      for (int i = 0; i < 10000; ++i) worst = std::max(worst, gradient_discrepancy(kConstantSets[k], s));
    }
    detail = fmt("max rel err %.3e", worst) + fmt(" (tol %.0e)", kGradientTol);
    return worst <= kGradientTol;
  });

  criterion("ellipticity", [](std::string& detail) {
    long bad_w = 0, bad_pp = 0;
    double worst = std::numeric_limits<double>::infinity();
    const int samples = 100000;
    for (std::size_t k = 0; k < kConstantSets.size(); ++k) {
      const FrankConstants& c = kConstantSets[k];
      const double a = ellipticity_constant(c);
      Sampler s(200 + k);
      for (int i = 0; i < samples; ++i) {
        const Vec3 d = s.direction();
        const Mat3 p = s.matrix(1.0);
        const Mat3 xi = s.matrix(1.0);
        const double pn = frobenius_norm_sq(p);
        const double w = energy_density({d, p}, c);
        if (w < a * pn - kEllipticitySlack) ++bad_w;
        if (w_pp_quadratic_form(d, xi, c) < a * frobenius_norm_sq(xi) - kEllipticitySlack) ++bad_pp;
        worst = std::min(worst, w / (a * pn));
      }
    }
    detail = "violations W: " + std::to_string(bad_w) + ", W_pp: " + std::to_string(bad_pp) +
             " of " + std::to_string(3 * samples) + fmt("; min W/(a|p|^2) = %.3e", worst);
    return bad_w == 0 && bad_pp == 0;
  });

  criterion("one_constant_reduction", [](std::string& detail) {
    const Grid g(64, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      worst = std::max(worst, one_constant_reduction_check(smooth_unit_director(g, seed), 1.3));
    }
    detail = fmt("max rel defect %.3e", worst) + fmt(" (tol %.0e)", kReductionTol);
    return worst <= kReductionTol;
  });

  criterion("unit_identity", [](std::string& detail) {
    const Grid g(64, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
      worst = std::max(worst, unit_identity_check(single_mode_director(g, m, 0.3)));
    }
    detail = fmt("max rel defect %.3e", worst) + fmt(" (tol %.0e)", kUnitIdentityTol);
    return worst <= kUnitIdentityTol;
  });

  criterion("energy_balance", [](std::string& detail) {
    const Run fine = run(run_config(32, 1e-4, 0.2, 0.05, 0.02));
    const Run coarse = run(run_config(32, 2e-4, 0.2, 0.05, 0.02));
    if (fine.summary.termination != "completed" || coarse.summary.termination != "completed") {
      detail = "run did not complete: " + fine.summary.termination + " / " + coarse.summary.termination;
      return false;
    }
    const double order = std::log2(coarse.max_rel_residual / fine.max_rel_residual);
    detail = fmt("max rel residual %.3e", fine.max_rel_residual) +
             fmt(" at dt=1e-4, %.3e", coarse.max_rel_residual) +
             fmt(" at dt=2e-4, observed order %.2f", order) +
             fmt(" (tol %.0e,", kBalanceTol) + fmt(" order >= %.1f)", kMinObservedOrder);
    return fine.max_rel_residual <= kBalanceTol && order >= kMinObservedOrder;
  });

  // Small-data run shared by the Lyapunov and uniform bound criteria.
  const RunConfig small = run_config(32, 1e-3, 0.5, 0.01, 0.005);
  Run small_run;
  bool small_ok = false;
  const auto small_t0 = std::chrono::steady_clock::now();
  try {
    small_run = run(small);
    small_ok = small_run.summary.termination == "completed";
  } catch (const std::exception& e) {
    small_run.summary.message = e.what();
  }
  const double small_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - small_t0).count();

  criterion("lyapunov_monotonicity", [&](std::string& detail) {
    if (!small_ok) {
      detail = "small-data run failed: " + small_run.summary.termination + " " + small_run.summary.message;
      return false;
    }
    const auto& h = small_run.history;
    const double m0 = h.front().m_instant;
    const LyapunovVerdict v = lyapunov_check(h, small.residual_tol);
    bool strict = true;
    for (std::size_t i = 1; i < h.size(); ++i) strict = strict && h[i].e_total < h[i - 1].e_total;
    detail = fmt("m(0) = %.3e;", m0) + " lyap0 " + (v.lyap0.monotone ? "monotone" : "increases") +
             ", lyap1 " + (v.lyap1.monotone ? "monotone" : "increases") + ", e_total " +
             (strict ? "strictly decreasing" : "not strictly decreasing") +
             fmt(" (shared run %.1f s)", small_seconds);
    return m0 <= kSmallDataM && v.monotone() && strict;
  });

  criterion("uniform_bound", [&](std::string& detail) {
    if (!small_ok) {
      detail = "small-data run failed";
      return false;
    }
    const auto& h = small_run.history;
    double sup = 0.0;
    for (const auto& r : h) sup = std::max(sup, blowup_indicator(r));
    const double factor = sup / blowup_indicator(h.front());
    detail = fmt("sup / initial = %.6f", factor) + fmt(" (tol %.1f)", kUniformBoundFactor);
    return factor <= kUniformBoundFactor;
  });

  criterion("scaling_invariance", [](std::string& detail) {
    RunConfig c = run_config(64, 1e-4, 0.0, 0.1, 0.0);
    c.velocity = "random";
    c.velocity_amplitude = 0.1;
    const ScalingReport r = scaling_test(c, 2);
    detail = fmt("m0 = %.6e", r.m0) + fmt(", m_2 = %.6e", r.m_scaled) +
             fmt(", discrepancy %.3e", r.discrepancy) + fmt(" (tol %.2f)", kScalingTol);
    return r.discrepancy <= kScalingTol;
  });

  criterion("determinism", [](std::string& detail) {
    const RunConfig c = run_config(32, 1e-4, 0.01, 0.05, 0.02);
    const Run a = run(c);
    const Run b = run(c);
    const bool same = !a.csv.empty() && a.csv == b.csv;
    detail = std::to_string(a.history.size()) + " rows, ledgers " + (same ? "byte-identical" : "differ");
    return same;
  });

  criterion("holder", [](std::string& detail) {
    detail = fmt("max ratio over all runs %.15f", holder_worst) + fmt(" (tol 1 + %.0e)", kHolderTol);
    return holder_worst > 0.0 && holder_worst <= 1.0 + kHolderTol;
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
