#include "lcflow/initial_data.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "lcflow/diagnostics.hpp"
#include "lcflow/errors.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/norms.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {

Prng::Prng(std::uint64_t seed) : engine_(seed) {}

double Prng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

VectorField random_band_limited(const Grid& g, int modes, Prng& rng) {
  if (modes < 1 || 3 * modes > g.n()) throw ConfigError("modes must lie in [1, n/3]");
  const int n = g.n();
  const int span = 2 * modes + 1;

  // e[m + modes][i] = exp(i k0 m x_i), shared by the three axes.
  std::vector<std::complex<double>> e(static_cast<std::size_t>(span) * n);
  for (int m = -modes; m <= modes; ++m) {
    for (int i = 0; i < n; ++i) {
      const double a = g.k0() * m * g.coord(i);
      e[static_cast<std::size_t>(m + modes) * n + i] = {std::cos(a), std::sin(a)};
    }
  }
  auto tab = [&](int m, int i) { return e[static_cast<std::size_t>(m + modes) * n + i]; };

  // Half set of nonzero modes: the first nonzero of (mz, my, mx) is positive.
  struct Mode {
    int mx, my, mz;
    double a[3], b[3];
  };
  std::vector<Mode> list;
  for (int mz = -modes; mz <= modes; ++mz) {
    for (int my = -modes; my <= modes; ++my) {
      for (int mx = -modes; mx <= modes; ++mx) {
        const bool upper = mz > 0 || (mz == 0 && (my > 0 || (my == 0 && mx > 0)));
        if (!upper) continue;
        list.push_back({mx, my, mz, {}, {}});
      }
    }
  }
  for (int c = 0; c < 3; ++c) {
    for (auto& m : list) {
      const double decay = 1.0 / (1.0 + m.mx * m.mx + m.my * m.my + m.mz * m.mz);
      m.a[c] = decay * rng.symmetric();
      m.b[c] = decay * rng.symmetric();
    }
  }

  VectorField f(g);
#pragma omp parallel for schedule(static)
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        double v[3] = {0.0, 0.0, 0.0};
        for (const auto& m : list) {
          const std::complex<double> ph = tab(m.mx, ix) * tab(m.my, iy) * tab(m.mz, iz);
          for (int c = 0; c < 3; ++c) v[c] += m.a[c] * ph.real() + m.b[c] * ph.imag();
        }
        const auto idx = g.index(ix, iy, iz);
        for (int c = 0; c < 3; ++c) f(c, idx) = v[c];
      }
    }
  }
  const double peak = max_magnitude(f);
  if (peak > 0.0) f *= 1.0 / peak;
  return f;
}

VectorField taylor_green(const Grid& g, double amplitude) {
  VectorField u(g);
  const int n = g.n();
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double x = g.k0() * g.coord(ix), y = g.k0() * g.coord(iy), z = g.k0() * g.coord(iz);
        const auto idx = g.index(ix, iy, iz);
        u(0, idx) = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        u(1, idx) = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
        u(2, idx) = 0.0;
      }
    }
  }
  return u;
}

namespace {

VectorField constant_director(const Grid& g, const Vec3& d_star) {
  VectorField d(g);
  for (int c = 0; c < 3; ++c) {
    for (auto& v : d.comp(c)) v = d_star[c];
  }
  return d;
}

}  // namespace

State generate_initial_data(const RunConfig& cfg) {
  cfg.validate();
  const Grid g = cfg.grid();
  // One stream per purpose so that changing one setting leaves the other field intact.
  Prng director_rng(cfg.seed);
  Prng velocity_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  State s(g);
  s.d = constant_director(g, cfg.d_star);
  if (cfg.init_kind == "equilibrium") return s;

  if (cfg.init_kind == "taylor-green") {
    s.u = taylor_green(g, cfg.velocity_amplitude);
    return s;
  }

  // director-perturb
  if (cfg.amplitude > 0.0) {
    VectorField xi = random_band_limited(g, cfg.modes, director_rng);
    xi *= cfg.amplitude;
    s.d += xi;
    const double min_len = kernels::renormalize(s.d);
    if (min_len < 0.5) {
      throw ConfigError("init.amplitude too large: |d_star + perturbation| drops to " +
                        std::to_string(min_len));
    }
  }
  if (cfg.velocity == "taylor-green") {
    s.u = taylor_green(g, cfg.velocity_amplitude);
  } else if (cfg.velocity == "random" && cfg.velocity_amplitude > 0.0) {
    VectorField u = leray_project(random_band_limited(g, cfg.modes, velocity_rng));
    const double peak = max_magnitude(u);
    if (peak > 0.0) u *= cfg.velocity_amplitude / peak;
    s.u = std::move(u);
  }
  return s;
}

template <int C>
Field<C> tile(const Field<C>& f, int copies) {
  if (copies < 1) throw ConfigError("tile: copies must be >= 1");
  const Grid& src = f.grid();
  const int nc = src.n();
  const Grid dst(nc * copies, src.length());
  Field<C> out(dst);
  const int n = dst.n();
  for (int c = 0; c < C; ++c) {
    for (int iz = 0; iz < n; ++iz) {
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
          out(c, dst.index(ix, iy, iz)) = f(c, src.index(ix % nc, iy % nc, iz % nc));
        }
      }
    }
  }
  return out;
}

template Field<1> tile(const Field<1>&, int);
template Field<3> tile(const Field<3>&, int);

ScalingReport scaling_test(const RunConfig& cfg, int lambda) {
  const int n = cfg.n;
  if (lambda < 1 || n % lambda != 0) {
    throw ConfigError("scaling-test: lambda must divide grid.n");
  }
  const int nc = n / lambda;
  if (nc % 2 != 0 || nc < 8) {
    throw ConfigError("scaling-test: n / lambda must be even and >= 8");
  }
  const State s = generate_initial_data(cfg);
  const FrankConstants c = cfg.frank();
  ScalingReport rep;
  rep.lambda = lambda;
  rep.m0 = measure(s, c).m_instant;

  VectorField u = tile(resample(s.u, nc), lambda);
  u *= static_cast<double>(lambda);
  VectorField d = tile(resample(s.d, nc), lambda);
  const State scaled(std::move(u), std::move(d), 0.0);
  const DiagnosticsRecord r = measure(scaled, c);

  // Box norms cover lambda^3 cells; an L2 norm per cell is the box norm / lambda^{3/2}.
  const double cell = std::pow(static_cast<double>(lambda), -1.5);
  rep.m_scaled = cell * cell * (r.l2_u + r.l2_grad_d) * (r.l2_grad_u + r.l2_hess_d);
  rep.discrepancy = rep.m0 > 0.0 ? std::abs(rep.m_scaled - rep.m0) / rep.m0 : 0.0;
  return rep;
}

}  // namespace lcflow
