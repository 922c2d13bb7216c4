#include "lcflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcflow/errors.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/norms.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {

void SolverConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end must be finite and >= 0");
  if (dt_policy == DtPolicy::fixed && !(dt > 0.0)) fail("fixed dt must be > 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) fail("cfl_safety must lie in (0, 1]");
  if (!(unit_tol > 0.0)) fail("unit_tol must be > 0");
  if (!(div_tol > 0.0)) fail("div_tol must be > 0");
  if (!(residual_tol > 0.0)) fail("residual_tol must be > 0");
  if (!(blowup_factor > 1.0)) fail("blowup_factor must be > 1");
  if (output_every < 1) fail("output_every must be >= 1");
  if (max_halvings < 0) fail("max_halvings must be >= 0");
}

void validate_state(const State& s, double unit_tol, double div_tol) {
  if (!(s.u.grid() == s.d.grid())) throw PreconditionError("u and d live on different grids");
  if (!all_finite(s.u) || !all_finite(s.d)) throw PreconditionError("state has non-finite values");
  const double unit_err = kernels::unit_length_error(s.d);
  if (unit_err > unit_tol) {
    std::ostringstream m;
    m << "director is not unit length: max ||d|-1| = " << unit_err << " > " << unit_tol;
    throw PreconditionError(m.str());
  }
  const double div_err = max_magnitude(divergence(s.u));
  const double bound = div_tol * (1.0 + lp_norm(s.u, 2.0));
  if (div_err > bound) {
    std::ostringstream m;
    m << "velocity is not divergence-free: max |div u| = " << div_err << " > " << bound;
    throw PreconditionError(m.str());
  }
}

namespace {

using Spec3 = SpectralField<3>;

void axpy(Spec3& y, double a, const Spec3& x) {
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += a * xv[i];
}

struct DirectorForces {
  Spec3 h_hat;
  Spec3 sigma_hat;
  TensorField grad_d;
};

// Products are formed node-wise and dealiased before being differentiated.
DirectorForces director_forces(const VectorField& d, const Spec3& d_hat, const FrankConstants& c) {
  const Grid& g = d.grid();
  TensorField grad_d = inverse(spec::gradient(d_hat));
  TensorField wp(g);
  VectorField wd(g);
  kernels::frank_terms(d, grad_d, c, wp, wd, nullptr);

  Spec3 h_hat = spec::divergence_rows(spec::dealias(forward(wp)));
  axpy(h_hat, -1.0, spec::dealias(forward(wd)));

  TensorField flux(g);
  kernels::stress_flux(grad_d, wp, flux);
  Spec3 sigma_hat = spec::divergence_cols(spec::dealias(forward(flux)));
  for (auto& v : sigma_hat.values()) v = -v;

  return {std::move(h_hat), std::move(sigma_hat), std::move(grad_d)};
}

struct Tendency {
  Spec3 u;
  Spec3 d;
};

// Explicit part of both equations. For the director this excludes the
// implicitly treated lambda * Delta d.
Tendency explicit_tendency(const VectorField& u, const Spec3& u_hat, const VectorField& d,
                           const Spec3& d_hat, const FrankConstants& c, double lambda) {
  const Grid& g = u.grid();
  DirectorForces f = director_forces(d, d_hat, c);

  const TensorField grad_u = inverse(spec::gradient(u_hat));
  VectorField adv(g);
  kernels::advect(u, grad_u, adv);
  Spec3 nu = spec::dealias(forward(adv));
  for (auto& v : nu.values()) v = -v;
  axpy(nu, 1.0, f.sigma_hat);
  nu = spec::leray_project(nu);

  const VectorField h = inverse(f.h_hat);
  VectorField rhs(g);
  kernels::tangential_part(h, d, rhs);
  kernels::advect(u, f.grad_d, adv);
  rhs -= adv;
  Spec3 nd = spec::dealias(forward(rhs));
  axpy(nd, -lambda, spec::laplacian(d_hat));

  return {std::move(nu), std::move(nd)};
}

double laplacian_symbol(const Grid& g, int kx, int ky, int kz) {
  const double mx = g.signed_mode(kx), my = g.signed_mode(ky), mz = g.signed_mode(kz);
  return g.k0() * g.k0() * (mx * mx + my * my + mz * mz);
}

}  // namespace

VectorField molecular_field(const VectorField& d, const FrankConstants& c) {
  require_finite(d, "molecular_field");
  VectorField h = inverse(director_forces(d, forward(d), c).h_hat);
  require_finite(h, "molecular_field (under-resolved director?)");
  return h;
}

VectorField director_rhs(const State& s, const FrankConstants& c) {
  require_finite(s.d, "director_rhs");
  require_finite(s.u, "director_rhs");
  const Grid& g = s.grid();
  DirectorForces f = director_forces(s.d, forward(s.d), c);
  const VectorField h = inverse(f.h_hat);
  VectorField rhs(g);
  kernels::tangential_part(h, s.d, rhs);
  VectorField adv(g);
  kernels::advect(s.u, f.grad_d, adv);
  rhs -= adv;
  require_finite(rhs, "director_rhs");
  return rhs;
}

VectorField ericksen_stress_divergence(const VectorField& d, const FrankConstants& c) {
  require_finite(d, "ericksen_stress_divergence");
  VectorField sigma = inverse(director_forces(d, forward(d), c).sigma_hat);
  require_finite(sigma, "ericksen_stress_divergence");
  return sigma;
}

VectorField momentum_rhs(const State& s, const FrankConstants& c) {
  const Spec3 u_hat = forward(s.u);
  const Spec3 d_hat = forward(s.d);
  Tendency t = explicit_tendency(s.u, u_hat, s.d, d_hat, c, 0.0);
  axpy(t.u, 1.0, spec::laplacian(u_hat));
  return inverse(t.u);
}

Tendencies tendencies(const State& s, const FrankConstants& c) {
  require_finite(s.d, "tendencies");
  require_finite(s.u, "tendencies");
  const Grid& g = s.grid();
  const Spec3 u_hat = forward(s.u);
  DirectorForces f = director_forces(s.d, forward(s.d), c);

  Tendencies t{inverse(f.h_hat), VectorField(g), VectorField(g), VectorField(g)};
  kernels::tangential_part(t.h, s.d, t.h_tangent);
  VectorField adv(g);
  kernels::advect(s.u, f.grad_d, adv);
  t.d_t = t.h_tangent - adv;

  kernels::advect(s.u, inverse(spec::gradient(u_hat)), adv);
  Spec3 nu = spec::dealias(forward(adv));
  for (auto& v : nu.values()) v = -v;
  axpy(nu, 1.0, f.sigma_hat);
  nu = spec::leray_project(nu);
  axpy(nu, 1.0, spec::laplacian(u_hat));
  t.u_t = inverse(nu);
  require_finite(t.d_t, "tendencies");
  require_finite(t.u_t, "tendencies");
  return t;
}

double implicit_director_coefficient(const FrankConstants& c) {
  // The molecular field of the one-constant energy k |grad d|^2 is 2k Delta d
  // (tangentially), so the diffusion lower bound is 2a.
  return 2.0 * ellipticity_constant(c);
}

double stable_dt(const State& s, const SolverConfig& cfg) {
  const double h = s.grid().spacing();
  const double kmax = std::max({cfg.frank.k1(), cfg.frank.k2(), cfg.frank.k3()});
  const double umax = max_magnitude(s.u);
  double bound = h * h / (4.0 * kmax);
  if (umax > 0.0) bound = std::min(bound, h / umax);
  return cfg.cfl_safety * bound;
}

State imex_step(const State& s, const FrankConstants& c, double dt) {
  // ARS(2,2,2): L-stable DIRK for the linear diffusion, explicit RK for the rest,
  // second order overall, stiffly accurate.
  const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
  const double delta = 1.0 - 1.0 / (2.0 * gamma);
  const double lambda = implicit_director_coefficient(c);
  const Grid& g = s.grid();

  const Spec3 u0 = forward(s.u);
  const Spec3 d0 = forward(s.d);
  const Tendency n0 = explicit_tendency(s.u, u0, s.d, d0, c, lambda);

  Spec3 u1(g), d1(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = laplacian_symbol(g, kx, ky, kz);
    const double su = 1.0 / (1.0 + gamma * dt * k2);
    const double sd = 1.0 / (1.0 + gamma * dt * lambda * k2);
    for (int c3 = 0; c3 < 3; ++c3) {
      u1(c3, idx) = (u0(c3, idx) + gamma * dt * n0.u(c3, idx)) * su;
      d1(c3, idx) = (d0(c3, idx) + gamma * dt * n0.d(c3, idx)) * sd;
    }
  });
  const VectorField u1_phys = inverse(u1);
  const VectorField d1_phys = inverse(d1);
  const Tendency n1 = explicit_tendency(u1_phys, u1, d1_phys, d1, c, lambda);

  Spec3 u2(g), d2(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = laplacian_symbol(g, kx, ky, kz);
    const double su = 1.0 / (1.0 + gamma * dt * k2);
    const double sd = 1.0 / (1.0 + gamma * dt * lambda * k2);
    for (int c3 = 0; c3 < 3; ++c3) {
      u2(c3, idx) = (u0(c3, idx) + dt * (-(1.0 - gamma) * k2 * u1(c3, idx) +
                                         delta * n0.u(c3, idx) + (1.0 - delta) * n1.u(c3, idx))) *
                    su;
      d2(c3, idx) =
          (d0(c3, idx) + dt * (-(1.0 - gamma) * lambda * k2 * d1(c3, idx) +
                               delta * n0.d(c3, idx) + (1.0 - delta) * n1.d(c3, idx))) *
          sd;
    }
  });

  return State(inverse(spec::leray_project(u2)), inverse(d2), s.t + dt);
}

StepOutcome step(const State& s, const SolverConfig& cfg) {
  double dt = cfg.dt_policy == DtPolicy::fixed ? cfg.dt : stable_dt(s, cfg);
  const double remaining = cfg.t_end - s.t;
  if (remaining > 0.0 && dt > remaining) dt = remaining;

  const double h = s.grid().spacing();
  const double umax = max_magnitude(s.u);
  int rejections = 0;
  for (;;) {
    if (rejections > cfg.max_halvings) {
      std::ostringstream m;
      m << "step rejected " << rejections << " times at t = " << s.t << "; dt = " << dt;
      throw NumericalError(m.str());
    }
    if (umax * dt > h) {
      dt *= 0.5;
      ++rejections;
      continue;
    }
    State next = imex_step(s, cfg.frank, dt);
    if (!all_finite(next.u) || !all_finite(next.d)) {
      dt *= 0.5;
      ++rejections;
      continue;
    }
    const double min_len = kernels::renormalize(next.d);
    if (!(min_len >= 0.5)) {
      std::ostringstream m;
      m << "min |d| = " << min_len << " before renormalization at t = " << next.t;
      throw RenormalizationFailure(m.str());
    }
    validate_state(next, cfg.unit_tol, cfg.div_tol);
    return {std::move(next), dt, rejections};
  }
}

SimulationResult simulate(const State& s0, const SolverConfig& cfg, StateObserver& observer) {
  cfg.validate();
  validate_state(s0, cfg.unit_tol, cfg.div_tol);

  State s = s0;
  RunSummary summary;
  const double t_tol = 1e-12 * std::max(1.0, cfg.t_end);
  bool go = observer.observe(s, 0);
  long n = 0;
  while (go && cfg.t_end - s.t > t_tol) {
    StepOutcome out{State(s.grid()), 0.0, 0};
    try {
      out = step(s, cfg);
    } catch (const RenormalizationFailure& e) {
      summary.termination = "renormalization_failure";
      summary.message = e.what();
      break;
    } catch (const NumericalError& e) {
      summary.termination = "numerical_failure";
      summary.message = e.what();
      break;
    } catch (const PreconditionError& e) {
      summary.termination = "numerical_failure";
      summary.message = e.what();
      break;
    }
    s = std::move(out.state);
    ++n;
    summary.rejected_steps += out.rejections;
    const bool last = cfg.t_end - s.t <= t_tol;
    if (last) s.t = cfg.t_end;
    if (last || n % cfg.output_every == 0) go = observer.observe(s, n);
  }
  if (!go) summary.termination = "stopped_by_observer";
  summary.steps = n;
  summary.t_final = s.t;
  return {std::move(s), summary};
}

}  // namespace lcflow
