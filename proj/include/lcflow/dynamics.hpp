#pragma once

#include <string>

#include "lcflow/field.hpp"
#include "lcflow/frank_energy.hpp"

namespace lcflow {

/// Velocity, director and time. Invariants (checked by validate_state):
/// div u = 0 and |d| = 1 at every node, up to the configured tolerances.
struct State {
  VectorField u;
  VectorField d;
  double t = 0.0;

  explicit State(const Grid& g) : u(g), d(g) {}
  State(VectorField u_, VectorField d_, double t_) : u(std::move(u_)), d(std::move(d_)), t(t_) {}

  const Grid& grid() const { return u.grid(); }
};

enum class DtPolicy { fixed, cfl_adaptive };

struct SolverConfig {
  FrankConstants frank{1.0, 1.0, 1.0};
  DtPolicy dt_policy = DtPolicy::fixed;
  double dt = 1e-4;          // used by DtPolicy::fixed
  double cfl_safety = 0.5;   // used by DtPolicy::cfl_adaptive, in (0, 1]
  double t_end = 0.1;
  double unit_tol = 1e-12;
  double div_tol = 1e-10;
  double residual_tol = 1e-3;
  double blowup_factor = 1e3;
  int output_every = 1;
  int max_halvings = 30;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Raised when |d| collapses below 1/2 somewhere, which the renormalization
/// cannot repair; the run is treated as blow-up suspect.
class RenormalizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks finiteness, max||d|-1| <= unit_tol and max|div u| <= div_tol (1 + ||u||_2).
/// Throws PreconditionError describing the first failed condition.
void validate_state(const State& s, double unit_tol, double div_tol);

/// h^i = d_j W_{p^i_j}(d, grad d) - W_{d^i}(d, grad d).
VectorField molecular_field(const VectorField& d, const FrankConstants& c);

/// -(u.grad)d + h - (h.d)d, the right-hand side of the director equation.
VectorField director_rhs(const State& s, const FrankConstants& c);

/// sigma_i = -d_j(d_i d^k W_{p^k_j}(d, grad d)), the Ericksen body force.
VectorField ericksen_stress_divergence(const VectorField& d, const FrankConstants& c);

/// du/dt after the pressure has been projected out:
/// Leray[-(u.grad)u + sigma] + Delta u (unit viscosity and density).
VectorField momentum_rhs(const State& s, const FrankConstants& c);

struct Tendencies {
  VectorField h;          // molecular field
  VectorField h_tangent;  // h - (h.d)d
  VectorField d_t;        // director_rhs
  VectorField u_t;        // momentum_rhs
};

/// All of the above from one evaluation of the elastic terms.
Tendencies tendencies(const State& s, const FrankConstants& c);

/// Coefficient of the director Laplacian that the stepper treats implicitly.
double implicit_director_coefficient(const FrankConstants& c);

/// Largest dt allowed by the CFL heuristic
/// cfl_safety * min(h / max|u|, h^2 / (4 max k)).
double stable_dt(const State& s, const SolverConfig& cfg);

/// One IMEX step of size dt without the final renormalization of d. The
/// velocity is divergence-free; |d| deviates from 1 by the local truncation error.
State imex_step(const State& s, const FrankConstants& c, double dt);

struct StepOutcome {
  State state;
  double dt = 0.0;
  int rejections = 0;
};

/// Advances one step with dt from the policy (clipped so t does not pass
/// t_end), halving dt on a CFL violation or non-finite values, then
/// renormalizes d. Throws NumericalError when halving gives up and
/// RenormalizationFailure if min |d| < 1/2 before renormalization.
StepOutcome step(const State& s, const SolverConfig& cfg);

/// Receives the state at output instants. Returning false stops the run.
class StateObserver {
 public:
  virtual ~StateObserver() = default;
  virtual bool observe(const State& s, long step_index) = 0;
};

struct RunSummary {
  std::string termination = "completed";  // completed | stopped_by_observer |
                                          // renormalization_failure | numerical_failure
  std::string message;
  long steps = 0;
  long rejected_steps = 0;
  double t_final = 0.0;
};

struct SimulationResult {
  State final_state;
  RunSummary summary;
};

/// Steps until t_end, reporting to `observer` at t = 0, every output_every
/// steps and at the final time. Deterministic for a given (s0, cfg).
SimulationResult simulate(const State& s0, const SolverConfig& cfg, StateObserver& observer);

}  // namespace lcflow
