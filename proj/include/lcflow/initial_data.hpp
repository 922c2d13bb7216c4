#pragma once

#include <cstdint>
#include <random>

#include "lcflow/config.hpp"
#include "lcflow/dynamics.hpp"

namespace lcflow {

/// Portable uniform variates: std::mt19937_64 (fully specified by the
/// standard) with the top 53 bits mapped to [0, 1). std distributions are
/// avoided because their output is implementation defined.
class Prng {
 public:
  explicit Prng(std::uint64_t seed);
  double uniform();                              // [0, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }  // [-1, 1)

 private:
  std::mt19937_64 engine_;
};

/// Random band-limited vector field with integer modes |m_i| <= modes,
/// amplitudes decaying like 1 / (1 + |m|^2), scaled to max |f| = 1.
/// Deterministic in (grid, modes, seed).
VectorField random_band_limited(const Grid& g, int modes, Prng& rng);

/// A (sin x cos y cos z, -cos x sin y cos z, 0) with x measured in units of 2 pi / L.
VectorField taylor_green(const Grid& g, double amplitude);

/// Builds the initial state described by cfg (validated first):
///   equilibrium       u = 0, d = d_star
///   taylor-green      u = Taylor-Green(velocity_amplitude), d = d_star
///   director-perturb  d = (d_star + amplitude xi) / |.|, xi random with max|xi| = 1,
///                     u per init.velocity (none | taylor-green | random)
/// Throws ConfigError when the perturbation is large enough to make
/// |d_star + amplitude xi| < 1/2 somewhere.
State generate_initial_data(const RunConfig& cfg);

/// Periodic extension of f onto a grid `copies` times finer per axis, so the
/// box holds copies^3 replicas of the original period cell.
template <int C>
Field<C> tile(const Field<C>& f, int copies);

struct ScalingReport {
  int lambda = 1;
  double m0 = 0.0;
  double m_scaled = 0.0;
  double discrepancy = 0.0;  // |m_scaled - m0| / m0, 0 when m0 = 0
};

/// Parabolic rescaling u_l(x) = l u(l x), d_l(x) = d(l x) of the configured
/// initial data, realised on the same grid as l^3 copies of the data
/// resampled to n / l points. m is evaluated per period cell.
/// Requires n divisible by lambda with n / lambda even and >= 8.
ScalingReport scaling_test(const RunConfig& cfg, int lambda);

}  // namespace lcflow
