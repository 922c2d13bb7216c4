// Serial reference versions of the node kernels. Straight loops, one running
// accumulator, no slab partitioning.

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcflow/kernels.hpp"

namespace lcflow::reference {

double magnitude_power_sum(std::span<const double> values, const Grid& grid, int components,
                           double p) {
  const std::size_t N = grid.size();
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double sq = 0.0;
    for (int c = 0; c < components; ++c) sq += values[c * N + i] * values[c * N + i];
    s += std::pow(std::sqrt(sq), p);
  }
  return s;
}

double dot_sum(std::span<const double> a, std::span<const double> b, const Grid& grid,
               int components) {
  const std::size_t N = grid.size();
  double s = 0.0;
  for (int c = 0; c < components; ++c) {
    for (std::size_t i = 0; i < N; ++i) s += a[c * N + i] * b[c * N + i];
  }
  return s;
}

double magnitude_max(std::span<const double> values, const Grid& grid, int components) {
  const std::size_t N = grid.size();
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double sq = 0.0;
    for (int c = 0; c < components; ++c) sq += values[c * N + i] * values[c * N + i];
    m = std::max(m, std::sqrt(sq));
  }
  return m;
}

void frank_terms(const VectorField& d, const TensorField& grad_d, const FrankConstants& c,
                 TensorField& wp, VectorField& wd, ScalarField* w) {
  for (std::size_t i = 0; i < d.nodes(); ++i) {
    PointState s;
    for (int k = 0; k < 3; ++k) s.d[k] = d(k, i);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) s.p[j][k] = grad_d(3 * j + k, i);
    }
    const Vec3 g = lcflow::w_d(s, c);
    const Mat3 m = lcflow::w_p(s, c);
    for (int k = 0; k < 3; ++k) wd(k, i) = g[k];
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) wp(3 * j + k, i) = m[j][k];
    }
    if (w != nullptr) (*w)(0, i) = lcflow::energy_density(s, c);
  }
}

void advect(const VectorField& u, const TensorField& grad_f, VectorField& out) {
  for (std::size_t i = 0; i < u.nodes(); ++i) {
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += u(j, i) * grad_f(3 * j + k, i);
      out(k, i) = s;
    }
  }
}

void stress_flux(const TensorField& grad_d, const TensorField& wp, TensorField& out) {
  for (std::size_t n = 0; n < grad_d.nodes(); ++n) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += grad_d(3 * i + k, n) * wp(3 * j + k, n);
        out(3 * i + j, n) = s;
      }
    }
  }
}

void tangential_part(const VectorField& h, const VectorField& d, VectorField& out) {
  for (std::size_t i = 0; i < h.nodes(); ++i) {
    double hd = 0.0;
    for (int k = 0; k < 3; ++k) hd += h(k, i) * d(k, i);
    for (int k = 0; k < 3; ++k) out(k, i) = h(k, i) - hd * d(k, i);
  }
}

double renormalize(VectorField& d) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.nodes(); ++i) {
    double sq = 0.0;
    for (int k = 0; k < 3; ++k) sq += d(k, i) * d(k, i);
    const double len = std::sqrt(sq);
    m = std::min(m, len);
    for (int k = 0; k < 3; ++k) d(k, i) /= len;
  }
  return m;
}

double unit_length_error(const VectorField& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.nodes(); ++i) {
    double sq = 0.0;
    for (int k = 0; k < 3; ++k) sq += d(k, i) * d(k, i);
    m = std::max(m, std::abs(std::sqrt(sq) - 1.0));
  }
  return m;
}

}  // namespace lcflow::reference
