#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lcflow/kernels.hpp"

namespace lcflow::kernels {

namespace {

double magnitude_pow(double sq, double p) {
  if (p == 2.0) return sq;
  if (p == 4.0) return sq * sq;
  if (p == 6.0) return sq * sq * sq;
  return std::pow(sq, 0.5 * p);
}

std::size_t slab_size(const Grid& g) { return static_cast<std::size_t>(g.n()) * g.n(); }

template <class SlabFn>
double slab_sum(const Grid& g, SlabFn&& fn) {
  const int n = g.n();
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int iz = 0; iz < n; ++iz) {
    const std::size_t begin = iz * slab_size(g);
    partial[iz] = fn(begin, begin + slab_size(g));
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

template <class SlabFn>
double slab_max(const Grid& g, SlabFn&& fn) {
  const int n = g.n();
  std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int iz = 0; iz < n; ++iz) {
    const std::size_t begin = iz * slab_size(g);
    partial[iz] = fn(begin, begin + slab_size(g));
  }
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace

double magnitude_power_sum(std::span<const double> values, const Grid& grid, int components,
                           double p) {
  const std::size_t N = grid.size();
  return slab_sum(grid, [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      double sq = 0.0;
      for (int c = 0; c < components; ++c) {
        const double v = values[c * N + i];
        sq += v * v;
      }
      s += magnitude_pow(sq, p);
    }
    return s;
  });
}

double dot_sum(std::span<const double> a, std::span<const double> b, const Grid& grid,
               int components) {
  const std::size_t N = grid.size();
  return slab_sum(grid, [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      for (int c = 0; c < components; ++c) s += a[c * N + i] * b[c * N + i];
    }
    return s;
  });
}

double magnitude_max(std::span<const double> values, const Grid& grid, int components) {
  const std::size_t N = grid.size();
  return slab_max(grid, [&](std::size_t b, std::size_t e) {
    double m = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      double sq = 0.0;
      for (int c = 0; c < components; ++c) {
        const double v = values[c * N + i];
        sq += v * v;
      }
      m = std::max(m, sq);
    }
    return std::sqrt(m);
  });
}

void frank_terms(const VectorField& d, const TensorField& grad_d, const FrankConstants& c,
                 TensorField& wp, VectorField& wd, ScalarField* w) {
  const std::ptrdiff_t N = static_cast<std::ptrdiff_t>(d.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < N; ++i) {
    PointState s;
    for (int k = 0; k < 3; ++k) s.d[k] = d(k, i);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) s.p[j][k] = grad_d(3 * j + k, i);
    }
    const FrankTerms t = lcflow::frank_terms(s, c);
    for (int k = 0; k < 3; ++k) wd(k, i) = t.wd[k];
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) wp(3 * j + k, i) = t.wp[j][k];
    }
    if (w != nullptr) (*w)(0, i) = t.w;
  }
}

void advect(const VectorField& u, const TensorField& grad_f, VectorField& out) {
  const std::ptrdiff_t N = static_cast<std::ptrdiff_t>(u.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < N; ++i) {
    const double u0 = u(0, i), u1 = u(1, i), u2 = u(2, i);
    for (int k = 0; k < 3; ++k) {
      out(k, i) = u0 * grad_f(k, i) + u1 * grad_f(3 + k, i) + u2 * grad_f(6 + k, i);
    }
  }
}

void stress_flux(const TensorField& grad_d, const TensorField& wp, TensorField& out) {
  const std::ptrdiff_t N = static_cast<std::ptrdiff_t>(grad_d.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < N; ++n) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out(3 * i + j, n) = grad_d(3 * i, n) * wp(3 * j, n) +
                            grad_d(3 * i + 1, n) * wp(3 * j + 1, n) +
                            grad_d(3 * i + 2, n) * wp(3 * j + 2, n);
      }
    }
  }
}

void tangential_part(const VectorField& h, const VectorField& d, VectorField& out) {
  const std::ptrdiff_t N = static_cast<std::ptrdiff_t>(h.nodes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < N; ++i) {
    const double hd = h(0, i) * d(0, i) + h(1, i) * d(1, i) + h(2, i) * d(2, i);
    for (int k = 0; k < 3; ++k) out(k, i) = h(k, i) - hd * d(k, i);
  }
}

double renormalize(VectorField& d) {
  const Grid& g = d.grid();
  const int n = g.n();
  std::vector<double> partial(n, std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(static)
  for (int iz = 0; iz < n; ++iz) {
    double m = std::numeric_limits<double>::infinity();
    const std::size_t b = iz * slab_size(g);
    for (std::size_t i = b; i < b + slab_size(g); ++i) {
      const double len = std::sqrt(d(0, i) * d(0, i) + d(1, i) * d(1, i) + d(2, i) * d(2, i));
      m = std::min(m, len);
      for (int k = 0; k < 3; ++k) d(k, i) /= len;
    }
    partial[iz] = m;
  }
  return *std::min_element(partial.begin(), partial.end());
}

double unit_length_error(const VectorField& d) {
  return slab_max(d.grid(), [&](std::size_t b, std::size_t e) {
    double m = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      const double len = std::sqrt(d(0, i) * d(0, i) + d(1, i) * d(1, i) + d(2, i) * d(2, i));
      m = std::max(m, std::abs(len - 1.0));
    }
    return m;
  });
}

}  // namespace lcflow::kernels
