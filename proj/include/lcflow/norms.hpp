#pragma once

#include <cmath>

#include "lcflow/errors.hpp"
#include "lcflow/field.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {

/// Equal-weight quadrature of |f|^p over the box, to the power 1/p. |f| is the
/// pointwise Euclidean (Frobenius for tensors) magnitude.
template <int C>
double lp_norm(const Field<C>& f, double p) {
  if (!(p >= 1.0)) throw ConfigError("lp_norm needs p >= 1");
  require_finite(f, "lp_norm");
  const double s = kernels::magnitude_power_sum(f.values(), f.grid(), C, p);
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

/// L2 norm of the order-th spectral derivative tensor, computed by Parseval.
template <int C>
double h_seminorm(const Field<C>& f, int order) {
  if (order < 0) throw ConfigError("h_seminorm needs order >= 0");
  require_finite(f, "h_seminorm");
  return std::sqrt(spec::l2_norm_sq(forward(f), order));
}

template <int C>
double max_magnitude(const Field<C>& f) {
  return kernels::magnitude_max(f.values(), f.grid(), C);
}

/// Equal-weight quadrature of a scalar field.
double integrate(const ScalarField& f);

/// Quadrature of the pointwise inner product a.b over the box.
template <int C>
double inner(const Field<C>& a, const Field<C>& b) {
  return kernels::dot_sum(a.values(), b.values(), a.grid(), C) * a.grid().cell_volume();
}

/// ||f||_4 / (||f||_2^{1/4} ||f||_6^{3/4}); at most 1 for equal-weight
/// quadrature, by Cauchy-Schwarz on |f| |f|^3. Returns 0 for f == 0.
template <int C>
double holder_ratio(const Field<C>& f) {
  const double l2 = lp_norm(f, 2.0);
  if (l2 == 0.0) return 0.0;
  return lp_norm(f, 4.0) / (std::pow(l2, 0.25) * std::pow(lp_norm(f, 6.0), 0.75));
}

}  // namespace lcflow
