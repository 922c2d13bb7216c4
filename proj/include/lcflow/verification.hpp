#pragma once

#include <cstdint>

#include "lcflow/frank_energy.hpp"

namespace lcflow {

/// Largest relative discrepancies between the analytic derivatives of W and
/// central differences of energy_density (and of w_p for the second
/// derivative) over random samples with |d| in [0.5, 1.5], |p|_F <= 2.
struct GradientCheck {
  int samples = 0;
  double w_d = 0.0;
  double w_p = 0.0;
  double w_pp = 0.0;
  double worst() const;
};

GradientCheck check_gradients(const FrankConstants& c, int samples, std::uint64_t seed,
                              double step = 1e-5);

}  // namespace lcflow
