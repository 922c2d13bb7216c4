#include "lcflow/grid.hpp"

#include <cmath>
#include <string>

#include "lcflow/errors.hpp"
#include "lcflow/field.hpp"

namespace lcflow {

Grid::Grid(int n, double box_length) : n_(n), length_(box_length) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("grid size must be even and >= 8, got " + std::to_string(n));
  }
  if (!std::isfinite(box_length) || box_length <= 0.0) {
    throw ConfigError("box length must be positive, got " + std::to_string(box_length));
  }
}

void require_finite(std::span<const double> values, std::string_view where) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericalError("non-finite value in " + std::string(where));
    }
  }
}

}  // namespace lcflow
