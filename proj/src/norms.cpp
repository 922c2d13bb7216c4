#include "lcflow/norms.hpp"

namespace lcflow {

double integrate(const ScalarField& f) {
  const auto v = f.values();
  const std::size_t slab = static_cast<std::size_t>(f.grid().n()) * f.grid().n();
  double s = 0.0;
  for (int iz = 0; iz < f.grid().n(); ++iz) {
    double part = 0.0;
    for (std::size_t i = iz * slab; i < (iz + 1) * slab; ++i) part += v[i];
    s += part;
  }
  return s * f.grid().cell_volume();
}

}  // namespace lcflow
