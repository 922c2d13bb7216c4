#pragma once

#include <cstddef>
#include <numbers>

namespace lcflow {

/// Uniform periodic grid on the cube [0, L)^3 with n points per axis.
class Grid {
 public:
  /// n must be even and at least 8; L positive and finite. Throws ConfigError.
  Grid(int n, double box_length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  double volume() const { return length_ * length_ * length_; }

  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  int half() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(half()) * n_ * n_; }

  std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n_) * (iy + static_cast<std::size_t>(n_) * iz);
  }
  std::size_t spectral_index(int kx, int ky, int kz) const {
    return static_cast<std::size_t>(kx) + static_cast<std::size_t>(half()) * (ky + static_cast<std::size_t>(n_) * kz);
  }
  double coord(int i) const { return i * spacing(); }

  /// Angular wavenumber unit 2 pi / L.
  double k0() const { return 2.0 * std::numbers::pi / length_; }

  /// Signed integer wavenumber of FFT index j (j in [0, n)).
  int signed_mode(int j) const { return j <= n_ / 2 ? j : j - n_; }

  /// Wavenumber used for odd derivatives: the Nyquist mode maps to zero so that
  /// derivatives of real fields stay real.
  double derivative_wavenumber(int j) const {
    return j == n_ / 2 ? 0.0 : k0() * signed_mode(j);
  }

  bool operator==(const Grid&) const = default;

 private:
  int n_;
  double length_;
};

}  // namespace lcflow
