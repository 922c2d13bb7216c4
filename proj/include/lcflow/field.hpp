#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lcflow/aligned.hpp"
#include "lcflow/grid.hpp"

namespace lcflow {

/// Real samples of a C-component field on a periodic grid.
///
/// Storage is component-major: all nodes of component 0, then component 1, and
/// within a component x is the fastest index. Tensor fields use component
/// 3*j + k for the (j, k) entry; a gradient stores d_j f^k there.
template <int C>
class Field {
 public:
  static constexpr int components = C;

  explicit Field(const Grid& grid) : grid_(grid), data_(grid.size() * C, 0.0) {}

  const Grid& grid() const { return grid_; }
  std::size_t nodes() const { return grid_.size(); }

  std::span<double> comp(int c) { return {data_.data() + c * nodes(), nodes()}; }
  std::span<const double> comp(int c) const { return {data_.data() + c * nodes(), nodes()}; }

  double& operator()(int c, std::size_t idx) { return data_[c * nodes() + idx]; }
  double operator()(int c, std::size_t idx) const { return data_[c * nodes() + idx]; }

  std::span<double> values() { return {data_.data(), data_.size()}; }
  std::span<const double> values() const { return {data_.data(), data_.size()}; }

  Field& operator+=(const Field& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Field& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  bool operator==(const Field& o) const { return grid_ == o.grid_ && data_ == o.data_; }

 private:
  Grid grid_;
  AlignedVector<double> data_;
};

using ScalarField = Field<1>;
using VectorField = Field<3>;
using TensorField = Field<9>;

template <int C>
Field<C> operator+(Field<C> a, const Field<C>& b) {
  return a += b;
}
template <int C>
Field<C> operator-(Field<C> a, const Field<C>& b) {
  return a -= b;
}
template <int C>
Field<C> operator*(double s, Field<C> a) {
  return a *= s;
}

template <int C>
bool all_finite(const Field<C>& f) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

/// Throws NumericalError naming `where` if any sample is NaN or Inf.
void require_finite(std::span<const double> values, std::string_view where);

template <int C>
void require_finite(const Field<C>& f, std::string_view where) {
  require_finite(f.values(), where);
}

/// Maximum absolute difference between two fields on the same grid.
template <int C>
double max_abs_diff(const Field<C>& a, const Field<C>& b) {
  double m = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

/// Fourier coefficients of a real C-component field, in the half-spectrum layout
/// kx in [0, n/2], ky, kz in [0, n) with index kx + (n/2+1) * (ky + n * kz).
///
/// Coefficients are normalized so that f(x) = sum_k f_k exp(i k.x), i.e. the
/// zero mode is the mean of the field.
template <int C>
class SpectralField {
 public:
  static constexpr int components = C;
  using value_type = std::complex<double>;

  explicit SpectralField(const Grid& grid)
      : grid_(grid), data_(grid.spectral_size() * C, value_type{0.0, 0.0}) {}

  const Grid& grid() const { return grid_; }
  std::size_t modes() const { return grid_.spectral_size(); }

  std::span<value_type> comp(int c) { return {data_.data() + c * modes(), modes()}; }
  std::span<const value_type> comp(int c) const {
    return {data_.data() + c * modes(), modes()};
  }

  value_type& operator()(int c, std::size_t idx) { return data_[c * modes() + idx]; }
  value_type operator()(int c, std::size_t idx) const { return data_[c * modes() + idx]; }

  std::span<value_type> values() { return {data_.data(), data_.size()}; }
  std::span<const value_type> values() const { return {data_.data(), data_.size()}; }

 private:
  Grid grid_;
  AlignedVector<value_type> data_;
};

}  // namespace lcflow
