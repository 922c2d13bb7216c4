#pragma once

#include <complex>
#include <span>

#include "lcflow/field.hpp"

namespace lcflow {

/// i * v without the NaN-recovery path of std::complex multiplication.
inline std::complex<double> times_i(std::complex<double> v) { return {-v.imag(), v.real()}; }

namespace detail {
void forward_component(const Grid& grid, std::span<const double> in,
                       std::span<std::complex<double>> out);
void inverse_component(const Grid& grid, std::span<const std::complex<double>> in,
                       std::span<double> out);
}  // namespace detail

/// Number of threads FFTW plans are created with. Must be called before the
/// first transform to take effect; later calls only affect new grid sizes.
void set_fft_threads(int threads);

template <int C>
SpectralField<C> forward(const Field<C>& f) {
  SpectralField<C> out(f.grid());
  for (int c = 0; c < C; ++c) detail::forward_component(f.grid(), f.comp(c), out.comp(c));
  return out;
}

template <int C>
Field<C> inverse(const SpectralField<C>& s) {
  Field<C> out(s.grid());
  for (int c = 0; c < C; ++c) detail::inverse_component(s.grid(), s.comp(c), out.comp(c));
  return out;
}

/// Calls fn(idx, kx, ky, kz) for every stored mode, where kx, ky, kz are the
/// unsigned FFT indices (kx in [0, n/2]). Parallel over kz slabs; fn must only
/// touch data at idx.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  const int h = g.half();
#pragma omp parallel for schedule(static)
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      std::size_t idx = g.spectral_index(0, ky, kz);
      for (int kx = 0; kx < h; ++kx, ++idx) fn(idx, kx, ky, kz);
    }
  }
}

/// Largest |f(k) - conj(f(-k))| over the self-conjugate planes kx = 0 and
/// kx = n/2, the only places where the half-spectrum layout stores both k and -k.
template <int C>
double conjugate_asymmetry(const SpectralField<C>& s) {
  const Grid& g = s.grid();
  const int n = g.n();
  double worst = 0.0;
  for (int c = 0; c < C; ++c) {
    for (int kx : {0, n / 2}) {
      for (int kz = 0; kz < n; ++kz) {
        for (int ky = 0; ky < n; ++ky) {
          const auto a = s(c, g.spectral_index(kx, ky, kz));
          const auto b = s(c, g.spectral_index(kx, (n - ky) % n, (n - kz) % n));
          worst = std::max(worst, std::abs(a - std::conj(b)));
        }
      }
    }
  }
  return worst;
}

}  // namespace lcflow
