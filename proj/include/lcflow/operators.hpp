#pragma once

#include <complex>
#include <string>

#include "lcflow/errors.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"

namespace lcflow {

// Spectral differential operators on the periodic box. Every operator is exact
// for band-limited input: first derivatives multiply by i k (Nyquist mode
// dropped), the Laplacian by -|k|^2.

namespace spec {

/// Component C*j + c holds d_j f^c.
template <int C>
SpectralField<3 * C> gradient(const SpectralField<C>& f) {
  const Grid& g = f.grid();
  SpectralField<3 * C> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    for (int c = 0; c < C; ++c) {
      const auto v = f(c, idx);
      for (int j = 0; j < 3; ++j) out(C * j + c, idx) = times_i(k[j] * v);
    }
  });
  return out;
}

SpectralField<1> divergence(const SpectralField<3>& v);
SpectralField<3> curl(const SpectralField<3>& v);

/// out^k = d_j T[j][k] (contracts the first tensor index).
SpectralField<3> divergence_rows(const SpectralField<9>& t);
/// out^i = d_j T[i][j] (contracts the second tensor index).
SpectralField<3> divergence_cols(const SpectralField<9>& t);

SpectralField<3> leray_project(const SpectralField<3>& v);

template <int C>
SpectralField<C> laplacian(const SpectralField<C>& f) {
  const Grid& g = f.grid();
  SpectralField<C> out(g);
  const double k0 = g.k0();
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double mx = g.signed_mode(kx), my = g.signed_mode(ky), mz = g.signed_mode(kz);
    const double k2 = k0 * k0 * (mx * mx + my * my + mz * mz);
    for (int c = 0; c < C; ++c) out(c, idx) = -k2 * f(c, idx);
  });
  return out;
}

/// True if any |k_i| exceeds n/3 (the 2/3 rule).
inline bool is_aliased_mode(const Grid& g, int kx, int ky, int kz) {
  const int n = g.n();
  auto bad = [n](int m) { return 3 * std::abs(m) > n; };
  return bad(g.signed_mode(kx)) || bad(g.signed_mode(ky)) || bad(g.signed_mode(kz));
}

template <int C>
void dealias_in_place(SpectralField<C>& s) {
  const Grid& g = s.grid();
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    if (is_aliased_mode(g, kx, ky, kz)) {
      for (int c = 0; c < C; ++c) s(c, idx) = 0.0;
    }
  });
}

template <int C>
SpectralField<C> dealias(SpectralField<C> s) {
  dealias_in_place(s);
  return s;
}

/// Real part of the box integral of D^order a . D^order b, evaluated by
/// Parseval as L^3 * Re sum_k |k|^{2 order} conj(a_k) b_k over the full
/// spectrum (half-spectrum entries with 0 < kx < n/2 counted twice).
/// Derivative wavenumbers are used, so this matches the quadrature of the
/// spectral derivative tensors.
template <int C>
double inner_product(const SpectralField<C>& a, const SpectralField<C>& b, int order = 0) {
  const Grid& g = a.grid();
  const int n = g.n();
  const int h = g.half();
  double total = 0.0;
  // Fixed summation order: kz slabs in sequence.
  for (int kz = 0; kz < n; ++kz) {
    double slab = 0.0;
    const double wz = g.derivative_wavenumber(kz);
    for (int ky = 0; ky < n; ++ky) {
      const double wy = g.derivative_wavenumber(ky);
      for (int kx = 0; kx < h; ++kx) {
        const double wx = g.derivative_wavenumber(kx);
        const double weight = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
        const double k2 = wx * wx + wy * wy + wz * wz;
        double kpow = 1.0;
        for (int o = 0; o < order; ++o) kpow *= k2;
        const std::size_t idx = g.spectral_index(kx, ky, kz);
        double acc = 0.0;
        for (int c = 0; c < C; ++c) {
          const auto x = a(c, idx), y = b(c, idx);
          acc += x.real() * y.real() + x.imag() * y.imag();
        }
        slab += weight * kpow * acc;
      }
    }
    total += slab;
  }
  return total * g.volume();
}

template <int C>
double l2_norm_sq(const SpectralField<C>& s, int order = 0) {
  return inner_product(s, s, order);
}

}  // namespace spec

VectorField gradient(const ScalarField& f);
/// Component 3*j + k holds d_j v^k.
TensorField gradient(const VectorField& v);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
VectorField leray_project(const VectorField& v);

template <int C>
Field<C> laplacian(const Field<C>& f) {
  require_finite(f, "laplacian");
  return inverse(spec::laplacian(forward(f)));
}

/// All second derivatives: component 3*(3*a + b) + k holds d_a d_b f^k.
template <int C>
Field<9 * C> hessian(const Field<C>& f) {
  require_finite(f, "hessian");
  return inverse(spec::gradient(spec::gradient(forward(f))));
}

template <int C>
Field<C> dealias(const Field<C>& f) {
  require_finite(f, "dealias");
  return inverse(spec::dealias(forward(f)));
}

/// Spectral interpolation (n_new > n) or truncation (n_new < n) onto a grid of
/// the same box length. Modes with |k_i| < min(n, n_new)/2 are copied exactly;
/// Nyquist modes of either grid are dropped.
template <int C>
Field<C> resample(const Field<C>& f, int n_new) {
  require_finite(f, "resample");
  const Grid& src = f.grid();
  const Grid dst(n_new, src.length());  // validates n_new
  if (n_new == src.n()) return f;
  const auto in = forward(f);
  SpectralField<C> out(dst);
  const int keep = std::min(src.n(), n_new) / 2;
  for (int mz = -keep + 1; mz < keep; ++mz) {
    for (int my = -keep + 1; my < keep; ++my) {
      for (int mx = 0; mx < keep; ++mx) {
        auto wrap = [](int m, int n) { return m < 0 ? m + n : m; };
        const auto si = src.spectral_index(mx, wrap(my, src.n()), wrap(mz, src.n()));
        const auto di = dst.spectral_index(mx, wrap(my, n_new), wrap(mz, n_new));
        for (int c = 0; c < C; ++c) out(c, di) = in(c, si);
      }
    }
  }
  return inverse(out);
}

/// Pressure for the momentum balance u_t + (u.grad)u - Delta u + grad P = f,
/// from Delta P = div(f - (u.grad)u). Only defined up to a constant; the
/// returned field has zero mean.
ScalarField recover_pressure(const VectorField& u, const VectorField& force);

}  // namespace lcflow
