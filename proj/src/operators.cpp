#include "lcflow/operators.hpp"

namespace lcflow {
namespace spec {

namespace {
}

SpectralField<1> divergence(const SpectralField<3>& v) {
  const Grid& g = v.grid();
  SpectralField<1> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    out(0, idx) = times_i(g.derivative_wavenumber(kx) * v(0, idx) +
                        g.derivative_wavenumber(ky) * v(1, idx) +
                        g.derivative_wavenumber(kz) * v(2, idx));
  });
  return out;
}

SpectralField<3> curl(const SpectralField<3>& v) {
  const Grid& g = v.grid();
  SpectralField<3> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    out(0, idx) = times_i(k[1] * v(2, idx) - k[2] * v(1, idx));
    out(1, idx) = times_i(k[2] * v(0, idx) - k[0] * v(2, idx));
    out(2, idx) = times_i(k[0] * v(1, idx) - k[1] * v(0, idx));
  });
  return out;
}

SpectralField<3> divergence_rows(const SpectralField<9>& t) {
  const Grid& g = t.grid();
  SpectralField<3> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    for (int c = 0; c < 3; ++c) {
      out(c, idx) = times_i(k[0] * t(c, idx) + k[1] * t(3 + c, idx) + k[2] * t(6 + c, idx));
    }
  });
  return out;
}

SpectralField<3> divergence_cols(const SpectralField<9>& t) {
  const Grid& g = t.grid();
  SpectralField<3> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    for (int i = 0; i < 3; ++i) {
      out(i, idx) =
          times_i(k[0] * t(3 * i, idx) + k[1] * t(3 * i + 1, idx) + k[2] * t(3 * i + 2, idx));
    }
  });
  return out;
}

SpectralField<3> leray_project(const SpectralField<3>& v) {
  const Grid& g = v.grid();
  SpectralField<3> out(g);
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {g.derivative_wavenumber(kx), g.derivative_wavenumber(ky),
                         g.derivative_wavenumber(kz)};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) {
      for (int c = 0; c < 3; ++c) out(c, idx) = v(c, idx);
      return;
    }
    const auto kv = (k[0] * v(0, idx) + k[1] * v(1, idx) + k[2] * v(2, idx)) / k2;
    for (int c = 0; c < 3; ++c) out(c, idx) = v(c, idx) - k[c] * kv;
  });
  return out;
}

}  // namespace spec

VectorField gradient(const ScalarField& f) {
  require_finite(f, "gradient");
  return inverse(spec::gradient(forward(f)));
}

TensorField gradient(const VectorField& v) {
  require_finite(v, "gradient");
  return inverse(spec::gradient(forward(v)));
}

ScalarField divergence(const VectorField& v) {
  require_finite(v, "divergence");
  return inverse(spec::divergence(forward(v)));
}

VectorField curl(const VectorField& v) {
  require_finite(v, "curl");
  return inverse(spec::curl(forward(v)));
}

VectorField leray_project(const VectorField& v) {
  require_finite(v, "leray_project");
  return inverse(spec::leray_project(forward(v)));
}

ScalarField recover_pressure(const VectorField& u, const VectorField& force) {
  require_finite(u, "recover_pressure");
  require_finite(force, "recover_pressure");
  const Grid& g = u.grid();
  const TensorField grad_u = gradient(u);
  VectorField rhs = force;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      double adv = 0.0;
      for (int j = 0; j < 3; ++j) adv += u(j, i) * grad_u(3 * j + k, i);
      rhs(k, i) -= adv;
    }
  }
  auto div_hat = spec::divergence(spec::dealias(forward(rhs)));
  SpectralField<1> p_hat(g);
  const double k0 = g.k0();
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    const double mx = g.signed_mode(kx), my = g.signed_mode(ky), mz = g.signed_mode(kz);
    const double k2 = k0 * k0 * (mx * mx + my * my + mz * mz);
    p_hat(0, idx) = k2 == 0.0 ? std::complex<double>{} : -div_hat(0, idx) / k2;
  });
  return inverse(p_hat);
}

}  // namespace lcflow
