#include "lcflow/frank_energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcflow/errors.hpp"

namespace lcflow {

FrankConstants::FrankConstants(double k1, double k2, double k3) : k1_(k1), k2_(k2), k3_(k3) {
  auto ok = [](double k) { return std::isfinite(k) && k > 0.0; };
  if (!ok(k1) || !ok(k2) || !ok(k3)) {
    throw ConfigError("Frank moduli must be positive and finite, got (" + std::to_string(k1) +
                      ", " + std::to_string(k2) + ", " + std::to_string(k3) + ")");
  }
}

double ellipticity_constant(const FrankConstants& c) {
  return std::min({c.k1(), c.k2(), c.k3()});
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double frobenius_norm_sq(const Mat3& m) {
  double s = 0.0;
  for (const auto& row : m) {
    for (double v : row) s += v * v;
  }
  return s;
}

double divergence_of(const Mat3& p) { return p[0][0] + p[1][1] + p[2][2]; }

// (curl d)_i = eps_ijk d_j d^k
Vec3 curl_of(const Mat3& p) {
  return {p[1][2] - p[2][1], p[2][0] - p[0][2], p[0][1] - p[1][0]};
}

// With |d x c|^2 = |d|^2 |c|^2 - (d.c)^2 the density becomes
//   W = k1 s^2 + (k2 - k3) (d.c)^2 + k3 |d|^2 |c|^2,
// which is what all derivatives below are taken from.
FrankTerms frank_terms(const PointState& s, const FrankConstants& c) {
  const double k1 = c.k1();
  const double k23 = c.k2() - c.k3();
  const double k3 = c.k3();

  const double div = divergence_of(s.p);
  const Vec3 curl = curl_of(s.p);
  const double dc = dot(s.d, curl);
  const double dd = dot(s.d, s.d);
  const double cc = dot(curl, curl);

  FrankTerms out{};
  out.w = k1 * div * div + k23 * dc * dc + k3 * dd * cc;

  for (int i = 0; i < 3; ++i) {
    out.wd[i] = 2.0 * k23 * dc * curl[i] + 2.0 * k3 * cc * s.d[i];
  }

  // g = dW/dcurl; dcurl_i/dp[j][k] = eps_ijk.
  Vec3 g;
  for (int i = 0; i < 3; ++i) g[i] = 2.0 * k23 * dc * s.d[i] + 2.0 * k3 * dd * curl[i];
  const double diag = 2.0 * k1 * div;
  out.wp = {{{diag, g[2], -g[1]}, {-g[2], diag, g[0]}, {g[1], -g[0], diag}}};
  return out;
}

double energy_density(const PointState& s, const FrankConstants& c) { return frank_terms(s, c).w; }

Vec3 w_d(const PointState& s, const FrankConstants& c) { return frank_terms(s, c).wd; }

Mat3 w_p(const PointState& s, const FrankConstants& c) { return frank_terms(s, c).wp; }

double w_pp_quadratic_form(const Vec3& d, const Mat3& xi, const FrankConstants& c) {
  return 2.0 * energy_density(PointState{d, xi}, c);
}

GrowthConstants growth_constants(const FrankConstants& c) {
  const double kmax = std::max({c.k1(), c.k2(), c.k3()});
  const double k23 = std::max(c.k2(), c.k3());
  return {3.0 * kmax, 4.0 * k23, 6.0 * kmax, 6.0 * kmax};
}

}  // namespace lcflow
