#include "lcflow/verification.hpp"

#include <algorithm>
#include <cmath>

#include "lcflow/errors.hpp"
#include "lcflow/initial_data.hpp"

namespace lcflow {

double GradientCheck::worst() const { return std::max({w_d, w_p, w_pp}); }

namespace {

struct Sample {
  Vec3 d;
  Mat3 p;
  Mat3 xi;
};

Vec3 random_direction(Prng& rng) {
  for (;;) {
    Vec3 v{rng.symmetric(), rng.symmetric(), rng.symmetric()};
    const double n = std::sqrt(dot(v, v));
    if (n > 1e-3 && n <= 1.0) return {v[0] / n, v[1] / n, v[2] / n};
  }
}

Mat3 random_matrix(Prng& rng, double frobenius) {
  Mat3 m{};
  for (auto& row : m) {
    for (auto& v : row) v = rng.symmetric();
  }
  const double s = frobenius * rng.uniform() / std::sqrt(frobenius_norm_sq(m));
  for (auto& row : m) {
    for (auto& v : row) v *= s;
  }
  return m;
}

Sample draw(Prng& rng) {
  Sample s;
  const double len = 0.5 + rng.uniform();
  const Vec3 dir = random_direction(rng);
  s.d = {len * dir[0], len * dir[1], len * dir[2]};
  s.p = random_matrix(rng, 2.0);
  s.xi = random_matrix(rng, 1.0);
  return s;
}

double rel(double err, double scale) { return err / std::max(scale, 1e-8); }

}  // namespace

GradientCheck check_gradients(const FrankConstants& c, int samples, std::uint64_t seed,
                              double step) {
  if (samples < 1) throw ConfigError("check_gradients needs at least one sample");
  if (!(step > 0.0)) throw ConfigError("check_gradients needs a positive step");
  Prng rng(seed);
  GradientCheck out;
  out.samples = samples;
  for (int n = 0; n < samples; ++n) {
    const Sample s = draw(rng);
    const PointState at{s.d, s.p};

    const Vec3 wd = w_d(at, c);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i) {
      PointState hi = at, lo = at;
      hi.d[i] += step;
      lo.d[i] -= step;
      const double fd = (energy_density(hi, c) - energy_density(lo, c)) / (2.0 * step);
      err = std::max(err, std::abs(fd - wd[i]));
      scale = std::max(scale, std::abs(wd[i]));
    }
    out.w_d = std::max(out.w_d, rel(err, scale));

    const Mat3 wp = w_p(at, c);
    err = scale = 0.0;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        PointState hi = at, lo = at;
        hi.p[j][k] += step;
        lo.p[j][k] -= step;
        const double fd = (energy_density(hi, c) - energy_density(lo, c)) / (2.0 * step);
        err = std::max(err, std::abs(fd - wp[j][k]));
        scale = std::max(scale, std::abs(wp[j][k]));
      }
    }
    out.w_p = std::max(out.w_p, rel(err, scale));

    // d/dh w_p(d, p + h xi) : xi
    PointState hi = at, lo = at;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        hi.p[j][k] += step * s.xi[j][k];
        lo.p[j][k] -= step * s.xi[j][k];
      }
    }
    const Mat3 wph = w_p(hi, c), wpl = w_p(lo, c);
    double fd = 0.0;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) fd += (wph[j][k] - wpl[j][k]) * s.xi[j][k];
    }
    fd /= 2.0 * step;
    const double form = w_pp_quadratic_form(s.d, s.xi, c);
    out.w_pp = std::max(out.w_pp, rel(std::abs(fd - form), std::abs(form)));
  }
  return out;
}

}  // namespace lcflow
