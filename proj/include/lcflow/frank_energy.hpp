#pragma once

#include <array>

namespace lcflow {

using Vec3 = std::array<double, 3>;
/// Row j, column k. For a director gradient, p[j][k] = d_j d^k.
using Mat3 = std::array<Vec3, 3>;

/// Splay, twist and bend moduli of the Oseen-Frank density.
class FrankConstants {
 public:
  /// Throws ConfigError unless all three moduli are strictly positive and finite.
  FrankConstants(double k1, double k2, double k3);

  static FrankConstants one_constant(double k) { return {k, k, k}; }

  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double k3() const { return k3_; }

  bool operator==(const FrankConstants&) const = default;

 private:
  double k1_;
  double k2_;
  double k3_;
};

/// Director value and its gradient at a single point.
struct PointState {
  Vec3 d{};
  Mat3 p{};
};

double ellipticity_constant(const FrankConstants& c);

double divergence_of(const Mat3& p);
Vec3 curl_of(const Mat3& p);

/// W = k1 (div d)^2 + k2 (d . curl d)^2 + k3 |d x curl d|^2.
///
/// Defined for any d, not only unit vectors; the time stepper evaluates it at
/// intermediate stages where |d| has drifted.
double energy_density(const PointState& s, const FrankConstants& c);

/// dW/dd at fixed p.
Vec3 w_d(const PointState& s, const FrankConstants& c);

/// dW/dp at fixed d, laid out like p: result[j][k] = dW/dp[j][k].
Mat3 w_p(const PointState& s, const FrankConstants& c);

/// d2W/dp2 contracted twice with xi. W is a quadratic form in p, so this is
/// independent of p and equals 2 W(d, xi).
double w_pp_quadratic_form(const Vec3& d, const Mat3& xi, const FrankConstants& c);

/// Evaluates W, dW/dd and dW/dp together, sharing div and curl.
struct FrankTerms {
  double w;
  Vec3 wd;
  Mat3 wp;
};
FrankTerms frank_terms(const PointState& s, const FrankConstants& c);

/// Pointwise growth bounds at |d| = 1: |W| <= C |d|^2 |p|^2 and friends.
///
/// W is a quadratic form in p whose largest eigenvalue is 3 max(k) (reached
/// at p proportional to the identity), and |W_d| <= 2 max(k2, k3) |curl|^2
/// with |curl|^2 <= 2 |p|^2. The randomized maximization in
/// tests/test_frank_energy.cpp checks that observed ratios stay below these.
struct GrowthConstants {
  double energy;  // W / (|d|^2 |p|^2)
  double w_d;     // |W_d| / (|d| |p|^2)
  double w_p;     // |W_p| / (|d|^2 |p|)
  double w_pp;    // W_pp(xi, xi) / (|d|^2 |xi|^2)
};
GrowthConstants growth_constants(const FrankConstants& c);

double frobenius_norm_sq(const Mat3& m);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

}  // namespace lcflow
