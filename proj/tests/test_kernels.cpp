#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "lcflow/initial_data.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {
namespace {

struct Inputs {
  Grid g{16, 2.0};
  VectorField u{g}, d{g};
  TensorField grad{g};

  Inputs() {
    Prng rng(77);
    u = random_band_limited(g, 4, rng);
    d = random_band_limited(g, 3, rng);
    for (auto& v : d.comp(0)) v += 0.3;
    for (auto& v : d.comp(2)) v += 1.5;
    grad = gradient(d);
  }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

template <int C>
double rel_field_diff(const Field<C>& a, const Field<C>& b) {
  double scale = 0.0;
  for (double v : b.values()) scale = std::max(scale, std::abs(v));
  return max_abs_diff(a, b) / std::max(scale, 1e-300);
}

TEST(Kernels, ReductionsMatchReference) {
  const Inputs in;
  for (double p : {1.0, 2.0, 3.0, 4.0, 6.0}) {
    EXPECT_LT(rel_diff(kernels::magnitude_power_sum(in.grad.values(), in.g, 9, p),
                       reference::magnitude_power_sum(in.grad.values(), in.g, 9, p)),
              1e-13);
  }
  EXPECT_LT(rel_diff(kernels::dot_sum(in.u.values(), in.d.values(), in.g, 3),
                     reference::dot_sum(in.u.values(), in.d.values(), in.g, 3)),
            1e-12);
  EXPECT_EQ(kernels::magnitude_max(in.u.values(), in.g, 3),
            reference::magnitude_max(in.u.values(), in.g, 3));
}

TEST(Kernels, PointwiseKernelsMatchReference) {
  const Inputs in;
  const FrankConstants c(1.0, 0.5, 2.0);
  TensorField wp(in.g), wp_ref(in.g);
  VectorField wd(in.g), wd_ref(in.g);
  ScalarField w(in.g), w_ref(in.g);
  kernels::frank_terms(in.d, in.grad, c, wp, wd, &w);
  reference::frank_terms(in.d, in.grad, c, wp_ref, wd_ref, &w_ref);
  EXPECT_LT(rel_field_diff(wp, wp_ref), 1e-14);
  EXPECT_LT(rel_field_diff(wd, wd_ref), 1e-14);
  EXPECT_LT(rel_field_diff(w, w_ref), 1e-14);

  VectorField a(in.g), a_ref(in.g);
  kernels::advect(in.u, in.grad, a);
  reference::advect(in.u, in.grad, a_ref);
  EXPECT_LT(rel_field_diff(a, a_ref), 1e-14);

  TensorField f(in.g), f_ref(in.g);
  kernels::stress_flux(in.grad, wp, f);
  reference::stress_flux(in.grad, wp, f_ref);
  EXPECT_LT(rel_field_diff(f, f_ref), 1e-14);

  kernels::tangential_part(in.u, in.d, a);
  reference::tangential_part(in.u, in.d, a_ref);
  EXPECT_LT(rel_field_diff(a, a_ref), 1e-14);

  VectorField d1 = in.d, d2 = in.d;
  EXPECT_EQ(kernels::renormalize(d1), reference::renormalize(d2));
  EXPECT_LT(rel_field_diff(d1, d2), 1e-15);
  EXPECT_LT(kernels::unit_length_error(d1), 1e-15);
  EXPECT_EQ(kernels::unit_length_error(in.d), reference::unit_length_error(in.d));
}

TEST(Kernels, ReductionsAreIndependentOfThreadCount) {
  const Inputs in;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::magnitude_power_sum(in.grad.values(), in.g, 9, 4.0);
  const double dot1 = kernels::dot_sum(in.u.values(), in.d.values(), in.g, 3);
  omp_set_num_threads(3);
  const double three = kernels::magnitude_power_sum(in.grad.values(), in.g, 9, 4.0);
  const double dot3 = kernels::dot_sum(in.u.values(), in.d.values(), in.g, 3);
  omp_set_num_threads(saved);
  EXPECT_EQ(one, three);
  EXPECT_EQ(dot1, dot3);
}

TEST(Kernels, TangentialPartIsOrthogonalToDirector) {
  const Inputs in;
  VectorField d = in.d;
  kernels::renormalize(d);
  VectorField t(in.g);
  kernels::tangential_part(in.u, d, t);
  double worst = 0.0;
  for (std::size_t i = 0; i < in.g.size(); ++i) {
    double dot = 0.0;
    for (int c = 0; c < 3; ++c) dot += t(c, i) * d(c, i);
    worst = std::max(worst, std::abs(dot));
  }
  EXPECT_LT(worst, 1e-15);
}

TEST(Kernels, RenormalizeReportsShortestVector) {
  const Grid g(8, 1.0);
  VectorField d(g);
  for (auto& v : d.comp(2)) v = 2.0;
  d(2, 17) = 0.25;
  EXPECT_EQ(kernels::renormalize(d), 0.25);
  EXPECT_EQ(kernels::unit_length_error(d), 0.0);
}

}  // namespace
}  // namespace lcflow
