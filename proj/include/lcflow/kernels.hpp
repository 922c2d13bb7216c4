#pragma once

// Pointwise and reduction kernels over grid nodes.
//
// lcflow::kernels holds the OpenMP versions used by the solver. lcflow::reference
// holds plain serial loops with the same contracts; they are kept for the
// equivalence tests (tests/test_kernels.cpp) and the benchmark (bench/).
//
// Reductions in lcflow::kernels are deterministic for any thread count: each
// z-slab is summed serially and the slab partials are added in slab order.

#include <cstddef>
#include <span>

#include "lcflow/field.hpp"
#include "lcflow/frank_energy.hpp"

namespace lcflow {

namespace kernels {

/// Sum over nodes of |f|^p, |f| being the Euclidean norm across components.
double magnitude_power_sum(std::span<const double> values, const Grid& grid, int components,
                           double p);
/// Sum over nodes and components of a*b.
double dot_sum(std::span<const double> a, std::span<const double> b, const Grid& grid,
               int components);
double magnitude_max(std::span<const double> values, const Grid& grid, int components);

/// W_p and W_d at every node; W as well when `w` is non-null.
void frank_terms(const VectorField& d, const TensorField& grad_d, const FrankConstants& c,
                 TensorField& wp, VectorField& wd, ScalarField* w);
/// out^k = u_j d_j f^k
void advect(const VectorField& u, const TensorField& grad_f, VectorField& out);
/// out[i][j] = p[i][k] wp[j][k]
void stress_flux(const TensorField& grad_d, const TensorField& wp, TensorField& out);
/// out = h - (h.d) d
void tangential_part(const VectorField& h, const VectorField& d, VectorField& out);
/// d <- d / |d|. Returns the smallest |d| seen before normalizing.
double renormalize(VectorField& d);
/// max ||d| - 1|
double unit_length_error(const VectorField& d);

}  // namespace kernels

namespace reference {

double magnitude_power_sum(std::span<const double> values, const Grid& grid, int components,
                           double p);
double dot_sum(std::span<const double> a, std::span<const double> b, const Grid& grid,
               int components);
double magnitude_max(std::span<const double> values, const Grid& grid, int components);
void frank_terms(const VectorField& d, const TensorField& grad_d, const FrankConstants& c,
                 TensorField& wp, VectorField& wd, ScalarField* w);
void advect(const VectorField& u, const TensorField& grad_f, VectorField& out);
void stress_flux(const TensorField& grad_d, const TensorField& wp, TensorField& out);
void tangential_part(const VectorField& h, const VectorField& d, VectorField& out);
double renormalize(VectorField& d);
double unit_length_error(const VectorField& d);

}  // namespace reference

}  // namespace lcflow
