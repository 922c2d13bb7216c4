#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lcflow/config.hpp"
#include "lcflow/diagnostics.hpp"
#include "lcflow/errors.hpp"
#include "lcflow/initial_data.hpp"
#include "lcflow/kernels.hpp"
#include "lcflow/norms.hpp"
#include "lcflow/operators.hpp"

namespace lcflow {
namespace {

RunConfig perturbed() {
  RunConfig c;
  c.n = 16;
  c.init_kind = "director-perturb";
  c.amplitude = 0.2;
  c.velocity = "random";
  c.velocity_amplitude = 0.3;
  c.seed = 42;
  return c;
}

TEST(Config, DefaultsRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, EveryKeyRoundTrips) {
  RunConfig c = perturbed();
  c.length = 3.0;
  c.k1 = 0.1;
  c.k2 = 1.0 / 3.0;
  c.k3 = 7.25;
  c.dt = 0.0;
  c.cfl_safety = 0.3;
  c.t_end = 1.5;
  c.d_star = {0.6, 0.0, 0.8};
  c.modes = 3;
  c.output_dir = "runs/a b";
  c.csv_name = "x.csv";
  c.output_every = 7;
  c.snapshot_every = 100;
  c.unit_tol = 1e-11;
  c.div_tol = 3e-9;
  c.residual_tol = 2e-3;
  c.blowup_factor = 50.0;
  const std::string text = serialize_config(c);
  const RunConfig back = parse_config(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize_config(back), text);
  EXPECT_EQ(c.keys().size(), 23u);
}

TEST(Config, GrammarSectionsAndComments) {
  const RunConfig c = parse_config(
      "# a comment\n"
      "\n"
      "[grid]\n"
      "n = 24   # trailing comment\n"
      "L=3.5\n"
      "[frank]\n"
      "  k2 = 0.5\n"
      "[]\n"
      "time.t_end = 0.25\n"
      "init.d_star = 1, 0, 0\n");
  EXPECT_EQ(c.n, 24);
  EXPECT_EQ(c.length, 3.5);
  EXPECT_EQ(c.k2, 0.5);
  EXPECT_EQ(c.t_end, 0.25);
  EXPECT_EQ(c.d_star, (Vec3{1.0, 0.0, 0.0}));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("grid.n = 16\ngrid.n = 32\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nn = 16\ngrid.n = 32\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.n 16\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.n = sixteen\n"), ConfigError);
  EXPECT_THROW(parse_config("grid.n = 16.5\n"), ConfigError);
  EXPECT_THROW(parse_config("frank.k1 = 1x\n"), ConfigError);
  EXPECT_THROW(parse_config("init.d_star = 0, 1\n"), ConfigError);
  EXPECT_THROW(parse_config("init.d_star = 0, 0, 1, 0\n"), ConfigError);
  EXPECT_THROW(parse_config("init.seed = -3\n"), ConfigError);
}

TEST(Config, FileLayersOverBase) {
  const RunConfig base = perturbed();
  const RunConfig c = parse_config("grid.n = 24\n", base);
  EXPECT_EQ(c.n, 24);
  EXPECT_EQ(c.init_kind, base.init_kind);
  EXPECT_EQ(c.seed, base.seed);
}

TEST(Config, SetOverridesAnyKey) {
  RunConfig c = parse_config("grid.n = 16\n");
  for (const auto& [key, value] : perturbed().keys()) c.set(key, value);
  EXPECT_EQ(c, perturbed());
  EXPECT_THROW(c.set("nope", "1"), ConfigError);
}

TEST(Config, ValidationCatchesInconsistencies) {
  EXPECT_NO_THROW(RunConfig{}.validate());
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](RunConfig& c) { c.n = 7; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.length = -1.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.k1 = 0.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.dt = -1.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.t_end = -1.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.d_star = {1.0, 1.0, 0.0}; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.init_kind = "vortex"; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.velocity = "shear"; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.amplitude = -0.1; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.modes = 11; }).validate(), ConfigError);
  EXPECT_THROW(bad([](RunConfig& c) { c.output_every = 0; }).validate(), ConfigError);
  EXPECT_NO_THROW(bad([](RunConfig& c) { c.t_end = 0.0; }).validate());
}

TEST(Config, SolverTranslation) {
  RunConfig c;
  c.k2 = 2.0;
  c.dt = 1e-3;
  SolverConfig s = c.solver();
  EXPECT_EQ(s.dt_policy, DtPolicy::fixed);
  EXPECT_EQ(s.dt, 1e-3);
  EXPECT_EQ(s.frank.k2(), 2.0);
  c.dt = 0.0;
  EXPECT_EQ(c.solver().dt_policy, DtPolicy::cfl_adaptive);
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "lcflow_test_config.txt";
  {
    std::ofstream f(path);
    f << serialize_config(perturbed());
  }
  EXPECT_EQ(load_config(path), perturbed());
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(InitialData, Equilibrium) {
  RunConfig c;
  c.n = 8;
  c.d_star = {0.0, 0.6, 0.8};
  const State s = generate_initial_data(c);
  EXPECT_EQ(max_magnitude(s.u), 0.0);
  for (std::size_t i = 0; i < c.grid().size(); ++i) {
    EXPECT_EQ(s.d(1, i), 0.6);
    EXPECT_EQ(s.d(2, i), 0.8);
  }
  EXPECT_EQ(measure(s, c.frank()).m_instant, 0.0);
}

TEST(InitialData, TaylorGreenIsLinearInAmplitude) {
  RunConfig c;
  c.n = 16;
  c.init_kind = "taylor-green";
  c.velocity_amplitude = 0.5;
  const State a = generate_initial_data(c);
  c.velocity_amplitude = 1.5;
  const State b = generate_initial_data(c);
  EXPECT_LT(max_abs_diff(3.0 * a.u, b.u), 1e-15);
  EXPECT_NEAR(max_magnitude(b.u), 1.5, 1e-12);
  EXPECT_LT(max_magnitude(divergence(b.u)), 1e-13);
}

TEST(InitialData, TaylorGreenPointValues) {
  const Grid g(8, 2.0 * std::numbers::pi);
  const VectorField u = taylor_green(g, 2.0);
  // x = (pi/2, 0, 0): (A, 0, 0)
  const auto i = g.index(2, 0, 0);
  EXPECT_NEAR(u(0, i), 2.0, 1e-15);
  EXPECT_NEAR(u(1, i), 0.0, 1e-15);
  EXPECT_EQ(u(2, i), 0.0);
}

TEST(InitialData, PerturbedStateSatisfiesInvariants) {
  const RunConfig c = perturbed();
  const State s = generate_initial_data(c);
  EXPECT_LE(kernels::unit_length_error(s.d), 1e-15);
  EXPECT_LT(max_magnitude(divergence(s.u)), 1e-12);
  EXPECT_NEAR(max_magnitude(s.u), c.velocity_amplitude, 1e-12);
  EXPECT_NO_THROW(validate_state(s, c.unit_tol, c.div_tol));
}

TEST(InitialData, SeedControlsBothFields) {
  RunConfig c = perturbed();
  const State a = generate_initial_data(c);
  const State b = generate_initial_data(c);
  EXPECT_TRUE(a.u == b.u);
  EXPECT_TRUE(a.d == b.d);
  c.seed = 43;
  const State other = generate_initial_data(c);
  EXPECT_FALSE(other.d == a.d);
  EXPECT_FALSE(other.u == a.u);
}

TEST(InitialData, VelocityStreamIsIndependentOfDirectorAmplitude) {
  RunConfig c = perturbed();
  const State a = generate_initial_data(c);
  c.amplitude = 0.05;
  const State b = generate_initial_data(c);
  EXPECT_TRUE(a.u == b.u);
}

TEST(InitialData, OversizedPerturbationIsRejected) {
  RunConfig c = perturbed();
  c.amplitude = 5.0;
  EXPECT_THROW(generate_initial_data(c), ConfigError);
}

TEST(InitialData, TileReplicatesPeriodCells) {
  const Grid g(8, 1.0);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f(0, i) = static_cast<double>(i);
  const ScalarField t = tile(f, 2);
  const Grid& big = t.grid();
  EXPECT_EQ(big.n(), 16);
  EXPECT_EQ(t(0, big.index(9, 3, 12)), f(0, g.index(1, 3, 4)));
  EXPECT_EQ(t(0, big.index(15, 15, 15)), f(0, g.index(7, 7, 7)));
}

TEST(Scaling, IdentityScaleIsExact) {
  const ScalingReport r = scaling_test(perturbed(), 1);
  EXPECT_GT(r.m0, 0.0);
  EXPECT_EQ(r.discrepancy, 0.0);
}

TEST(Scaling, DoublingPreservesM) {
  RunConfig c = perturbed();
  c.n = 32;
  c.amplitude = 0.1;
  c.velocity_amplitude = 0.1;
  const ScalingReport r = scaling_test(c, 2);
  EXPECT_EQ(r.lambda, 2);
  EXPECT_LT(r.discrepancy, 1e-6);
}

TEST(Scaling, RejectsIncompatibleFactors) {
  RunConfig c = perturbed();
  EXPECT_THROW(scaling_test(c, 3), ConfigError);
  EXPECT_THROW(scaling_test(c, 4), ConfigError);
  EXPECT_THROW(scaling_test(c, 0), ConfigError);
}

TEST(Scaling, EquilibriumHasZeroM) {
  RunConfig c;
  c.n = 16;
  const ScalingReport r = scaling_test(c, 2);
  EXPECT_EQ(r.m0, 0.0);
  EXPECT_EQ(r.discrepancy, 0.0);
}

}  // namespace
}  // namespace lcflow
