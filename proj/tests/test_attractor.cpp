#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "chfif/attractor.hpp"
#include "support.hpp"

using namespace chfif;

namespace {

// Backward evaluation through the functional equations, starting from the
// straight line through the endpoints after `depth` levels.
std::pair<double, double> evaluate(const oracle::Maps& m, const InterpolationProblem& pb, double x,
                                   int depth) {
  if (depth == 0) {
    return {pb.ys.front() + (pb.ys.back() - pb.ys.front()) * x,
            pb.zs.front() + (pb.zs.back() - pb.zs.front()) * x};
  }
  std::size_t i = 0;
  while (i + 1 < m.start.size() && x >= m.start[i + 1]) ++i;
  double u = std::clamp((x - m.start[i]) / m.length[i], 0.0, 1.0);
  // Grid points land on endpoints; rounding off them is amplified by 1/L per level.
  if (u < 1e-12) u = 0.0;
  if (u > 1.0 - 1e-12) u = 1.0;
  const auto [f1, f2] = evaluate(m, pb, u, depth - 1);
  return {m.alpha[i] * f1 + m.beta[i] * f2 + m.p[i](u), m.gamma[i] * f2 + m.q[i](u)};
}

// Point k of the level-m address grid, built forward from its base-N digits.
struct GridPoint {
  double x, f1, f2;
};

GridPoint at_index(const oracle::Maps& m, const InterpolationProblem& pb, int level, std::size_t k) {
  if (level == 0) return k == 0 ? GridPoint{0.0, pb.ys.front(), pb.zs.front()}
                                : GridPoint{1.0, pb.ys.back(), pb.zs.back()};
  const std::size_t n = m.start.size();
  std::size_t block = 1;
  for (int j = 1; j < level; ++j) block *= n;
  const std::size_t i = std::min(k / block, n - 1);
  const auto u = at_index(m, pb, level - 1, k - i * block);
  return {m.start[i] + m.length[i] * u.x, m.alpha[i] * u.f1 + m.beta[i] * u.f2 + m.p[i](u.x),
          m.gamma[i] * u.f2 + m.q[i](u.x)};
}

}  // namespace

TEST(IntervalOf, ComposesInWordOrder) {
  const auto m = solve_model(oracle::bundled_row(4));
  const std::vector<int> w{1, 2};
  const auto cell = interval_of(m, w);
  EXPECT_NEAR(cell.start, 0.35 + 0.4 * 0.0, 1e-15);
  EXPECT_NEAR(cell.length, 0.35 * 0.4, 1e-15);
  const std::vector<int> v{2, 1};
  EXPECT_NEAR(interval_of(m, v).start, 0.35 * 0.35, 1e-15);
  const std::vector<int> bad{4};
  EXPECT_THROW(interval_of(m, bad), std::out_of_range);
}

TEST(AddressGrid, SizeAndLimit) {
  EXPECT_EQ(address_grid_size(3, 0), 2u);
  EXPECT_EQ(address_grid_size(3, 8), 6562u);
  EXPECT_THROW(address_grid_size(3, 30), SamplingError);
  EXPECT_THROW(address_grid_size(3, 5, SampleLimits{100}), SamplingError);
}

TEST(SampleExact, LevelOneIsTheNodeSet) {
  const auto pb = oracle::bundled_row(7);
  const auto g = sample_exact(solve_model(pb), 1);
  ASSERT_EQ(g.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(g.xs[k], pb.xs[k]);
    EXPECT_EQ(g.f1[k], pb.ys[k]);
    EXPECT_EQ(g.f2[k], pb.zs[k]);
  }
}

TEST(SampleExact, ZeroParametersGivePiecewiseLinear) {
  auto pb = oracle::bundled_row(4);
  for (auto& p : pb.params) p = {};
  const auto g = sample_exact(solve_model(pb), 7);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(g.f1[k], interpolate_linear(pb.xs, pb.ys, g.xs[k]), 1e-12);
    EXPECT_NEAR(g.f2[k], interpolate_linear(pb.xs, pb.zs, g.xs[k]), 1e-12);
  }
}

TEST(SampleExact, SortedAndAgreesWithAddressOracle) {
  oracle::Generator gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto pb = gen.problem(gen.integer(2, 5));
    const auto model = solve_model(pb);
    const auto maps = oracle::maps_of(pb);
    const auto g = sample_exact(model, 5);
    for (std::size_t k = 1; k < g.size(); ++k) ASSERT_LT(g.xs[k - 1], g.xs[k]);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto want = at_index(maps, pb, 5, k);
      EXPECT_NEAR(g.xs[k], want.x, 1e-14);
      EXPECT_NEAR(g.f1[k], want.f1, 1e-12);
      EXPECT_NEAR(g.f2[k], want.f2, 1e-12);
    }
  }
}

TEST(SampleExact, PropagatesNextLevelIndexing) {
  // Point k of level m maps under L_i to point (i-1) N^m + k of level m+1.
  const auto model = solve_model(oracle::bundled_row(10));
  const auto g3 = sample_exact(model, 3);
  const auto g4 = sample_exact(model, 4);
  const std::size_t cells = 27;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < g3.size(); ++k) {
      const auto [y, z] = model.apply(i, g3.xs[k], g3.f1[k], g3.f2[k]);
      const std::size_t j = i * cells + k;
      EXPECT_NEAR(g4.xs[j], model.map(i)(g3.xs[k]), 1e-15);
      EXPECT_NEAR(g4.f1[j], y, 1e-12);
      EXPECT_NEAR(g4.f2[j], z, 1e-12);
    }
  }
}

TEST(FixedPoint, ExactOnNestedEquidistantGrid) {
  // With N = 3 equal intervals and 3^6 + 1 grid points every preimage is a grid point.
  auto pb = oracle::equidistant({1.0, 3.0, -1.0, 2.0}, {0.0, 2.0, 1.0, -1.0}, 0.5, 0.3, -0.4);
  pb.params[1].alpha = -0.6;
  const auto model = solve_model(pb);
  const auto exact = sample_exact(model, 6);
  const auto it = fixed_point_iterate(model, exact.size(), 10000, 1e-13);
  ASSERT_TRUE(it.converged);
  ASSERT_EQ(it.graph.size(), exact.size());
  for (std::size_t k = 0; k < exact.size(); ++k) {
    EXPECT_NEAR(it.graph.xs[k], exact.xs[k], 1e-15);
    EXPECT_NEAR(it.graph.f1[k], exact.f1[k], 1e-10);
    EXPECT_NEAR(it.graph.f2[k], exact.f2[k], 1e-10);
  }
}

TEST(FixedPoint, GapShrinksWithGridRefinement) {
  const auto model = solve_model(oracle::bundled_row(4));
  const auto maps = oracle::maps_of(oracle::bundled_row(4));
  double previous = 1e9;
  for (std::size_t size : {501u, 2001u, 8001u}) {
    const auto it = fixed_point_iterate(model, size, 10000, 1e-12);
    double gap = 0.0;
    for (std::size_t k = 0; k < it.graph.size(); k += 13) {
      const auto [f1, f2] = evaluate(maps, oracle::bundled_row(4), it.graph.xs[k], 50);
      gap = std::max({gap, std::abs(it.graph.f1[k] - f1), std::abs(it.graph.f2[k] - f2)});
    }
    // Near first order: each 4x refinement should at least halve the gap.
    EXPECT_LT(gap, 0.5 * previous) << size;
    previous = gap;
  }
  EXPECT_LT(previous, 5e-3);
}

TEST(FixedPoint, HiddenComponentContracts) {
  const auto model = solve_model(oracle::bundled_row(13));
  const auto it = fixed_point_iterate(model, 2001, 10000, 1e-12);
  const auto& d = it.f2_distances;
  for (std::size_t k = 4; k < d.size(); ++k) {
    if (d[k - 1] < 1e-13) break;
    EXPECT_LE(d[k] / d[k - 1], model.gamma_max() + 0.05) << "iteration " << k;
  }
}

TEST(FixedPoint, ReportsNonConvergence) {
  const auto model = solve_model(oracle::bundled_row(2));
  try {
    fixed_point_iterate(model, 200, 3, 1e-10);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.result().iterations, 3);
    EXPECT_EQ(e.result().distances.size(), 3u);
    EXPECT_FALSE(e.result().converged);
  }
  EXPECT_THROW(fixed_point_iterate(model, 3, 10, 1e-10), std::invalid_argument);
  EXPECT_THROW(fixed_point_iterate(model, 100, 10, 0.0), std::invalid_argument);
}

TEST(ChaosGame, DeterministicAndOnTheGraph) {
  const auto model = solve_model(oracle::bundled_row(4));
  const auto a = chaos_game(model, 5000, 42);
  const auto b = chaos_game(model, 5000, 42);
  const auto c = chaos_game(model, 5000, 43);
  ASSERT_EQ(a.size(), 5000u);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].x, b[k].x);
    EXPECT_EQ(a[k].f1, b[k].f1);
    differs = differs || a[k].x != c[k].x;
  }
  EXPECT_TRUE(differs);

  const auto g = sample_exact(model, 11);
  double worst = 0.0;
  for (const auto& p : a) {
    worst = std::max(worst, std::abs(p.f1 - interpolate_linear(g.xs, g.f1, p.x)));
    worst = std::max(worst, std::abs(p.f2 - interpolate_linear(g.xs, g.f2, p.x)));
  }
  EXPECT_LT(worst, 1e-2);
}

TEST(InterpolateLinear, ClampsAndInterpolates) {
  const std::vector<double> xs{0.0, 1.0, 3.0};
  const std::vector<double> ys{1.0, 3.0, -1.0};
  EXPECT_DOUBLE_EQ(interpolate_linear(xs, ys, -1.0), 1.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(xs, ys, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(xs, ys, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(interpolate_linear(xs, ys, 5.0), -1.0);
}
