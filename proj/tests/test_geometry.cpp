#include <gtest/gtest.h>

#include <cmath>

#include "chfif/geometry.hpp"
#include "support.hpp"

using namespace chfif;

TEST(Validate, AcceptsAllTableRows) {
  for (int f = 1; f <= 16; ++f) EXPECT_TRUE(validate(oracle::bundled_row(f)).ok()) << "fig" << f;
}

TEST(Validate, NamesTheBetaGammaInequality) {
  auto pb = oracle::bundled_row(4);
  pb.params[0].beta = 0.7;
  pb.params[0].gamma = 0.5;
  const auto v = validate(pb);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].index, 1u);
  EXPECT_EQ(v.violations[0].message, "|beta_1|+|gamma_1| = 1.2 >= 1");
}

TEST(Validate, RejectsStructuralProblems) {
  auto pb = oracle::bundled_row(4);
  pb.params[1].alpha = -1.0;
  pb.xs[2] = 0.3;
  pb.zs.pop_back();
  const auto v = validate(pb);
  EXPECT_FALSE(v.ok());
  const auto s = v.summary();
  EXPECT_NE(s.find("|alpha_2| = 1 >= 1"), std::string::npos) << s;
  EXPECT_NE(s.find("x_1 = 0.35 >= x_2 = 0.3"), std::string::npos) << s;
  EXPECT_NE(s.find("hidden z has 3 values"), std::string::npos) << s;
}

TEST(Validate, TooFewNodesAndBadExponent) {
  InterpolationProblem pb;
  pb.xs = {0.0, 1.0};
  pb.ys = {0.0, 1.0};
  pb.zs = {0.0, 1.0};
  pb.params = {IntervalParams{}};
  EXPECT_FALSE(validate(pb).ok());

  auto ok = oracle::bundled_row(5);
  ok.params[0].p = MapTemplate::power(1.0, 1.5);
  ok.params[2].q = MapTemplate::power(1.0, 0.0);
  const auto v = validate(ok);
  EXPECT_EQ(v.violations.size(), 2u);
  EXPECT_THROW(solve_model(ok), ValidationError);
}

TEST(Validate, RejectsNonFinite) {
  auto pb = oracle::bundled_row(4);
  pb.ys[1] = std::nan("");
  EXPECT_FALSE(validate(pb).ok());
}

TEST(SolveModel, MapsMatchOracleOnSection5) {
  for (int f = 1; f <= 16; ++f) {
    const auto pb = oracle::bundled_row(f);
    const auto model = solve_model(pb);
    const auto o = oracle::maps_of(pb);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(model.map(i).slope, o.length[i], 1e-15);
      EXPECT_NEAR(model.map(i).offset, o.start[i], 1e-15);
      for (double u : {0.0, 0.3, 0.71, 1.0}) {
        EXPECT_NEAR(model.p(i)(u), o.p[i](u), 1e-13);
        EXPECT_NEAR(model.q(i)(u), o.q[i](u), 1e-13);
      }
    }
  }
}

TEST(SolveModel, EndpointConditionsHold) {
  // w_i maps (x_0, y_0, z_0) to (x_{i-1}, y_{i-1}, z_{i-1}) and (x_N, ...) to (x_i, ...).
  oracle::Generator gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pb = gen.problem(gen.integer(2, 6));
    const auto m = solve_model(pb);
    const std::size_t n = pb.intervals();
    for (std::size_t i = 0; i < n; ++i) {
      const auto [y0, z0] = m.apply(i, 0.0, pb.ys.front(), pb.zs.front());
      const auto [y1, z1] = m.apply(i, 1.0, pb.ys.back(), pb.zs.back());
      EXPECT_NEAR(y0, pb.ys[i], 1e-12);
      EXPECT_NEAR(z0, pb.zs[i], 1e-12);
      EXPECT_NEAR(y1, pb.ys[i + 1], 1e-12);
      EXPECT_NEAR(z1, pb.zs[i + 1], 1e-12);
      EXPECT_NEAR(m.to_domain(m.map(i)(0.0)), pb.xs[i], 1e-12);
      EXPECT_NEAR(m.to_domain(m.map(i)(1.0)), pb.xs[i + 1], 1e-12);
    }
  }
}

TEST(SolveModel, PowerTemplateEndpointsAndIntegral) {
  auto pb = oracle::bundled_row(4);
  pb.params[1].p = MapTemplate::power(2.5, 0.5);
  pb.params[2].q = MapTemplate::power(-1.0, 0.3);
  const auto m = solve_model(pb);
  const auto o = oracle::maps_of(pb);
  EXPECT_DOUBLE_EQ(m.lambda(), 0.5);
  EXPECT_DOUBLE_EQ(m.mu(), 0.3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(m.p(i).integral(0.2, 0.9), o.p[i].integral(0.2, 0.9), 1e-13);
    EXPECT_NEAR(m.q(i).integral(0.0, 1.0), o.q[i].integral(0.0, 1.0), 1e-13);
  }
  // Integral against a midpoint rule.
  const auto& g = m.p(1);
  const int steps = 200000;
  double sum = 0.0;
  for (int k = 0; k < steps; ++k) sum += g((k + 0.5) / steps) / steps;
  EXPECT_NEAR(g.integral(0.0, 1.0), sum, 1e-8);
}

TEST(SolveModel, NormalizesArbitraryDomain) {
  auto pb = oracle::bundled_row(9);
  for (auto& x : pb.xs) x = 10.0 + 4.0 * x;
  const auto m = solve_model(pb);
  EXPECT_DOUBLE_EQ(m.domain_origin(), 10.0);
  EXPECT_DOUBLE_EQ(m.domain_length(), 4.0);
  EXPECT_NEAR(m.unit_nodes()[1], 0.35, 1e-15);
  EXPECT_NEAR(m.min_length(), 0.25, 1e-15);
  EXPECT_NEAR(m.max_length(), 0.40, 1e-15);
  // Ratios are scale free, so the classification is unchanged.
  const auto ref = solve_model(oracle::bundled_row(9));
  EXPECT_NEAR(m.ratios().omega, ref.ratios().omega, 1e-12);
}

TEST(Ratios, MatchDirectFormulas) {
  const auto m = solve_model(oracle::bundled_row(5));
  const double lens[] = {0.35, 0.40, 0.25};
  const double alpha[] = {0.2, 0.4, 0.22};
  const double gamma[] = {0.35, 0.3, 0.2};
  double om = 0.0, ga = 0.0;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(m.ratios().omega_i[i], alpha[i] / lens[i], 1e-14);
    EXPECT_NEAR(m.ratios().gamma_i[i], gamma[i] / lens[i], 1e-14);
    om = std::max(om, alpha[i] / lens[i]);
    ga = std::max(ga, gamma[i] / lens[i]);
  }
  EXPECT_NEAR(m.ratios().omega, om, 1e-14);
  EXPECT_NEAR(m.ratios().gamma, ga, 1e-14);
  EXPECT_TRUE(near_critical(m.ratios().omega));
  EXPECT_TRUE(near_critical(m.ratios().gamma));
}

TEST(NearCritical, RelativeTolerance) {
  EXPECT_TRUE(near_critical(1.0 + 5e-10));
  EXPECT_FALSE(near_critical(1.0 + 5e-9));
  EXPECT_TRUE(near_critical(1000.0 * (1.0 + 5e-10), 1000.0));
}

TEST(SelfAffine, CorrectedRowCollapses) {
  auto pb = oracle::bundled_row(1);
  EXPECT_FALSE(is_self_affine_config(solve_model(pb)));
  EXPECT_EQ(self_affine_mismatches(solve_model(pb)), std::vector<std::size_t>{3});
  pb.params[2].gamma = 0.1;
  EXPECT_TRUE(is_self_affine_config(solve_model(pb)));
  // z != y breaks the collapse even when every alpha + beta = gamma.
  pb.zs[1] += 1.0;
  EXPECT_FALSE(is_self_affine_config(solve_model(pb)));
}
