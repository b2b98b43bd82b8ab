#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "generators.hpp"
#include "mixrobust/distribution.hpp"
#include "mixrobust/errors.hpp"

using namespace mixrobust;

namespace {

std::vector<Distribution> assorted_laws() {
  return {Distribution::point_mass(0.5),
          Distribution::uniform(-1.0, 2.0),
          Distribution::gaussian(0.3, 1.7),
          Distribution::finite_discrete({{1.0, 0.25}, {-2.0, 0.5}, {3.5, 0.25}}),
          Distribution::empirical(std::vector<double>{0.1, -0.4, 0.1, 2.0, 7.0})};
}

}  // namespace

TEST(LeftInverse, UniformIsIdentityOnUnitInterval) {
  EXPECT_DOUBLE_EQ(left_inverse(Distribution::uniform(0, 1), 0.3).value(), 0.3);
}

TEST(LeftInverse, ThreeEqualAtoms) {
  auto law = Distribution::finite_discrete({{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
  EXPECT_EQ(left_inverse(law, 0.5).value(), 2.0);
  // exactly on a step value picks the step's own atom
  EXPECT_EQ(left_inverse(law, 1.0 / 3).value(), 1.0);
  EXPECT_EQ(left_inverse(law, 1.0).value(), 3.0);
}

TEST(LeftInverse, EmptySetGivesPositiveInfinity) {
  auto capped = [](double y) { return 0.9 * std::clamp(y, 0.0, 1.0); };
  auto r = left_inverse(capped, 0.95, -10.0, 10.0);
  EXPECT_TRUE(r.is_pos_infinity());
  EXPECT_THROW(r.value(), DomainError);
}

TEST(LeftInverse, CallableBisectionMatchesClosedForm) {
  auto law = Distribution::gaussian(1.0, 2.0);
  auto f = [&](double y) { return law.cdf(y); };
  for (double t : {0.01, 0.2, 0.5, 0.77, 0.999}) {
    auto r = left_inverse(f, t, -100.0, 100.0);
    ASSERT_TRUE(r.is_finite());
    EXPECT_NEAR(r.value(), law.quantile(t).value(), 1e-9) << t;
  }
}

TEST(LeftInverse, EdgesOfUnitInterval) {
  auto g = Distribution::gaussian(0, 1);
  EXPECT_TRUE(g.quantile(0.0).is_neg_infinity());
  EXPECT_TRUE(g.quantile(1.0).is_pos_infinity());
  EXPECT_TRUE(Distribution::uniform(0, 1).quantile(1.5).is_pos_infinity());
  EXPECT_EQ(Distribution::uniform(0, 1).quantile(1.0).value(), 1.0);
}

TEST(RightInverse, LinearSurvival) {
  auto h = [](double y) { return std::max(1.0 - y, 0.0); };
  // grid-bisection oracle: last grid point where h > 0.4
  double oracle = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double y = i * 1e-5;
    if (h(y) > 0.4) oracle = y;
  }
  auto r = right_inverse(h, 0.4);
  ASSERT_TRUE(r.is_finite());
  EXPECT_NEAR(r.value(), 0.6, 1e-9);
  EXPECT_NEAR(r.value(), oracle, 2e-5);
}

TEST(RightInverse, ZeroFunctionGivesZero) {
  auto zero = [](double) { return 0.0; };
  for (double t : {0.0, 0.3, 1.0}) EXPECT_EQ(right_inverse(zero, t).value(), 0.0);
}

TEST(RightInverse, PointMassSurvival) {
  auto h = [](double y) { return y < 2.0 ? 1.0 : 0.0; };
  EXPECT_NEAR(right_inverse(h, 0.5).value(), 2.0, 1e-9);
  EXPECT_EQ(abs_upper_quantile(Distribution::point_mass(2.0), 0.5).value(), 2.0);
  EXPECT_EQ(abs_upper_quantile(Distribution::point_mass(-2.0), 0.5).value(), 2.0);
}

TEST(RightInverse, UnboundedSurvivalIsInfinite) {
  auto one = [](double) { return 1.0; };
  EXPECT_TRUE(right_inverse(one, 0.5).is_pos_infinity());
}

TEST(AbsUpperQuantile, DiscreteEnumeration) {
  auto law = Distribution::finite_discrete({{-3, 0.2}, {0, 0.3}, {1, 0.5}});
  // P(|X| > y): 0.7 on [0,1), 0.2 on [1,3), 0 after
  EXPECT_EQ(abs_upper_quantile(law, 0.1).value(), 3.0);
  EXPECT_EQ(abs_upper_quantile(law, 0.2).value(), 1.0);
  EXPECT_EQ(abs_upper_quantile(law, 0.5).value(), 1.0);
  EXPECT_EQ(abs_upper_quantile(law, 0.7).value(), 0.0);
  EXPECT_EQ(abs_upper_quantile(law, 1.0).value(), 0.0);
}

TEST(AbsUpperQuantile, GaussianAgainstBisection) {
  for (auto law : {Distribution::gaussian(0, 1.5), Distribution::gaussian(0.7, 1.0), Distribution::uniform(-1, 3)}) {
    auto h = [&](double y) { return law.cdf_left(-y) + law.sf(y); };
    for (double t : {0.01, 0.3, 0.9}) {
      EXPECT_NEAR(abs_upper_quantile(law, t).value(), right_inverse(h, t).value(), 1e-8) << law.describe() << " " << t;
    }
  }
}

TEST(Distribution, CdfInvariants) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> y(-12.0, 12.0);
  for (const auto& law : assorted_laws()) {
    std::vector<double> grid;
    for (int i = 0; i < 400; ++i) grid.push_back(y(rng));
    for (double b : law.breakpoints()) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    double prev = 0.0;
    for (double v : grid) {
      const double F = law.cdf(v);
      EXPECT_GE(F, prev) << law.describe();
      EXPECT_GE(F, law.cdf_left(v));
      // right-continuity
      EXPECT_NEAR(law.cdf(v + 1e-12), F, 1e-9);
      EXPECT_NEAR(law.sf(v), 1.0 - F, 1e-15);
      prev = F;
    }
    EXPECT_NEAR(law.cdf(-1e9), 0.0, 1e-15);
    EXPECT_NEAR(law.cdf(1e9), 1.0, 1e-15);
  }
}

TEST(Distribution, GeneralizedInverseInequalities) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> y(-6.0, 6.0), s(1e-6, 1.0 - 1e-6);
  for (const auto& law : assorted_laws()) {
    for (int i = 0; i < 500; ++i) {
      const double v = y(rng);
      const double F = law.cdf(v);
      // exact for step CDFs; closed-form inverses round at the ulp level
      const double slack = law.is_discrete() ? 0.0 : 1e-12 * std::max(1.0, std::abs(v));
      if (F > 0.0) {
        EXPECT_LE(law.quantile(F).to_double(), v + slack) << law.describe();
      }
      const double t = s(rng);
      auto q = law.quantile(t);
      ASSERT_TRUE(q.is_finite());
      EXPECT_GE(law.cdf(q.value()), t - 1e-12) << law.describe();
    }
  }
}

TEST(Distribution, FiniteDiscreteValidation) {
  EXPECT_THROW(Distribution::finite_discrete({}), InvariantViolation);
  EXPECT_THROW(Distribution::finite_discrete({{0, 0.5}, {1, 0.4}}), InvariantViolation);
  EXPECT_THROW(Distribution::finite_discrete({{0, 1.2}, {1, -0.2}}), InvariantViolation);
  auto merged = Distribution::finite_discrete({{1, 0.25}, {0, 0.5}, {1, 0.25}});
  ASSERT_EQ(merged.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(merged.atoms()[1].weight, 0.5);
}

TEST(Distribution, ParameterValidation) {
  EXPECT_THROW(Distribution::uniform(1, 1), InvariantViolation);
  EXPECT_THROW(Distribution::gaussian(0, 0), InvariantViolation);
  EXPECT_THROW(Distribution::point_mass(std::nan("")), InvariantViolation);
}

TEST(Distribution, ExpectationAgainstClosedForms) {
  auto g = Distribution::gaussian(1.0, 2.0);
  EXPECT_NEAR(g.expect([](double y) { return y; }), 1.0, 1e-9);
  EXPECT_NEAR(g.expect([](double y) { return y * y; }), 5.0, 1e-9);
  // E|X| for N(0,1) = sqrt(2/pi)
  EXPECT_NEAR(Distribution::gaussian(0, 1).expect([](double y) { return std::abs(y); }), std::sqrt(2.0 / M_PI), 1e-9);
  auto u = Distribution::uniform(-1, 3);
  EXPECT_NEAR(u.expect([](double y) { return y * y; }, Interval{0.0, 1.0}), 1.0 / 12.0, 1e-12);
  auto d = Distribution::finite_discrete({{0, 0.5}, {1, 0.5}});
  EXPECT_DOUBLE_EQ(d.expect([](double) { return 1.0; }, Interval{0.0, 1.0, true, false}), 0.5);
}

TEST(EmpiricalMeasure, CdfAtOrderStatistics) {
  std::mt19937_64 rng(3);
  auto xs = testgen::random_sample(rng, 37);
  EmpiricalMeasure m(xs);
  for (std::size_t k = 1; k <= m.size(); ++k) {
    EXPECT_DOUBLE_EQ(m.cdf(m.order_statistic(k)), static_cast<double>(k) / 37.0);
    EXPECT_EQ(left_inverse(m.law(), static_cast<double>(k) / 37.0).value(), m.order_statistic(k));
  }
}

TEST(EmpiricalMeasure, EqualsUniformDiscreteLaw) {
  std::vector<double> xs{2.0, -1.0, 2.0, 0.5, 3.0, -1.0};
  EmpiricalMeasure m(xs);
  std::vector<Atom> atoms;
  for (double x : xs) atoms.push_back({x, 1.0 / xs.size()});
  auto ref = Distribution::finite_discrete(atoms);
  for (double y = -2.0; y <= 4.0; y += 0.125) {
    EXPECT_NEAR(m.cdf(y), ref.cdf(y), 1e-15);
    EXPECT_NEAR(m.law().cdf(y), ref.cdf(y), 1e-15);
    EXPECT_NEAR(m.law().cdf_left(y), ref.cdf_left(y), 1e-15);
  }
  EXPECT_EQ(m.sample()[0], 2.0);  // original order kept
}

TEST(EmpiricalMeasure, RejectsBadSamples) {
  EXPECT_THROW(EmpiricalMeasure(std::vector<double>{}), DomainError);
  EXPECT_THROW(EmpiricalMeasure(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(QuantileTransform, UniformIsIdentity) {
  EmpiricalMeasure m(std::vector<double>{0.2, 0.7});
  auto u = quantile_transform(m, Distribution::uniform(0, 1), 1);
  ASSERT_EQ(u.size(), 2u);
  EXPECT_DOUBLE_EQ(u[0], 0.2);
  EXPECT_DOUBLE_EQ(u[1], 0.7);
}

TEST(QuantileTransform, SingleAtom) {
  EmpiricalMeasure m(std::vector<double>{0, 0, 0});
  auto law = Distribution::point_mass(0);
  auto u = quantile_transform(m, law, 99);
  for (double v : u) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(law.quantile(v).value(), 0.0);
  }
}

TEST(QuantileTransform, GaussianPostCondition) {
  std::mt19937_64 rng(17);
  auto law = Distribution::gaussian(0, 1);
  std::vector<double> xs(50);
  law.sample(rng, xs);
  EmpiricalMeasure m(xs);
  auto u = quantile_transform(m, law, 4);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(law.quantile(u[i]).value(), xs[i], 1e-8);
  EmpiricalMeasure g(u);
  for (int i = 0; i < 1000; ++i) {
    const double y = -4.0 + 8.0 * i / 999.0;
    EXPECT_DOUBLE_EQ(m.cdf(y), g.cdf(law.cdf(y))) << y;
  }
}

TEST(QuantileTransform, DiscretePostConditionAndDeterminism) {
  auto law = Distribution::finite_discrete({{-1, 0.3}, {0, 0.2}, {2, 0.5}});
  std::mt19937_64 rng(8);
  std::vector<double> xs(200);
  law.sample(rng, xs);
  EmpiricalMeasure m(xs);
  auto u1 = quantile_transform(m, law, 123);
  auto u2 = quantile_transform(m, law, 123);
  EXPECT_EQ(u1, u2);
  auto u3 = quantile_transform(m, law, 124);
  EXPECT_NE(u1, u3);
  EmpiricalMeasure g(u1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(law.quantile(u1[i]).value(), xs[i]);
    EXPECT_GT(u1[i], law.cdf_left(xs[i]));
    EXPECT_LE(u1[i], law.cdf(xs[i]));
  }
  for (double y : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0, 3.0}) EXPECT_DOUBLE_EQ(m.cdf(y), g.cdf(law.cdf(y)));
}

TEST(QuantileTransform, ZeroMassPointNamesIndex) {
  EmpiricalMeasure m(std::vector<double>{0.5, 1.5});
  try {
    quantile_transform(m, Distribution::uniform(0, 1), 1);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(quantile_transform(m, Distribution::point_mass(0.5), 1), DomainError);
}

TEST(Random, DeriveSeedSeparatesPaths) {
  EXPECT_EQ(derive_seed(7, {1, 2, 3}), derive_seed(7, {1, 2, 3}));
  EXPECT_NE(derive_seed(7, {1, 2, 3}), derive_seed(7, {1, 3, 2}));
  EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
}

TEST(ExtendedReal, OrderingAndSentinels) {
  auto inf = ExtendedReal::pos_infinity();
  EXPECT_TRUE(ExtendedReal(1e308) < inf);
  EXPECT_TRUE(ExtendedReal::neg_infinity() < ExtendedReal(-1e308));
  EXPECT_EQ(ExtendedReal(2.0), ExtendedReal(2.0));
  EXPECT_FALSE(inf.is_finite());
  EXPECT_EQ(inf.to_double(), std::numeric_limits<double>::infinity());
}
