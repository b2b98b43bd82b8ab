#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "generators.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/functionals.hpp"

using namespace mixrobust;

namespace {

// integral of |y|^k over [a, b], k in {0, 1}
double abs_power_integral(double a, double b, int k) {
  if (k == 0) return b - a;
  auto prim = [](double y) { return 0.5 * y * std::abs(y); };  // d/dy = |y|
  return prim(b) - prim(a);
}

// exact piecewise integral of |F_mu - F_nu| |y|^k
double cdf_gap_integral(const Distribution& mu, const Distribution& nu, int k) {
  std::vector<double> pts;
  for (const auto& a : mu.atoms()) pts.push_back(a.location);
  for (const auto& a : nu.atoms()) pts.push_back(a.location);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    total += std::abs(mu.cdf(mid) - nu.cdf(mid)) * abs_power_integral(pts[i], pts[i + 1], k);
  }
  return total;
}

}  // namespace

TEST(Functionals, Examples) {
  EmpiricalMeasure e({1, 2, 3});
  EXPECT_EQ(Functional::mean().evaluate(e), 2.0);
  EXPECT_EQ(Functional::lower_quantile(0.5).evaluate(e), 2.0);
  PairedSample p({0, 1}, {0, 1});
  EXPECT_DOUBLE_EQ(Functional::covariance().evaluate(p), 0.25);
  std::vector<double> five{5}, ones{1, 1, 1}, q{4, 1, 3, 2};
  EXPECT_EQ(Functional::mean().plugin(five), 5.0);
  EXPECT_EQ(Functional::variance().plugin(ones), 0.0);
  EXPECT_EQ(Functional::variance().plugin(five), 0.0);
  EXPECT_EQ(Functional::lower_quantile(0.25).plugin(q), 1.0);
  EXPECT_EQ(Functional::lower_quantile(0.3).plugin(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 3.0);
  EXPECT_DOUBLE_EQ(Functional::second_moment().plugin(q), 7.5);
  EXPECT_DOUBLE_EQ(Functional::variance().plugin(q), 1.25);
}

TEST(Functionals, ClosedFormLaws) {
  auto g = Distribution::gaussian(1.0, 2.0);
  EXPECT_NEAR(Functional::mean().evaluate(g), 1.0, 1e-12);
  EXPECT_NEAR(Functional::variance().evaluate(g), 4.0, 1e-10);
  EXPECT_NEAR(Functional::second_moment().evaluate(g), 5.0, 1e-10);
  EXPECT_NEAR(Functional::lower_quantile(0.975).evaluate(g), 1.0 + 2.0 * 1.959963984540054, 1e-9);
  auto u = Distribution::uniform(0, 1);
  EXPECT_NEAR(Functional::lower_quantile(0.25).evaluate(u), 0.25, 1e-12);
  EXPECT_THROW(Functional::covariance().evaluate(u), DomainError);
}

TEST(Functionals, ParseAndErrors) {
  EXPECT_EQ(Functional::parse("quantile:0.25").alpha(), 0.25);
  EXPECT_EQ(Functional::parse("quantile:0.25").descriptor(), "quantile:0.25");
  for (auto d : {"mean", "variance", "second-moment", "covariance"}) EXPECT_EQ(Functional::parse(d).descriptor(), d);
  EXPECT_THROW(Functional::parse("median"), ConfigError);
  EXPECT_THROW(Functional::parse("quantile:1"), ConfigError);
  EXPECT_THROW(Functional::parse("quantile:x"), ConfigError);
  EXPECT_THROW(Functional::lower_quantile(0.0), ParameterError);
  EXPECT_THROW(Functional::mean().plugin(std::vector<double>{}), DomainError);
  EXPECT_THROW(PairedSample({1, 2}, {1}), DomainError);
  EXPECT_THROW(Functional::mean().evaluate(PairedSample({1}, {1})), DomainError);
}

TEST(Functionals, MomentContinuityBounds) {
  std::mt19937_64 rng(21);
  for (int r = 0; r < 300; ++r) {
    auto mu = testgen::random_discrete(rng), nu = testgen::random_discrete(rng);
    const double d1 = std::abs(Functional::mean().evaluate(mu) - Functional::mean().evaluate(nu));
    EXPECT_LE(d1, cdf_gap_integral(mu, nu, 0) + 1e-12);
    const double d2 = std::abs(Functional::second_moment().evaluate(mu) - Functional::second_moment().evaluate(nu));
    EXPECT_LE(d2, 2 * cdf_gap_integral(mu, nu, 1) + 1e-12);
  }
}

TEST(Functionals, PluginIsEvaluateOfEmpiricalLaw) {
  std::mt19937_64 rng(5);
  for (int r = 0; r < 50; ++r) {
    auto xs = testgen::random_sample(rng, 1 + r);
    for (auto f : {Functional::mean(), Functional::variance(), Functional::second_moment(),
                   Functional::lower_quantile(0.1), Functional::lower_quantile(0.5)}) {
      EXPECT_EQ(f.plugin(xs), f.evaluate(EmpiricalMeasure(xs).law()));
    }
  }
}

TEST(Functionals, QuantilePermutationInvariant) {
  std::mt19937_64 rng(6);
  for (int r = 0; r < 50; ++r) {
    auto xs = testgen::random_sample(rng, 20);
    for (auto& x : xs) x = std::round(x * 2) / 2;  // force ties
    const double a = Functional::lower_quantile(0.37).plugin(xs);
    std::shuffle(xs.begin(), xs.end(), rng);
    EXPECT_EQ(Functional::lower_quantile(0.37).plugin(xs), a);
    // brute force: smallest sample value with F >= alpha
    double best = INFINITY;
    for (double c : xs) {
      const double F = std::count_if(xs.begin(), xs.end(), [&](double v) { return v <= c; }) / 20.0;
      if (F >= 0.37) best = std::min(best, c);
    }
    EXPECT_EQ(a, best);
  }
}
