#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "mixrobust/errors.hpp"
#include "mixrobust/metrics.hpp"
#include "mixrobust/random.hpp"
#include "mixrobust/theory.hpp"

using namespace mixrobust;

namespace {

MixingProfile iid_profile() { return MixingProfile::from_values({0.25, 0.0}); }

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }
double std_normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// sup_{y <= 0} |F_n(y) - F(y)| phi(y) for a discrete marginal: the gap is
// constant between breakpoints and phi is nonincreasing, so breakpoints suffice.
double weighted_gap_negative(const std::vector<double>& xs, const Distribution& law, const GaugeFunction& phi) {
  std::vector<double> pts(xs);
  for (const auto& a : law.atoms()) pts.push_back(a.location);
  double best = 0.0;
  for (double b : pts) {
    if (b > 0) continue;
    double fn = 0;
    for (double x : xs) fn += x <= b;
    best = std::max(best, std::abs(fn / xs.size() - law.cdf(b)) * phi(b));
  }
  return best;
}

}  // namespace

TEST(MagnitudeLaw, PointMassAndGaussian) {
  MagnitudeLaw pm(Distribution::point_mass(-3.0));
  EXPECT_EQ(pm.upper_quantile(0.2), 3.0);
  EXPECT_EQ(pm.upper_quantile(1.0), 0.0);
  EXPECT_NEAR(pm.square_quantile_integral(0.5), 4.5, 1e-15);
  EXPECT_EQ(pm.survival(2.9), 1.0);
  EXPECT_EQ(pm.survival(3.0), 0.0);

  MagnitudeLaw g(Distribution::gaussian(0, 1));
  for (double a : {0.01, 0.1, 0.3, 0.5}) {
    const double q = g.upper_quantile(a);
    EXPECT_NEAR(2 * std_normal_sf(q), a, 1e-12);
    // E[X^2; |X| > q] = 2 (q pdf(q) + sf(q))
    EXPECT_NEAR(g.square_quantile_integral(a), 2 * (q * std_normal_pdf(q) + std_normal_sf(q)), 1e-9);
  }
}

TEST(MagnitudeLaw, DiscreteRiemannOracle) {
  std::mt19937_64 rng(41);
  for (int r = 0; r < 20; ++r) {
    auto law = testgen::random_discrete(rng);
    for (auto psi : {std::optional<GaugeFunction>{}, std::optional{GaugeFunction::square()}}) {
      MagnitudeLaw m = psi ? MagnitudeLaw(law, *psi) : MagnitudeLaw(law);
      // Gbar->(t) by brute force on the atoms, then a fine midpoint sum
      auto brute_q = [&](double t) {
        double best = 0.0;
        for (const auto& a : law.atoms()) {
          const double y = std::abs(m.transform(a.location));
          double above = 0.0;  // P(|xi| >= y)
          for (const auto& b : law.atoms())
            if (std::abs(m.transform(b.location)) >= y) above += b.weight;
          if (above > t) best = std::max(best, y);
        }
        return best;
      };
      for (double a : {0.1, 0.37, 0.5}) {
        const int N = 20000;
        double acc = 0.0;
        for (int k = 0; k < N; ++k) {
          const double q = brute_q((k + 0.5) * a / N);
          acc += q * q * a / N;
        }
        EXPECT_NEAR(m.square_quantile_integral(a), acc, 2e-3 * (1 + acc));
        EXPECT_EQ(m.upper_quantile(a), brute_q(a));
      }
    }
  }
}

TEST(RioBound, Examples) {
  MagnitudeLaw pm(Distribution::point_mass(2.0));
  for (std::size_t n : {1, 10, 64})
    for (double x : {50.0, 100.0}) EXPECT_NEAR(rio_bound(pm, iid_profile(), n, x), std::min(1.0, 8.0 * n * 4 / (x * x)), 1e-12);
  EXPECT_EQ(rio_bound(pm, MixingProfile::from_values({0.0}), 10, 1.0), 0.0);
  EXPECT_EQ(rio_bound(pm, iid_profile(), 10, 1e-3), 1.0);
  EXPECT_THROW(rio_bound(pm, iid_profile(), 10, 0.0), DomainError);

  auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5}, {}}), Distribution::gaussian(0, 1));
  MixingProfile prof(spec);
  MagnitudeLaw x(*stationary_marginal(spec));
  double prev = 1.0;
  for (double v = 1.0; v < 200.0; v *= 1.5) {
    const double b = rio_bound(x, prof, 64, v);
    EXPECT_LE(b, prev);
    EXPECT_GE(b, 0.0);
    prev = b;
  }
}

TEST(LlnBound, Examples) {
  MagnitudeLaw u(Distribution::uniform(0, 1));
  auto t = lln_tail_terms(u, iid_profile(), 1000000, 0.1, 1.0);
  EXPECT_NEAR(t.s1, 1152.0 / 0.01 * 0.25 / 1e6, 1e-15);
  EXPECT_EQ(t.s2, 0.0);
  EXPECT_EQ(t.s3, 0.0);
  EXPECT_NEAR(t.total, 0.0288, 1e-12);
  // bounded |xi| <= K
  for (std::size_t n : {100, 10000}) EXPECT_NEAR(lln_tail_bound(u, iid_profile(), n, 1.0, 2.0), std::min(1.0, 1152.0 * 4 / n * 0.25), 1e-12);
  // heavy tail beyond K
  MagnitudeLaw heavy(Distribution::finite_discrete({{0.0, 0.5}, {100.0, 0.5}}));
  auto h = lln_tail_terms(heavy, iid_profile(), 10, 1.0, 10.0);
  EXPECT_EQ(h.s3, 1.0);
  EXPECT_EQ(h.total, 1.0);
  EXPECT_THROW(lln_tail_bound(u, iid_profile(), 10, 0.0, 1.0), DomainError);
  EXPECT_THROW(lln_tail_bound(u, iid_profile(), 10, 1.0, -1.0), DomainError);
}

TEST(Brackets, UniformConstantGauge) {
  auto fam = build_brackets(Distribution::uniform(-1, 0), GaugeFunction::one(), 0.5);
  const std::vector<double> want{0, 0.25, 0.5, 0.75, 1};
  ASSERT_EQ(fam.s_grid().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(fam.s_grid()[i], want[i], 1e-12);
  for (std::size_t i = 0; i < fam.brackets().size(); ++i) EXPECT_LE(fam.width(i), 0.5 + 1e-8);
  std::vector<double> grid;
  for (int j = 1; j <= 100; ++j) grid.push_back(j / 100.0);
  EXPECT_TRUE(fam.verify(grid).ok) << fam.verify(grid).failure;
  EXPECT_NEAR(fam.w(0.3), 1.0, 0);
  EXPECT_NEAR(fam.h(0.3), 0.3, 1e-12);
}

TEST(Brackets, NoNegativeMass) {
  auto fam = build_brackets(Distribution::point_mass(1.0), GaugeFunction::power(2), 0.1);
  ASSERT_EQ(fam.brackets().size(), 1u);
  EXPECT_EQ(fam.width(0), 0.0);
  EXPECT_EQ(fam.upper(0, 0.5), 0.0);
}

TEST(Brackets, EmpiricalTwoPoints) {
  auto law = EmpiricalMeasure({-2.0, -1.0}).law();
  auto phi = GaugeFunction::power(2);
  auto fam = build_brackets(law, phi, 1.0);
  std::vector<double> grid;
  for (int j = 1; j <= 100; ++j) grid.push_back(j / 100.0);
  auto chk = fam.verify(grid);
  EXPECT_TRUE(chk.ok) << chk.failure;
  // w = 9 on (0, 1/2], 4 on (1/2, 1]
  EXPECT_EQ(fam.w(0.25), 9.0);
  EXPECT_EQ(fam.w(0.75), 4.0);
  EXPECT_EQ(fam.w_right(0.5), 4.0);
  EXPECT_NEAR(fam.h(1.0), 6.5, 1e-15);
}

TEST(Brackets, RandomDiscreteMarginals) {
  std::mt19937_64 rng(17);
  std::vector<double> grid;
  for (int j = 1; j <= 100; ++j) grid.push_back(j / 100.0);
  for (int r = 0; r < 20; ++r) {
    auto law = testgen::random_discrete(rng);
    for (double eps : {0.1, 0.05}) {
      for (auto phi : {GaugeFunction::one(), GaugeFunction::power(2)}) {
        auto fam = build_brackets(law, phi, eps);
        auto chk = fam.verify(grid);
        EXPECT_TRUE(chk.ok) << chk.failure;
        EXPECT_LE(chk.max_width, eps + 1e-8);
        // s-grid and y-grid budgets
        for (std::size_t i = 1; i < fam.s_grid().size(); ++i)
          EXPECT_LE(fam.h(fam.s_grid()[i]) - fam.h(fam.s_grid()[i - 1]), eps / 2 + 1e-12);
        EXPECT_LE(tail_moment_negative(law, phi, fam.K()), eps / 2 + 1e-12);
      }
    }
  }
}

TEST(Brackets, ContinuousMarginal) {
  std::vector<double> grid;
  for (int j = 1; j <= 100; ++j) grid.push_back(j / 100.0);
  for (auto law : {Distribution::gaussian(0, 1), Distribution::gaussian(-1, 2), Distribution::uniform(-3, 1)}) {
    auto fam = build_brackets(law, GaugeFunction::power(1), 0.1);
    auto chk = fam.verify(grid);
    EXPECT_TRUE(chk.ok) << law.describe() << ": " << chk.failure;
  }
}

TEST(Brackets, StepFourDomination) {
  std::mt19937_64 rng(99);
  for (int r = 0; r < 50; ++r) {
    auto law = testgen::random_discrete(rng);
    auto phi = r % 2 ? GaugeFunction::power(2) : GaugeFunction::one();
    auto fam = build_brackets(law, phi, 0.1);
    Rng draw(derive_seed(5, {std::uint64_t(r)}));
    std::vector<double> xs(64);
    for (double& x : xs) x = law.sample(draw);
    EmpiricalMeasure emp(xs);
    auto us = quantile_transform(emp, law, derive_seed(6, {std::uint64_t(r)}));
    const double lhs = weighted_gap_negative(xs, law, phi);
    EXPECT_NEAR(lhs, kolmogorov_phi(emp.law(), law, phi, Interval{-INFINITY, 0.0}), 1e-12);
    EXPECT_LE(lhs, fam.domination_bound(us) + 1e-12);
  }
}

TEST(Brackets, PositiveSideByReflection) {
  auto law = Distribution::finite_discrete({{-1.0, 0.2}, {0.5, 0.3}, {2.0, 0.5}});
  auto pos = build_brackets(law, GaugeFunction::power(2), 0.2, HalfLine::positive);
  auto neg = build_brackets(reflected(law), GaugeFunction::power(2), 0.2);
  ASSERT_EQ(pos.t_grid().size(), neg.t_grid().size());
  for (std::size_t i = 0; i < pos.t_grid().size(); ++i) EXPECT_EQ(pos.t_grid()[i], neg.t_grid()[i]);
  EXPECT_NEAR(reflected(law).cdf(-0.5), 0.8, 1e-15);
}
