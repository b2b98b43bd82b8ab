#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mixrobust/errors.hpp"
#include "mixrobust/processes.hpp"
#include "mixrobust/random.hpp"

using namespace mixrobust;

namespace {

// sum_{u=n}^{S} sum_{s=u}^{S} |a_s|, written as the literal double loop
double direct_double_sum(const std::vector<double>& a, std::size_t n) {
  double total = 0.0;
  for (std::size_t u = n; u < a.size(); ++u) {
    double inner = 0.0;
    for (std::size_t s = u; s < a.size(); ++s) inner += std::abs(a[s]);
    total += inner;
  }
  return total;
}

double abs_sum(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

}  // namespace

TEST(ArmaCoeffs, Ar1IsGeometric) {
  auto a = arma_ma_coeffs({{0.5}, {}}, 60);
  for (std::size_t s = 0; s <= 60; ++s) EXPECT_NEAR(a[s], std::pow(0.5, s), 1e-12);
}

TEST(ArmaCoeffs, PureMaCopiesTheta) {
  auto a = arma_ma_coeffs({{}, {0.4, -0.2, 0.1}}, 10);
  const std::vector<double> want{1.0, 0.4, -0.2, 0.1, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t s = 0; s <= 10; ++s) EXPECT_NEAR(a[s], want[s], 1e-12);
}

TEST(ArmaCoeffs, Arma11ClosedForm) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int r = 0; r < 50; ++r) {
    const double phi = u(rng), theta = u(rng);
    if (std::abs(phi + theta) < 0.01) continue;
    auto a = arma_ma_coeffs({{phi}, {theta}}, 80);
    EXPECT_EQ(a[0], 1.0);
    for (std::size_t s = 1; s <= 80; ++s) EXPECT_NEAR(a[s], (phi + theta) * std::pow(phi, s - 1.0), 1e-12);
  }
}

TEST(ArmaCoeffs, RootChecks) {
  auto ok = causality_invertibility_check({{0.5}, {}});
  EXPECT_TRUE(ok.pass);
  ASSERT_EQ(ok.phi_roots.size(), 1u);
  EXPECT_NEAR(ok.phi_roots[0].real(), 2.0, 1e-12);

  auto bad = causality_invertibility_check({{1.5}, {}});
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(std::abs(bad.phi_roots[0]), 2.0 / 3.0, 1e-12);
  EXPECT_NE(bad.reason.find("causal"), std::string::npos);

  auto common = causality_invertibility_check({{0.4}, {-0.4}});
  EXPECT_FALSE(common.pass);
  EXPECT_NE(common.reason.find("share"), std::string::npos);

  EXPECT_FALSE(causality_invertibility_check({{}, {1.0}}).pass);  // unit root of theta
  // AR(2) with complex roots of modulus 1/sqrt(0.5)
  EXPECT_TRUE(causality_invertibility_check({{1.0, -0.5}, {}}).pass);
  EXPECT_THROW(arma_ma_coeffs({{1.5}, {}}, 5), ParameterError);
  try {
    arma_ma_coeffs({{1.5}, {}}, 5);
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("0.666667"), std::string::npos) << e.what();
  }
}

TEST(PowerSeries, ConvolutionIdentity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int r = 0; r < 30; ++r) {
    std::vector<double> a{1.0 + u(rng)};
    for (int k = 0; k < 6; ++k) a.push_back(u(rng) * 0.2);
    auto b = invert_power_series(a, 100);
    for (std::size_t s = 0; s <= 100; ++s) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= s && j < a.size(); ++j) acc += a[j] * b[s - j];
      EXPECT_NEAR(acc, s == 0 ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(PowerSeries, TrivialAndErrors) {
  auto b = invert_power_series({1.0, 0.0, 0.0}, 5);
  for (std::size_t s = 0; s <= 5; ++s) EXPECT_EQ(b[s], s == 0 ? 1.0 : 0.0);
  EXPECT_THROW(invert_power_series({0.0, 1.0}, 3), ParameterError);
}

TEST(PowerSeries, GeometricShapeClosedForm) {
  // a_0 general, a_s = a q^s
  for (auto [a0, a, q] : {std::tuple{1.0, 1.6, 0.5}, std::tuple{2.0, 0.8, -0.4}, std::tuple{1.5, -0.3, 0.7}}) {
    std::vector<double> as{a0};
    for (int s = 1; s <= 60; ++s) as.push_back(a * std::pow(q, s));
    auto b = invert_power_series(as, 60);
    EXPECT_NEAR(b[0], 1.0 / a0, 1e-14);
    for (int s = 1; s <= 60; ++s)
      EXPECT_NEAR(b[s], -a * std::pow(a0 - a, s - 1) * std::pow(a0, -(s + 1.0)) * std::pow(q, s), 1e-12);
  }
}

TEST(PowerSeries, AbsSumBAgainstTruncation) {
  auto g = CoefficientGenerator::arma({{0.5}, {0.3}});
  auto b = invert_power_series(arma_ma_coeffs({{0.5}, {0.3}}, 400), 400);
  EXPECT_NEAR(g.abs_sum_b(), 1.0 + 0.8 / 0.7, 1e-14);
  EXPECT_NEAR(abs_sum(b), g.abs_sum_b(), 1e-10);
}

TEST(TailSum, Arma11ClosedFormMatchesDirectSum) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  int done = 0;
  while (done < 50) {
    const double phi = u(rng), theta = u(rng);
    if (std::abs(phi + theta) < 0.01) continue;
    ++done;
    auto g = CoefficientGenerator::arma({{phi}, {theta}});
    auto a = arma_ma_coeffs({{phi}, {theta}}, 1500);
    for (std::size_t n : {1, 2, 5, 10, 30}) {
      EXPECT_NEAR(g.tail_double_sum(n), direct_double_sum(a, n), 1e-10);
      EXPECT_NEAR(g.tail_double_sum(n),
                  std::abs(phi + theta) / std::pow(1 - std::abs(phi), 2) * std::pow(std::abs(phi), n - 1.0), 1e-14);
    }
    auto b = invert_power_series(a, 1500);
    EXPECT_NEAR(g.abs_sum_b(), abs_sum(b), 1e-10);
  }
}

TEST(TailSum, GeneralArmaEnvelope) {
  // ARMA(2,1): no closed form, summation plus envelope
  ArmaParams p{{0.6, -0.2}, {0.35}};
  auto g = CoefficientGenerator::arma(p);
  auto a = arma_ma_coeffs(p, 3000);
  for (std::size_t n : {0, 1, 3, 10, 40}) {
    const double direct = direct_double_sum(a, n);
    EXPECT_GE(g.tail_double_sum(n), direct - 1e-12);
    EXPECT_NEAR(g.tail_double_sum(n), direct, 1e-10);
  }
  EXPECT_NEAR(g.abs_sum_b(), abs_sum(invert_power_series(a, 3000)), 1e-10);
  EXPECT_NEAR(g.plain_sum(), 1.35 / 0.6, 1e-12);
}

TEST(TailSum, GeometricAndTrivial) {
  auto g = CoefficientGenerator::geometric(1.6, 0.5);
  auto a = g.coefficients(2000);
  for (std::size_t n = 1; n < 20; ++n) {
    EXPECT_NEAR(g.tail_double_sum(n), direct_double_sum(a, n), 1e-10);
    // |a_s| <= C q^s with C = max(1, |a|)
    EXPECT_LE(g.tail_double_sum(n), 1.6 / 0.25 * std::pow(0.5, n) * (1 + 1e-15));
  }
  EXPECT_NEAR(g.tail_double_sum(0), direct_double_sum(a, 0), 1e-10);
  auto iid = CoefficientGenerator::iid();
  for (std::size_t n = 1; n < 5; ++n) EXPECT_EQ(iid.tail_double_sum(n), 0.0);
  auto ma = CoefficientGenerator::explicit_list({1.0, 0.5, 0.25});
  EXPECT_EQ(ma.tail_double_sum(3), 0.0);
  EXPECT_NEAR(ma.tail_double_sum(1), 0.5 + 0.25 + 0.25, 1e-15);
  EXPECT_THROW(CoefficientGenerator::geometric(1.0, 1.0), ParameterError);
  EXPECT_THROW(CoefficientGenerator::geometric(-2.0, 0.5), ParameterError);  // zero of a(z) at 2/3
  EXPECT_THROW(CoefficientGenerator::explicit_list({2.0, 0.1}), ParameterError);
}

TEST(MixingBound, CapMonotoneAndIid) {
  auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5}, {0.3}}), Distribution::gaussian(0, 1));
  const double M = std::sqrt(2 / std::numbers::pi);
  EXPECT_NEAR(*spec.M, M, 1e-15);
  EXPECT_NEAR(spec.L, M, 1e-15);
  EXPECT_EQ(mixing_bound(spec, 0), 0.25);
  EXPECT_EQ(mixing_bound(spec, 1), 0.25);
  double prev = 0.25;
  for (std::size_t n = 1; n < 80; ++n) {
    const double v = mixing_bound(spec, n);
    EXPECT_LE(v, prev);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
  const double expect10 = 2 * M * M * (1 + 0.8 / 0.7) * (0.8 / 0.25) * std::pow(0.5, 9);
  EXPECT_NEAR(mixing_bound(spec, 10), expect10, 1e-15);

  auto iid = LinearProcessSpec::make(CoefficientGenerator::iid(), Distribution::uniform(0, 1));
  EXPECT_EQ(*iid.M, 2.0);
  EXPECT_NEAR(iid.L, 0.5, 1e-15);
  for (std::size_t n = 1; n < 5; ++n) EXPECT_EQ(mixing_bound(iid, n), 0.0);

  auto atom = LinearProcessSpec::make(CoefficientGenerator::iid(), Distribution::point_mass(1.0));
  EXPECT_THROW(mixing_bound(atom, 3), ParameterError);
}

TEST(MixingBound, ClassConstantsHalf) {
  const double c = 0.5;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-c, c);
  for (int r = 0; r < 200; ++r) {
    const double phi = u(rng), theta = u(rng);
    if (std::abs(phi + theta) < 0.01) continue;
    auto g = CoefficientGenerator::arma({{phi}, {theta}});
    EXPECT_LE(g.abs_sum_b(), 3.0);
    for (std::size_t n = 1; n <= 30; ++n) EXPECT_LE(g.tail_double_sum(n), 8.0 * std::pow(0.5, n));
  }
}

TEST(MixingBound, ProfileFromValues) {
  auto p = MixingProfile::from_values({0.25, 0.1, 0.05});
  EXPECT_EQ(p(0), 0.25);
  EXPECT_EQ(p(2), 0.05);
  EXPECT_EQ(p(10), 0.05);
  EXPECT_THROW(MixingProfile::from_values({0.3}), ParameterError);
}

TEST(Simulate, IidIsTheNoiseStream) {
  auto spec = LinearProcessSpec::make(CoefficientGenerator::iid(), Distribution::gaussian(1, 2));
  auto x = simulate_linear(spec, 50, 123);
  Rng rng(123);
  auto z = Distribution::gaussian(1, 2);
  for (double v : x) EXPECT_EQ(v, z.sample(rng));
}

TEST(Simulate, SatisfiesArmaRecursion) {
  auto noise = Distribution::gaussian(0, 1);
  auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5}, {0.3}}), noise);
  const std::size_t S = default_s_max(spec);
  EXPECT_LE(spec.L * spec.a.abs_tail(S + 1), 1e-10);
  EXPECT_GT(spec.L * spec.a.abs_tail(S), 1e-10);
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    auto x = simulate_linear(spec, 4, seed);
    Rng rng(seed);
    std::vector<double> z(S + 4);
    for (double& v : z) v = noise.sample(rng);
    // z[S - 1 + t] = Z_t
    for (std::size_t t = 2; t <= 4; ++t) {
      const double rec = 0.5 * x[t - 2] + z[S - 1 + t] + 0.3 * z[S - 2 + t];
      EXPECT_NEAR(x[t - 1], rec, 1e-9);
    }
    EXPECT_EQ(x, simulate_linear(spec, 4, seed));
  }
  EXPECT_THROW(simulate_linear(spec, 4, 1, std::size_t{5}), ParameterError);
}

TEST(Simulate, MarginalMoments) {
  auto spec = LinearProcessSpec::make(CoefficientGenerator::arma({{0.5}, {0.3}}), Distribution::gaussian(0, 1));
  const double var = 1.0 + 0.64 / 0.75;
  auto marg = stationary_marginal(spec);
  ASSERT_TRUE(marg);
  EXPECT_NEAR(marg->gaussian_sd(), std::sqrt(var), 1e-14);
  const int R = 10000;
  double m1 = 0, m2 = 0;
  for (int r = 0; r < R; ++r) {
    const double x = simulate_linear(spec, 1, derive_seed(7, {std::uint64_t(r)}))[0];
    m1 += x;
    m2 += x * x;
  }
  m1 /= R;
  m2 /= R;
  EXPECT_LE(std::abs(m1), 4 * std::sqrt(var / R));
  EXPECT_LE(std::abs(m2 - m1 * m1 - var), 4 * var * std::sqrt(2.0 / R));
}
