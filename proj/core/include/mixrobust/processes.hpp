#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixrobust/distribution.hpp"

namespace mixrobust {

/// ARMA(p, q) parameters: X_t = sum_{s<=p} phi_s X_{t-s} + Z_t + sum_{s<=q} theta_s Z_{t-s}.
/// theta_0 = 1 is implicit.
struct ArmaParams {
  std::vector<double> phi;
  std::vector<double> theta;
};

struct RootReport {
  bool pass = false;
  /// Zeros of phi(z) = 1 - sum phi_s z^s and theta(z) = 1 + sum theta_s z^s.
  std::vector<std::complex<double>> phi_roots;
  std::vector<std::complex<double>> theta_roots;
  /// Empty on pass; otherwise names the offending root.
  std::string reason;
};

/// Roots of c_0 + c_1 z + ... + c_d z^d (companion-matrix eigenvalues).
/// Trailing zero coefficients are dropped; degree <= 8.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coefficients);

/// Pass iff every root of phi and theta lies outside the closed unit disk
/// (|z| > 1 + 1e-9) and the two share no zero (distance <= 1e-9).
RootReport causality_invertibility_check(const ArmaParams& params);

/// a_0..a_{s_max} from a_s = theta_s + sum_{j<=min(s,p)} phi_j a_{s-j}.
/// Throws ParameterError naming the root when the check above fails.
std::vector<double> arma_ma_coeffs(const ArmaParams& params, std::size_t s_max);

/// b with sum_{j<=s} a_j b_{s-j} = [s == 0] for s <= s_max. Missing a_j are 0.
/// Throws ParameterError when a_0 == 0.
std::vector<double> invert_power_series(const std::vector<double>& a, std::size_t s_max);

/// MA(infinity) coefficients a_s (a_0 = 1) given by a closed-form tag.
class CoefficientGenerator {
 public:
  enum class Kind { iid, arma, geometric, explicit_list };

  static CoefficientGenerator iid();
  /// Throws ParameterError unless causal, invertible, without common zeros.
  static CoefficientGenerator arma(ArmaParams params);
  /// a_0 = 1, a_s = a q^s (s >= 1); needs |q| < 1 and |(1 - a) q| < 1.
  static CoefficientGenerator geometric(double a, double q);
  /// Finite list a_0 = 1, a_1, ..., a_N; zero afterwards.
  static CoefficientGenerator explicit_list(std::vector<double> a);

  Kind kind() const { return kind_; }
  const ArmaParams& arma_params() const { return arma_; }
  std::string describe() const;

  std::vector<double> coefficients(std::size_t s_max) const;

  /// sum_{u>=n} sum_{s>=u} |a_s|. Closed form for iid, geometric and
  /// ARMA(1,1); otherwise exact summation to a cutoff plus a geometric
  /// envelope bound on the remainder.
  double tail_double_sum(std::size_t n) const;
  /// sum_{s>=n} |a_s| (same scheme).
  double abs_tail(std::size_t n) const;
  /// sum_s |b_s| for b the coefficients of 1 / a(z).
  double abs_sum_b() const;
  /// sum_s a_s^2 and sum_s a_s.
  double square_sum() const;
  double plain_sum() const;

 private:
  CoefficientGenerator() = default;

  Kind kind_ = Kind::iid;
  ArmaParams arma_;  // explicit lists are stored as MA(N)
  double ga_ = 0.0, gq_ = 0.0;
};

/// Linear process X_t = sum_s a_s Z_{t-s} with i.i.d. noise Z.
struct LinearProcessSpec {
  CoefficientGenerator a = CoefficientGenerator::iid();
  Distribution noise = Distribution::gaussian(0.0, 1.0);
  /// Total-variation Lipschitz constant of the noise density; absent for
  /// noise without a density.
  std::optional<double> M;
  /// E|Z_1|.
  double L = 0.0;

  /// Derives M and L from the noise: sqrt(2/pi)/sd for Gaussian noise,
  /// 2/(hi - lo) for uniform noise, none for discrete noise.
  static LinearProcessSpec make(CoefficientGenerator a, Distribution noise);
};

/// n -> min(1/4, C * tail_double_sum(n)) with C = 2 M L sum|b_s|; 1/4 at n = 0.
class MixingProfile {
 public:
  explicit MixingProfile(const LinearProcessSpec& spec);
  /// A profile given directly by its values alpha(0), alpha(1), ...; later
  /// indices repeat the last value.
  static MixingProfile from_values(std::vector<double> values);

  double operator()(std::size_t n) const;
  double constant() const { return constant_; }

 private:
  MixingProfile() = default;

  std::optional<CoefficientGenerator> generator_;
  double constant_ = 0.0;
  std::vector<double> values_;
};

/// The profile value at n. Throws ParameterError when the noise has no
/// density constant M.
double mixing_bound(const LinearProcessSpec& spec, std::size_t n);

/// Smallest s with L * sum_{j>s} |a_j| <= budget, capped at 10000. Throws
/// ParameterError if the cap is not enough.
std::size_t default_s_max(const LinearProcessSpec& spec, double budget = 1e-10);

/// X_1..X_n from a single noise stream Z_{1-s_max}..Z_n seeded by `seed`.
/// Throws ParameterError when the truncation exceeds the budget.
std::vector<double> simulate_linear(const LinearProcessSpec& spec, std::size_t n, std::uint64_t seed,
                                    std::optional<std::size_t> s_max = std::nullopt, double budget = 1e-10);

/// Closed-form marginal of X_t when available: Gaussian noise gives a
/// Gaussian, point-mass noise a point mass, iid coefficients the noise law
/// itself; nullopt otherwise.
std::optional<Distribution> stationary_marginal(const LinearProcessSpec& spec);

}  // namespace mixrobust
