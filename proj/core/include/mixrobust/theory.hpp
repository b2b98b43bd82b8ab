#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixrobust/distribution.hpp"
#include "mixrobust/gauge.hpp"
#include "mixrobust/processes.hpp"

namespace mixrobust {

/// Law of |xi| where xi = X, or xi = psi(X) for a psi gauge, X ~ law.
class MagnitudeLaw {
 public:
  explicit MagnitudeLaw(Distribution law);
  MagnitudeLaw(Distribution law, GaugeFunction psi);

  const Distribution& base() const { return law_; }
  std::string describe() const;

  /// P(|xi| > y).
  double survival(double y) const;
  /// sup{y >= 0 : P(|xi| > y) > t}, 0 for an empty set.
  double upper_quantile(double t) const;
  /// int_0^a upper_quantile(t)^2 dt, computed as E[xi^2; |xi| > q] + q^2 (a - P(|xi| > q)) with q = upper_quantile(a).
  double square_quantile_integral(double a) const;
  /// E[|xi| 1{|xi| >= K}] (or > K when strict).
  double tail_moment(double K, bool strict = false) const;
  double mean() const;
  double second_moment() const;
  /// xi for one observation x.
  double transform(double x) const { return psi_ ? (*psi_)(x) : x; }

 private:
  double square_beyond(double q) const;  // E[xi^2; |xi| > q]

  Distribution law_;
  std::optional<GaugeFunction> psi_;
};

/// 16/x^2 * n * sum_{j<n} int_0^{2 alpha(j)} upper_quantile(t)^2 dt, capped at 1.
/// alpha(0) is taken from the profile. Throws DomainError for x <= 0 or an
/// infinite second moment.
double rio_bound(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double x);

struct LlnTerms {
  double s1 = 0.0;  // (1152 K^2 / delta^2) (1/n) sum_{j<n} alpha(j)
  double s2 = 0.0;  // (3 / delta) E[|xi| 1{|xi| >= K}]
  double s3 = 0.0;  // 1 unless E[|xi| 1{|xi| > K}] < delta / 3
  double total = 0.0;  // min(1, s1 + s2 + s3)
};

/// Truncation bound on P(|mean of xi_1..xi_n - E xi| >= delta). Throws
/// DomainError unless delta > 0 and K > 0.
LlnTerms lln_tail_terms(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double delta, double K);
double lln_tail_bound(const MagnitudeLaw& xi, const MixingProfile& alpha, std::size_t n, double delta, double K);

enum class HalfLine { negative, positive };

/// Law of -X.
Distribution reflected(const Distribution& law);

struct BracketCheck {
  bool ok = true;
  double max_width = 0.0;
  std::size_t checked = 0;
  std::string failure;
};

/// Finite eps-brackets in L^1[0,1] covering {w_s : s in [0,1]} with
/// w(t) = phi(F^{-1}(t)) 1{t <= F(0)} and w_s = w(s) 1_[0,s].
///
/// Bracket i over (t_{i-1}, t_i]: lower = w(t_i) on [0, t_{i-1}]; upper =
/// w(t_{i-1}+) on [0, t_{i-1}] plus w on (t_{i-1}, t_i]. The right limit keeps
/// the width below eps when w jumps at a grid point.
class BracketFamily {
 public:
  struct Bracket {
    double t_lo, t_hi;
    double lower_level;  // w(t_hi)
    double upper_level;  // w(t_lo+)
  };

  std::span<const double> s_grid() const { return s_grid_; }
  /// 0 = y_0 < ... < y_{l-1} = K, y_l = +inf.
  std::span<const double> y_grid() const { return y_grid_; }
  std::span<const double> t_grid() const { return t_grid_; }
  std::span<const Bracket> brackets() const { return brackets_; }
  double K() const { return K_; }
  double eps() const { return eps_; }
  std::size_t k_eps() const { return s_grid_.size() - 1; }
  std::size_t l_eps() const { return y_grid_.size() - 1; }

  double w(double t) const;
  double w_right(double t) const;
  double h(double t) const;

  double lower(std::size_t i, double x) const;
  double upper(std::size_t i, double x) const;
  /// int_0^1 (upper - lower).
  double width(std::size_t i) const;
  double lower_integral(std::size_t i) const;
  double upper_integral(std::size_t i) const;

  /// Widths <= eps + 1e-8, count <= k + l, and for each s in `s_values`
  /// lower <= w_s <= upper at the grid points, s and a sweep of interior points.
  BracketCheck verify(std::span<const double> s_values) const;

  /// max_i max{int u_i d(G_n - I), int l_i d(I - G_n)} + eps, with G_n the
  /// empirical CDF of `uniforms`.
  double domination_bound(std::span<const double> uniforms) const;

  const Distribution& marginal() const { return law_; }
  const GaugeFunction& phi() const { return phi_; }

 private:
  friend BracketFamily build_brackets(const Distribution&, const GaugeFunction&, double, HalfLine);
  BracketFamily(Distribution law, GaugeFunction phi, double eps)
      : law_(std::move(law)), phi_(std::move(phi)), eps_(eps) {}

  double band(double a, double b) const;     // int (min(b, w) - min(a, w)) on [0,1]
  double w_inverse(double y) const;          // sup{s : w(s) > y}
  double h_inverse(double target) const;     // sup{t : h(t) <= target}

  Distribution law_;
  GaugeFunction phi_;
  double eps_;
  double F0_ = 0.0;
  double K_ = 0.0;
  std::vector<double> s_grid_, y_grid_, t_grid_;
  std::vector<Bracket> brackets_;
};

/// Greedy left-to-right construction: the s-grid keeps h increments <= eps/2,
/// K has negative-side tail phi-moment <= eps/2, and the y-grid keeps each band
/// integral of w <= eps/2. The positive half-line is handled by reflecting the
/// marginal and the gauge. Throws NotInClassError for an infinite phi-moment.
BracketFamily build_brackets(const Distribution& marginal, const GaugeFunction& phi, double eps,
                             HalfLine side = HalfLine::negative);

}  // namespace mixrobust
