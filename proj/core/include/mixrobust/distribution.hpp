#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mixrobust/extended_real.hpp"
#include "mixrobust/random.hpp"

namespace mixrobust {

struct Atom {
  double location;
  double weight;
};

/// A (possibly unbounded) interval of the real line with per-end openness.
/// Openness only matters for laws with atoms.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  static Interval all() { return {}; }
  bool contains(double x) const {
    return (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  }
};

class Distribution;

/// The empirical measure of a finite sample x_1..x_n. Keeps the observations
/// in their original order (the order matters to the quantile transform) and
/// a sorted copy for CDF queries.
class EmpiricalMeasure {
 public:
  /// Throws DomainError on an empty sample or non-finite observations.
  explicit EmpiricalMeasure(std::vector<double> sample);

  std::size_t size() const { return sample_.size(); }
  std::span<const double> sample() const { return sample_; }
  std::span<const double> sorted() const { return sorted_; }

  /// #{i : x_i <= y} / n.
  double cdf(double y) const;

  /// k-th order statistic, 1-based.
  double order_statistic(std::size_t k) const;

  /// The uniform finite-discrete law over the sample.
  Distribution law() const;

 private:
  std::vector<double> sample_;
  std::vector<double> sorted_;
};

/// A probability law on the real line, exposed through its CDF.
///
/// Value type; copies share the immutable atom table of discrete laws.
class Distribution {
 public:
  enum class Kind { point_mass, uniform, gaussian, finite_discrete, empirical };

  static Distribution point_mass(double location);
  static Distribution uniform(double lo, double hi);
  static Distribution gaussian(double mean, double sd);
  /// Weights must be nonnegative and sum to one within 1e-12; coincident
  /// locations are merged.
  static Distribution finite_discrete(std::vector<Atom> atoms);
  static Distribution empirical(std::span<const double> sample);

  Kind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == Kind::point_mass || kind_ == Kind::finite_discrete || kind_ == Kind::empirical; }

  /// F(y) = P(X <= y).
  double cdf(double y) const;
  /// F(y-) = P(X < y).
  double cdf_left(double y) const;
  /// P(X > y), computed without cancellation in the right tail.
  double sf(double y) const;
  /// P(X >= y).
  double sf_left(double y) const;
  /// Lebesgue density; zero for discrete laws.
  double pdf(double y) const;

  /// Lower quantile F^{-1}(t) = inf{y : F(y) >= t}, with inf(empty) = +inf
  /// and -inf for t <= 0.
  ExtendedReal quantile(double t) const;

  /// Sorted, merged atoms of a discrete law; empty for continuous laws.
  std::span<const Atom> atoms() const;
  /// Cumulative weights aligned with atoms(): F at each atom.
  std::span<const double> cumulative() const;

  /// Points where F jumps or has a kink (atoms, uniform endpoints).
  std::vector<double> breakpoints() const;

  /// Smallest interval holding all the mass; infinite ends for the Gaussian.
  Interval support() const;

  /// Integral of f over the interval w.r.t. this law. Exact summation for
  /// discrete laws; adaptive Gauss-Kronrod (tolerance 1e-10) for continuous
  /// laws, split at the optional knots where f is not smooth.
  double expect(const std::function<double(double)>& f, const Interval& region = Interval::all(),
                std::span<const double> knots = {}) const;

  double mean() const;
  double second_moment() const;
  double variance() const { return second_moment() - mean() * mean(); }

  double sample(Rng& rng) const;
  void sample(Rng& rng, std::span<double> out) const;

  // Parameters of the parametric kinds.
  double gaussian_mean() const;
  double gaussian_sd() const;
  double uniform_lo() const;
  double uniform_hi() const;

  /// Compact JSON text, e.g. {"kind":"gaussian","mean":0,"sd":1}.
  std::string describe() const;

 private:
  struct Discrete {
    std::vector<Atom> atoms;
    std::vector<double> cumulative;
  };
  struct Uniform {
    double lo, hi;
  };
  struct Gaussian {
    double mean, sd;
  };

  Distribution(Kind kind, std::variant<std::shared_ptr<const Discrete>, Uniform, Gaussian> law)
      : kind_(kind), law_(std::move(law)) {}

  const Discrete& discrete() const { return *std::get<std::shared_ptr<const Discrete>>(law_); }

  Kind kind_;
  std::variant<std::shared_ptr<const Discrete>, Uniform, Gaussian> law_;
};

/// Lower quantile of a Distribution (closed forms / atom scan).
ExtendedReal left_inverse(const Distribution& law, double t);

/// inf{y in [lo, hi] : F(y) >= t} for a nondecreasing callable, by bisection
/// to the given absolute tolerance. Returns +inf when F(hi) < t and lo when
/// F(lo) >= t.
ExtendedReal left_inverse(const std::function<double(double)>& cdf, double t, double lo, double hi,
                          double tol = 1e-12);

/// sup{y >= 0 : H(y) > t} for H nonincreasing on [0, inf), with sup(empty) = 0.
/// The upper bracket is found by doubling from `hint`; returns +inf when H
/// stays above t.
ExtendedReal right_inverse(const std::function<double(double)>& survival, double t, double hint = 1.0,
                           double tol = 1e-12);

/// Right-continuous inverse of the survival function of |X|, X ~ law:
/// sup{y >= 0 : P(|X| > y) > t}. Exact for discrete and centred Gaussian laws.
ExtendedReal abs_upper_quantile(const Distribution& law, double t);

/// Quantile transformation: U_1..U_n with F^{-1}(U_i) = x_i. Atoms are
/// randomized uniformly over (F(x-), F(x)] from a stream seeded by `seed`.
/// Throws DomainError naming the first index with no mass under `marginal`.
std::vector<double> quantile_transform(const EmpiricalMeasure& sample, const Distribution& marginal,
                                       std::uint64_t seed);

}  // namespace mixrobust
