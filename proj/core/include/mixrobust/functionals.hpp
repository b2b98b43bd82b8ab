#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixrobust/distribution.hpp"

namespace mixrobust {

/// Two aligned real sequences: a sample of pairs (x_i, y_i).
struct PairedSample {
  std::vector<double> first;
  std::vector<double> second;

  /// Throws DomainError on empty or misaligned input.
  PairedSample(std::vector<double> x, std::vector<double> y);
  std::size_t size() const { return first.size(); }
};

/// Statistical functionals T and their plug-in estimators T(empirical law).
class Functional {
 public:
  enum class Kind { mean, second_moment, variance, lower_quantile, covariance };

  /// "mean", "second-moment", "variance", "quantile:<alpha>", "covariance".
  /// Throws ConfigError.
  static Functional parse(std::string_view descriptor);
  static Functional mean() { return Functional(Kind::mean, 0.0); }
  static Functional second_moment() { return Functional(Kind::second_moment, 0.0); }
  static Functional variance() { return Functional(Kind::variance, 0.0); }
  /// alpha in (0, 1), else ParameterError.
  static Functional lower_quantile(double alpha);
  static Functional covariance() { return Functional(Kind::covariance, 0.0); }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string descriptor() const;

  /// Real-valued functionals of a law on the line. Covariance needs pairs and
  /// throws DomainError here; non-finite moments throw NotInClassError.
  double evaluate(const Distribution& mu) const;
  double evaluate(const EmpiricalMeasure& mu) const;
  /// Covariance only (with the empirical marginal means); variance uses divisor n.
  double evaluate(const PairedSample& pairs) const;

  /// T of the empirical law of the sample. Throws DomainError on empty input.
  double plugin(std::span<const double> sample) const;
  double plugin(const PairedSample& pairs) const { return evaluate(pairs); }

 private:
  Functional(Kind k, double a) : kind_(k), alpha_(a) {}

  Kind kind_;
  double alpha_;
};

}  // namespace mixrobust
