#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixrobust/distribution.hpp"

namespace mixrobust {

/// A weight function on the real line.
///
/// Two roles share the type: the u-shaped weight phi of the weighted
/// Kolmogorov metric (continuous, >= 1, nonincreasing left of 0, nondecreasing
/// right of 0) and the gauge psi of the psi-weak topology (continuous, >= 0,
/// >= 1 outside a compact set). Every gauge here is nonincreasing on
/// (-inf, 0] and nondecreasing on [0, inf), which makes its level sets two
/// half-lines.
///
/// Descriptors: "one", "power:p" for (1+|y|)^p, "abs" for |y|, "square" for y^2.
class GaugeFunction {
 public:
  enum class Role { u_shaped_phi, psi_gauge };

  /// Throws ConfigError on an unknown descriptor or one invalid for the role
  /// ("abs" and "square" are not u-shaped).
  static GaugeFunction parse(std::string_view descriptor, Role role);

  static GaugeFunction one(Role role = Role::u_shaped_phi);
  static GaugeFunction power(double p, Role role = Role::u_shaped_phi);
  static GaugeFunction abs_value();
  static GaugeFunction square();
  /// User-supplied gauge; `f` must have the monotone-halves shape above.
  static GaugeFunction custom(Role role, std::function<double(double)> f, std::string descriptor);

  double operator()(double y) const { return eval_(y); }

  Role role() const { return role_; }
  const std::string& descriptor() const { return descriptor_; }
  bool is_constant() const { return kind_ == Kind::one; }
  /// g(-y) == g(y); true for every built-in gauge.
  bool is_symmetric() const { return kind_ != Kind::custom; }
  /// sup of the gauge when it is bounded.
  std::optional<double> bound() const;

  /// The set {g >= level} (or {g > level} when strict), split at 0 into a
  /// left part in (-inf, 0] and a right part in (0, inf). An empty part is
  /// returned as nullopt.
  struct TailRegion {
    std::optional<Interval> left;
    std::optional<Interval> right;
  };
  TailRegion tail_region(double level, bool strict = false) const;

  /// Evaluates the role's shape conditions on the grid; throws
  /// InvariantViolation naming the first failing point.
  void check_invariants(std::span<const double> grid) const;

 private:
  enum class Kind { one, power, abs, square, custom };

  GaugeFunction(Kind kind, Role role, double p, std::function<double(double)> f, std::string descriptor)
      : kind_(kind), role_(role), exponent_(p), eval_(std::move(f)), descriptor_(std::move(descriptor)) {}

  // inf{r >= 0 : g(r) >= level} for the symmetric built-ins.
  double radius(double level) const;

  Kind kind_;
  Role role_;
  double exponent_;
  std::function<double(double)> eval_;
  std::string descriptor_;
};

/// A countable family f_1, f_2, ... of compactly supported continuous
/// functions, truncated at k_max, used by the vague metric.
///
/// The standard family enumerates blocks b = 0, 1, 2, ...: a plateau e_{b+1}
/// (1 on [-(b+1), b+1], 0 outside [-(b+2), b+2], linear between) followed by
/// the nine triangle bumps max(0, 1 - |x - c|/w) centred at c = z(b)/2 with
/// widths w = 2^-2 .. 2^6, where z enumerates the integers 0, 1, -1, 2, -2, ...
class DenseFamily {
 public:
  struct Member {
    enum class Shape { bump, plateau };
    Shape shape;
    double center;
    double width;  // bump half-width, or plateau half-length of the flat part

    double operator()(double x) const;
    Interval support() const;
    /// Points where the function is not differentiable.
    std::vector<double> knots() const;
  };

  static DenseFamily standard(std::size_t k_max = 40);

  std::size_t k_max() const { return members_.size(); }
  /// f_{k+1}; 0-based.
  const Member& operator[](std::size_t k) const { return members_.at(k); }
  std::span<const Member> members() const { return members_; }
  /// Upper bound on the value of the omitted series tail.
  double truncation_bound() const;
  const std::string& descriptor() const { return descriptor_; }

 private:
  std::vector<Member> members_;
  std::string descriptor_;
};

}  // namespace mixrobust
