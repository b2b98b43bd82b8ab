#pragma once

#include <compare>
#include <ostream>

#include "mixrobust/errors.hpp"

namespace mixrobust {

/// A real number or one of the two infinities.
///
/// Generalized inverses follow the conventions inf(empty) = +inf and
/// F^{-1}(0) = -inf. Infinity is a distinct state, never a large double.
class ExtendedReal {
 public:
  enum class State { finite, neg_infinity, pos_infinity };

  constexpr ExtendedReal(double v = 0.0) : value_(v), state_(State::finite) {}  // NOLINT

  static constexpr ExtendedReal pos_infinity() { return ExtendedReal(State::pos_infinity); }
  static constexpr ExtendedReal neg_infinity() { return ExtendedReal(State::neg_infinity); }

  constexpr State state() const { return state_; }
  constexpr bool is_finite() const { return state_ == State::finite; }
  constexpr bool is_pos_infinity() const { return state_ == State::pos_infinity; }
  constexpr bool is_neg_infinity() const { return state_ == State::neg_infinity; }

  /// The finite value; throws when called on an infinity.
  double value() const {
    if (state_ != State::finite) throw DomainError("ExtendedReal: value() of an infinite quantity");
    return value_;
  }

  /// Maps the infinities to the IEEE infinities, for arithmetic at the edges.
  double to_double() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.state_ == b.state_ && (a.state_ != State::finite || a.value_ == b.value_);
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    return a.to_double() <=> b.to_double();
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

 private:
  constexpr explicit ExtendedReal(State s) : value_(0.0), state_(s) {}

  double value_;
  State state_;
};

}  // namespace mixrobust
