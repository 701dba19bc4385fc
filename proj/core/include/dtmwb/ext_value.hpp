#pragma once

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dtmwb {

using Rational = mpq_class;

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DTMWB_DECLARE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

DTMWB_DECLARE_ERROR(UndefinedSum);
DTMWB_DECLARE_ERROR(UndefinedSubtraction);
DTMWB_DECLARE_ERROR(MixedInfinities);
DTMWB_DECLARE_ERROR(ParseError);
DTMWB_DECLARE_ERROR(MalformedLattice);
DTMWB_DECLARE_ERROR(HypothesisViolated);
DTMWB_DECLARE_ERROR(OrderViolated);
DTMWB_DECLARE_ERROR(InfiniteValue);
DTMWB_DECLARE_ERROR(NormInfinite);
DTMWB_DECLARE_ERROR(BadMarkedCells);
DTMWB_DECLARE_ERROR(NegativeWeight);
DTMWB_DECLARE_ERROR(BudgetExceeded);

#undef DTMWB_DECLARE_ERROR

/// Parses "3", "-1/4", "0.5" is rejected (decimals are not exact input).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; integers print without the denominator.
std::string to_string(const Rational& q);

/// An exact rational extended by +inf and -inf.
///
/// Finite values are always kept canonical (gcd 1, positive denominator).
/// Adding +inf to -inf throws UndefinedSum instead of producing a value.
class ExtValue {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  ExtValue() = default;
  ExtValue(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtValue(int v) : value_(v) {}   // NOLINT(google-explicit-constructor)
  ExtValue(Rational v);            // NOLINT(google-explicit-constructor)
  ExtValue(long num, long den);

  static ExtValue inf() { return ExtValue(Kind::pos_inf); }
  static ExtValue neg_inf() { return ExtValue(Kind::neg_inf); }
  static ExtValue parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  bool is_zero() const { return is_finite() && sgn(value_) == 0; }
  int sign() const;

  /// Finite payload; throws InfiniteValue when not finite.
  const Rational& value() const;

  ExtValue operator-() const;
  ExtValue abs() const;

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b);
  /// a - b; throws UndefinedSubtraction for inf - inf.
  friend ExtValue operator-(const ExtValue& a, const ExtValue& b);
  /// Scalar product; 0 * inf is taken to be 0.
  friend ExtValue operator*(const Rational& s, const ExtValue& a);

  ExtValue& operator+=(const ExtValue& o) { return *this = *this + o; }

  friend bool operator==(const ExtValue& a, const ExtValue& b);
  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b);

  std::string str() const;

 private:
  explicit ExtValue(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  Rational value_ = 0;
};

ExtValue min(const ExtValue& a, const ExtValue& b);
ExtValue max(const ExtValue& a, const ExtValue& b);

std::ostream& operator<<(std::ostream& os, const ExtValue& v);

}  // namespace dtmwb
