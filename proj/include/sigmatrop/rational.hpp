#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigmatrop {

using Integer = mpz_class;
using Rational = mpq_class;
using RVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

/// Thrown when operands live in spaces of different rank.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested combination of inputs is outside what the library decides.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A desk-scale guard (size, degree, enumeration count) was exceeded.
class ScaleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational number or +infinity.  Used for valuations (v(0) = +inf) and for
/// minima over empty supports.
class Extended {
 public:
  Extended() = default;  // +infinity
  Extended(const Rational& v) : finite_(true), value_(v) {}  // NOLINT(implicit)
  Extended(long v) : finite_(true), value_(v) {}              // NOLINT(implicit)

  static Extended infinity() { return Extended(); }

  bool is_infinite() const { return !finite_; }
  bool is_finite() const { return finite_; }
  const Rational& value() const;

  friend bool operator==(const Extended& a, const Extended& b);
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);
  friend Extended operator+(const Extended& a, const Extended& b);
  friend Extended operator*(const Rational& k, const Extended& a);  // k >= 0
  friend std::ostream& operator<<(std::ostream& os, const Extended& e);

  std::string str() const;

 private:
  bool finite_ = false;
  Rational value_;
};

Extended min(const Extended& a, const Extended& b);

/// Parses "n", "-n", "n/d" (any sign placement on the numerator) into a
/// canonical rational.  Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "n" or "n/d" text form, the inverse of parse_rational.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational dot(const RVector& a, const RVector& b);
Rational dot(const RVector& a, const std::vector<std::int64_t>& b);

/// Scales a nonzero rational vector by a positive factor so that its entries
/// are coprime integers.  Throws std::invalid_argument on the zero vector.
ZVector primitive(const RVector& v);

RVector to_rational(const ZVector& v);
RVector to_rational(const std::vector<std::int64_t>& v);
std::vector<double> to_double(const RVector& v);

bool is_zero(const RVector& v);

/// Exact p^e for e >= 0 (p is an arbitrary integer), or 1/p^{-e} for e < 0.
Rational rational_power(const Rational& base, std::int64_t exponent);

}  // namespace sigmatrop
