#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sigmatrop/rational.hpp"

namespace sigmatrop {

class UnknownCoefficientError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A valuation on the coefficients: trivial, p-adic, or an explicit table
/// (for injecting synthetic valuations in tests).  Values are rational or
/// +inf, and v(0) = +inf always.
class Valuation {
 public:
  struct Trivial {};
  struct PAdic {
    std::uint64_t p;
  };
  struct Table {
    std::map<Rational, Extended> values;
  };

  Valuation() : kind_(Trivial{}) {}
  static Valuation trivial() { return Valuation(); }
  /// Throws std::invalid_argument unless p is prime.
  static Valuation padic(std::uint64_t p);
  /// Throws std::invalid_argument if an entry violates v(1) = 0, v(0) = inf,
  /// or assigns inf to a nonzero element.
  static Valuation table(std::map<Rational, Extended> values);

  bool is_trivial() const { return std::holds_alternative<Trivial>(kind_); }
  bool is_padic() const { return std::holds_alternative<PAdic>(kind_); }
  bool is_table() const { return std::holds_alternative<Table>(kind_); }
  std::uint64_t prime() const;  // throws unless p-adic
  const Table& table_values() const;

  /// v(a).  Table lookups are extended by v(-a) = v(a), v(1/a) = -v(a),
  /// v(+-1) = 0, and products of two table entries; anything else throws
  /// UnknownCoefficientError.
  Extended value(const Rational& a) const;

  /// Samples v(ab) = v(a) + v(b) over table pairs whose product is also in
  /// the table.  Returns the offending pair description, or empty if none.
  std::string check_multiplicativity() const;

  std::string str() const;
  bool operator==(const Valuation& o) const;

 private:
  explicit Valuation(std::variant<Trivial, PAdic, Table> s) : kind_(std::move(s)) {}
  std::variant<Trivial, PAdic, Table> kind_;
};

/// Exponent of p in the nonzero integer z.
long padic_order(const Integer& z, std::uint64_t p);

struct NewtonSegment {
  Rational slope;
  std::int64_t length;  // horizontal length = number of roots with valuation -slope
};

struct NewtonPolygon {
  std::vector<std::pair<std::int64_t, Extended>> points;  // (degree, v(a_i))
  std::vector<std::pair<std::int64_t, Rational>> hull;    // lower hull vertices
  std::vector<NewtonSegment> segments;                    // slopes increasing

  /// Root valuations with multiplicity, ascending: a segment of slope s and
  /// length l contributes l roots of valuation -s.
  std::vector<Rational> root_valuations() const;
};

/// Newton polygon of sum coeffs[i] X^i.  Requires the lowest and highest
/// nonzero coefficients to exist; throws std::invalid_argument on all-zero input.
NewtonPolygon newton_polygon(const RVector& coeffs, const Valuation& v);

/// Primes dividing any numerator or denominator.  Throws on a zero entry.
std::set<std::uint64_t> prime_support(const RVector& values);

/// Prime factorization of |z| (z nonzero); trial division then Pollard rho.
std::map<Integer, unsigned> factorize(const Integer& z);

}  // namespace sigmatrop
