#pragma once

// Laurent polynomials over Z, Q and F_p, characters of Z^n, and the
// character-graded pieces of a polynomial.
//
// Convention used everywhere in the library: the initial part of f with
// respect to a character chi collects the terms whose monomials MINIMIZE
// chi, and v_chi(f) is that minimum (+inf for f = 0).

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sigmatrop/rational.hpp"

namespace sigmatrop {

/// Exponent vector of a group element of Z^n.
struct Monomial {
  std::vector<std::int64_t> exps;

  Monomial() = default;
  explicit Monomial(std::vector<std::int64_t> e) : exps(std::move(e)) {}
  Monomial(std::initializer_list<std::int64_t> e) : exps(e) {}

  static Monomial zero(std::size_t rank) { return Monomial(std::vector<std::int64_t>(rank, 0)); }
  static Monomial unit(std::size_t rank, std::size_t i, std::int64_t e = 1);

  std::size_t rank() const { return exps.size(); }
  bool is_zero() const;
  double length() const;
  Integer squared_length() const;

  Monomial operator+(const Monomial& o) const;
  Monomial operator-(const Monomial& o) const;
  Monomial operator-() const;
  Monomial scaled(std::int64_t k) const;

  auto operator<=>(const Monomial&) const = default;
};

enum class DomainKind { Integers, Rationals, PrimeField };

struct CoefficientDomain {
  DomainKind kind = DomainKind::Rationals;
  std::uint64_t p = 0;  // only for PrimeField

  static CoefficientDomain integers() { return {DomainKind::Integers, 0}; }
  static CoefficientDomain rationals() { return {DomainKind::Rationals, 0}; }
  /// Throws std::invalid_argument unless p is prime.
  static CoefficientDomain prime_field(std::uint64_t p);

  bool is_field() const { return kind != DomainKind::Integers; }
  /// Canonical representative: reduces mod p, rejects non-integers over Z.
  Rational normalize(const Rational& c) const;
  /// Multiplicative inverse inside the domain (units only over Z).
  Rational inverse(const Rational& c) const;
  std::string name() const;

  bool operator==(const CoefficientDomain&) const = default;
};

/// Finite sum of c_g x^g with g in Z^n.  Never stores a zero coefficient.
class LaurentPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit LaurentPoly(std::size_t rank = 0, CoefficientDomain domain = CoefficientDomain::rationals());

  static LaurentPoly constant(std::size_t rank, const Rational& c,
                              CoefficientDomain domain = CoefficientDomain::rationals());
  static LaurentPoly monomial(const Monomial& g, const Rational& c = 1,
                              CoefficientDomain domain = CoefficientDomain::rationals());
  static LaurentPoly variable(std::size_t rank, std::size_t i,
                              CoefficientDomain domain = CoefficientDomain::rationals());

  std::size_t rank() const { return rank_; }
  const CoefficientDomain& domain() const { return domain_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  Rational coefficient(const Monomial& g) const;
  void add_term(const Monomial& g, const Rational& c);

  /// Same polynomial regarded over another domain (coefficients normalized).
  LaurentPoly with_domain(CoefficientDomain d) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly shifted(const Monomial& g) const;  // x^g * f
  LaurentPoly pow(unsigned e) const;

  bool operator==(const LaurentPoly& o) const;

 private:
  void check_compatible(const LaurentPoly& o) const;

  std::size_t rank_;
  CoefficientDomain domain_;
  Terms terms_;
};

/// Parses expressions such as "x + y + 1", "1 - 36*x^-2", "2*x*y^3 - 1/2".
/// Variables are x, y, z, w for rank <= 4, otherwise x1..xn.
LaurentPoly parse_laurent(std::string_view text, std::size_t rank,
                          CoefficientDomain domain = CoefficientDomain::rationals());
std::string to_string(const LaurentPoly& f);
std::ostream& operator<<(std::ostream& os, const LaurentPoly& f);
std::string variable_name(std::size_t rank, std::size_t i);

/// A homomorphism Z^n -> R with rational values on the standard basis.
struct Character {
  RVector values;

  Character() = default;
  explicit Character(RVector v) : values(std::move(v)) {}
  Character(std::initializer_list<Rational> v) : values(v) {}

  std::size_t rank() const { return values.size(); }
  bool is_zero() const { return sigmatrop::is_zero(values); }
  Character operator-() const;
  bool operator==(const Character&) const = default;
};

/// Primitive integer representative of the ray class R_{>0} chi.
struct Direction {
  ZVector coords;

  Direction() = default;
  explicit Direction(ZVector c);
  Direction(std::initializer_list<long> c);
  static Direction of(const Character& chi);
  static Direction of(const RVector& v);

  std::size_t rank() const { return coords.size(); }
  Character character() const;
  RVector vector() const { return to_rational(coords); }
  std::vector<double> unit() const;
  Direction operator-() const;
  std::string str() const;

  auto operator<=>(const Direction& o) const { return coords <=> o.coords; }
  bool operator==(const Direction& o) const { return coords == o.coords; }
};

Rational chi_value(const Character& chi, const Monomial& g);
Extended v_chi(const Character& chi, const LaurentPoly& f);
LaurentPoly initial_part(const Character& chi, const LaurentPoly& f);

struct Grade {
  Rational value;
  LaurentPoly component;
};
/// Decomposition f = sum of chi-homogeneous components, values increasing.
std::vector<Grade> grading(const Character& chi, const LaurentPoly& f);

}  // namespace sigmatrop
