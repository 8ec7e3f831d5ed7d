#include "sigmatrop/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace sigmatrop {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::unit(std::size_t rank, std::size_t i, std::int64_t e) {
  Monomial m = zero(rank);
  m.exps.at(i) = e;
  return m;
}

bool Monomial::is_zero() const {
  return std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; });
}

Integer Monomial::squared_length() const {
  Integer s = 0;
  for (auto e : exps) s += Integer(static_cast<long>(e)) * Integer(static_cast<long>(e));
  return s;
}

double Monomial::length() const { return std::sqrt(squared_length().get_d()); }

Monomial Monomial::operator+(const Monomial& o) const {
  if (rank() != o.rank()) throw DimensionError("monomial rank mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
  return r;
}

Monomial Monomial::operator-(const Monomial& o) const { return *this + (-o); }

Monomial Monomial::operator-() const { return scaled(-1); }

Monomial Monomial::scaled(std::int64_t k) const {
  Monomial r = *this;
  for (auto& e : r.exps) e *= k;
  return r;
}

// ------------------------------------------------------- CoefficientDomain

CoefficientDomain CoefficientDomain::prime_field(std::uint64_t p) {
  Integer z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
  return {DomainKind::PrimeField, p};
}

Rational CoefficientDomain::normalize(const Rational& c) const {
  switch (kind) {
    case DomainKind::Rationals:
      return c;
    case DomainKind::Integers:
      if (c.get_den() != 1) throw std::invalid_argument("non-integer coefficient over Z: " + to_string(c));
      return c;
    case DomainKind::PrimeField: {
      const Integer pz(static_cast<unsigned long>(p));
      Integer den_inv;
      if (mpz_invert(den_inv.get_mpz_t(), c.get_den_mpz_t(), pz.get_mpz_t()) == 0)
        throw std::invalid_argument("denominator divisible by the characteristic");
      Integer r = c.get_num() * den_inv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
      return Rational(r);
    }
  }
  return c;
}

Rational CoefficientDomain::inverse(const Rational& c) const {
  if (sgn(c) == 0) throw std::domain_error("inverse of zero");
  switch (kind) {
    case DomainKind::Rationals:
      return Rational(1) / c;
    case DomainKind::Integers:
      if (abs(c) != 1) throw std::domain_error("not a unit in Z: " + to_string(c));
      return c;
    case DomainKind::PrimeField:
      return normalize(Rational(1) / normalize(c));
  }
  return c;
}

std::string CoefficientDomain::name() const {
  switch (kind) {
    case DomainKind::Integers:
      return "ZZ";
    case DomainKind::Rationals:
      return "QQ";
    case DomainKind::PrimeField:
      return "GF(" + std::to_string(p) + ")";
  }
  return "?";
}

// ------------------------------------------------------------ LaurentPoly

LaurentPoly::LaurentPoly(std::size_t rank, CoefficientDomain domain) : rank_(rank), domain_(domain) {}

LaurentPoly LaurentPoly::constant(std::size_t rank, const Rational& c, CoefficientDomain domain) {
  LaurentPoly f(rank, domain);
  f.add_term(Monomial::zero(rank), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(const Monomial& g, const Rational& c, CoefficientDomain domain) {
  LaurentPoly f(g.rank(), domain);
  f.add_term(g, c);
  return f;
}

LaurentPoly LaurentPoly::variable(std::size_t rank, std::size_t i, CoefficientDomain domain) {
  return monomial(Monomial::unit(rank, i), 1, domain);
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_zero() && terms_.begin()->second == 1;
}

Rational LaurentPoly::coefficient(const Monomial& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Monomial& g, const Rational& c) {
  if (g.rank() != rank_) throw DimensionError("add_term: monomial rank mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, 0);
  it->second = domain_.normalize(it->second + c);
  if (sgn(it->second) == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::with_domain(CoefficientDomain d) const {
  LaurentPoly r(rank_, d);
  for (const auto& [g, c] : terms_) r.add_term(g, c);
  return r;
}

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
  if (rank_ != o.rank_) throw DimensionError("polynomial rank mismatch");
  if (!(domain_ == o.domain_)) throw std::invalid_argument("polynomial domain mismatch");
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_compatible(o);
  LaurentPoly r(rank_, domain_);
  for (const auto& [g, c] : terms_)
    for (const auto& [h, d] : o.terms_) r.add_term(g + h, c * d);
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly r(rank_, domain_);
  for (const auto& [g, d] : terms_) r.add_term(g, c * d);
  return r;
}

LaurentPoly LaurentPoly::shifted(const Monomial& g) const {
  LaurentPoly r(rank_, domain_);
  for (const auto& [h, d] : terms_) r.terms_.emplace(h + g, d);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(rank_, 1, domain_);
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return rank_ == o.rank_ && domain_ == o.domain_ && terms_ == o.terms_;
}

// ---------------------------------------------------------- text format

std::string variable_name(std::size_t rank, std::size_t i) {
  static const char* short_names[] = {"x", "y", "z", "w"};
  if (rank <= 4) return short_names[i];
  return "x" + std::to_string(i + 1);
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t rank, CoefficientDomain domain)
      : text_(text), rank_(rank), domain_(domain) {}

  LaurentPoly parse() {
    LaurentPoly f(rank_, domain_);
    skip_ws();
    if (at_end()) throw error("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      auto [g, c] = parse_term();
      f.add_term(g, sign * c);
      first = false;
      skip_ws();
    }
    return f;
  }

 private:
  std::pair<Monomial, Rational> parse_term() {
    Monomial g = Monomial::zero(rank_);
    Rational c = 1;
    while (true) {
      skip_ws();
      if (at_end()) throw error("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        const std::size_t var = parse_variable();
        std::int64_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = parse_signed_int();
        }
        g.exps[var] += e;
      } else {
        throw error("unexpected character");
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      return {g, c};
    }
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '/') {
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) throw error("bad fraction");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    return parse_rational(text_.substr(start, pos_ - start));
  }

  std::int64_t parse_signed_int() {
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw error("expected exponent");
    const std::int64_t v = std::stoll(std::string(text_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  std::size_t parse_variable() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < rank_; ++i)
      if (variable_name(rank_, i) == name) return i;
    throw error("unknown variable '" + name + "'");
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument("parse_laurent: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                 std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t rank_;
  CoefficientDomain domain_;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, std::size_t rank, CoefficientDomain domain) {
  return PolyParser(text, rank, domain).parse();
}

std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : f.terms()) {
    const Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (a != 1 || g.is_zero()) {
      os << to_string(a);
      wrote = true;
    }
    for (std::size_t i = 0; i < g.rank(); ++i) {
      if (g.exps[i] == 0) continue;
      if (wrote) os << "*";
      os << variable_name(f.rank(), i);
      if (g.exps[i] != 1) os << "^" << g.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << to_string(f); }

// ------------------------------------------------- characters, directions

Character Character::operator-() const {
  Character r = *this;
  for (auto& v : r.values) v = -v;
  return r;
}

Direction::Direction(ZVector c) : coords(std::move(c)) {
  Integer g = 0;
  for (const auto& z : coords) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  if (g == 0) throw std::invalid_argument("Direction: zero vector");
  if (g != 1)
    for (auto& z : coords) z /= g;
}

Direction::Direction(std::initializer_list<long> c) : Direction(ZVector(c.begin(), c.end())) {}

Direction Direction::of(const Character& chi) { return Direction(primitive(chi.values)); }

Direction Direction::of(const RVector& v) { return Direction(primitive(v)); }

Character Direction::character() const { return Character(vector()); }

std::vector<double> Direction::unit() const {
  std::vector<double> u;
  double n2 = 0;
  for (const auto& z : coords) {
    u.push_back(z.get_d());
    n2 += u.back() * u.back();
  }
  const double n = std::sqrt(n2);
  for (auto& x : u) x /= n;
  return u;
}

Direction Direction::operator-() const {
  Direction d = *this;
  for (auto& z : d.coords) z = -z;
  return d;
}

std::string Direction::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].get_str();
  return s + ")";
}

// --------------------------------------------------- character evaluation

Rational chi_value(const Character& chi, const Monomial& g) {
  if (chi.rank() != g.rank()) throw DimensionError("chi_value: rank mismatch");
  return dot(chi.values, g.exps);
}

Extended v_chi(const Character& chi, const LaurentPoly& f) {
  if (chi.rank() != f.rank()) throw DimensionError("v_chi: rank mismatch");
  Extended best = Extended::infinity();
  for (const auto& [g, c] : f.terms()) best = min(best, Extended(chi_value(chi, g)));
  return best;
}

LaurentPoly initial_part(const Character& chi, const LaurentPoly& f) {
  const Extended m = v_chi(chi, f);
  LaurentPoly r(f.rank(), f.domain());
  if (m.is_infinite()) return r;
  for (const auto& [g, c] : f.terms())
    if (chi_value(chi, g) == m.value()) r.add_term(g, c);
  return r;
}

std::vector<Grade> grading(const Character& chi, const LaurentPoly& f) {
  if (chi.rank() != f.rank()) throw DimensionError("grading: rank mismatch");
  std::map<Rational, LaurentPoly> parts;
  for (const auto& [g, c] : f.terms()) {
    auto [it, _] = parts.try_emplace(chi_value(chi, g), LaurentPoly(f.rank(), f.domain()));
    it->second.add_term(g, c);
  }
  std::vector<Grade> out;
  out.reserve(parts.size());
  for (auto& [v, p] : parts) out.push_back({v, std::move(p)});
  return out;
}

}  // namespace sigmatrop
