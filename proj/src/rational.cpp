#include "sigmatrop/rational.hpp"

#include <algorithm>
#include <cctype>

namespace sigmatrop {

const Rational& Extended::value() const {
  if (!finite_) throw std::logic_error("value() of +infinity");
  return value_;
}

bool operator==(const Extended& a, const Extended& b) {
  if (a.finite_ != b.finite_) return false;
  return !a.finite_ || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
  if (!a.finite_ || !b.finite_) {
    if (a.finite_ == b.finite_) return std::strong_ordering::equal;
    return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Extended operator+(const Extended& a, const Extended& b) {
  if (!a.finite_ || !b.finite_) return Extended::infinity();
  return Extended(Rational(a.value_ + b.value_));
}

Extended operator*(const Rational& k, const Extended& a) {
  if (sgn(k) < 0) throw std::invalid_argument("negative scale of an extended value");
  if (!a.finite_) return a;
  return Extended(Rational(k * a.value_));
}

std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.str(); }

std::string Extended::str() const { return finite_ ? to_string(value_) : std::string("inf"); }

Extended min(const Extended& a, const Extended& b) { return (b < a) ? b : a; }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational: " + s);
  Integer n(num[0] == '+' ? num.substr(1) : num);
  Integer d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational dot(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RVector& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) s += a[i] * Rational(static_cast<long>(b[i]));
  return s;
}

ZVector primitive(const RVector& v) {
  if (is_zero(v)) throw std::invalid_argument("primitive: zero vector");
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  ZVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer z = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(z);
  }
  for (auto& z : out) z /= g;
  return out;
}

RVector to_rational(const ZVector& v) { return RVector(v.begin(), v.end()); }

RVector to_rational(const std::vector<std::int64_t>& v) {
  RVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::vector<double> to_double(const RVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational rational_power(const Rational& base, std::int64_t exponent) {
  if (exponent == 0) return 1;
  if (sgn(base) == 0) {
    if (exponent < 0) throw std::domain_error("negative power of zero");
    return 0;
  }
  const auto e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

}  // namespace sigmatrop
