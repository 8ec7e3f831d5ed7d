#include "sigmatrop/valuation.hpp"

#include <algorithm>

namespace sigmatrop {

Valuation Valuation::padic(std::uint64_t p) {
  Integer z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("padic: " + std::to_string(p) + " is not prime");
  return Valuation(PAdic{p});
}

Valuation Valuation::table(std::map<Rational, Extended> values) {
  for (const auto& [a, v] : values) {
    if (sgn(a) == 0 && v.is_finite()) throw std::invalid_argument("table valuation: v(0) must be inf");
    if (sgn(a) != 0 && v.is_infinite()) throw std::invalid_argument("table valuation: inf on nonzero " + to_string(a));
    if (abs(a) == 1 && v != Extended(0)) throw std::invalid_argument("table valuation: v(+-1) must be 0");
  }
  return Valuation(Table{std::move(values)});
}

std::uint64_t Valuation::prime() const {
  if (!is_padic()) throw std::logic_error("prime() of a non-p-adic valuation");
  return std::get<PAdic>(kind_).p;
}

const Valuation::Table& Valuation::table_values() const { return std::get<Table>(kind_); }

long padic_order(const Integer& z, std::uint64_t p) {
  if (z == 0) throw std::domain_error("padic_order of zero");
  Integer rest = z;
  const Integer pz(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

Extended Valuation::value(const Rational& a) const {
  if (sgn(a) == 0) return Extended::infinity();
  if (is_trivial()) return Extended(0);
  if (is_padic()) {
    const auto p = prime();
    return Extended(Rational(padic_order(a.get_num(), p) - padic_order(a.get_den(), p)));
  }
  const auto& t = table_values().values;
  auto lookup = [&](const Rational& q) -> const Extended* {
    auto it = t.find(q);
    return it == t.end() ? nullptr : &it->second;
  };
  if (abs(a) == 1) return Extended(0);
  for (const Rational& q : {a, Rational(-a)}) {
    if (const auto* v = lookup(q)) return *v;
    if (const auto* v = lookup(Rational(1 / q))) return Extended(Rational(-v->value()));
  }
  for (const auto& [b, vb] : t) {
    if (sgn(b) == 0) continue;
    const Rational rest = a / b;
    for (const Rational& q : {rest, Rational(-rest)})
      if (const auto* vc = lookup(q)) return vb + *vc;
  }
  throw UnknownCoefficientError("table valuation has no value for " + to_string(a));
}

std::string Valuation::check_multiplicativity() const {
  if (!is_table()) return {};
  const auto& t = table_values().values;
  for (const auto& [a, va] : t)
    for (const auto& [b, vb] : t) {
      auto it = t.find(Rational(a * b));
      if (it != t.end() && it->second != va + vb)
        return "v(" + to_string(a) + "*" + to_string(b) + ") != v(" + to_string(a) + ") + v(" + to_string(b) + ")";
    }
  return {};
}

std::string Valuation::str() const {
  if (is_trivial()) return "trivial";
  if (is_padic()) return std::to_string(prime()) + "-adic";
  return "table";
}

bool Valuation::operator==(const Valuation& o) const {
  if (kind_.index() != o.kind_.index()) return false;
  if (is_padic()) return prime() == o.prime();
  if (is_table()) return table_values().values == o.table_values().values;
  return true;
}

// ---------------------------------------------------------- Newton polygon

std::vector<Rational> NewtonPolygon::root_valuations() const {
  std::vector<Rational> out;
  for (const auto& s : segments)
    for (std::int64_t i = 0; i < s.length; ++i) out.push_back(-s.slope);
  std::sort(out.begin(), out.end());
  return out;
}

NewtonPolygon newton_polygon(const RVector& coeffs, const Valuation& v) {
  NewtonPolygon np;
  std::vector<std::pair<std::int64_t, Rational>> finite;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Extended val = v.value(coeffs[i]);
    np.points.emplace_back(static_cast<std::int64_t>(i), val);
    if (val.is_finite()) finite.emplace_back(static_cast<std::int64_t>(i), val.value());
  }
  if (finite.empty()) throw std::invalid_argument("newton_polygon: zero polynomial");

  // Lower convex hull by the monotone chain; points are already sorted by degree.
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return Rational((a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first));
  };
  for (const auto& pt : finite) {
    while (np.hull.size() >= 2 && sgn(cross(np.hull[np.hull.size() - 2], np.hull.back(), pt)) <= 0)
      np.hull.pop_back();
    np.hull.push_back(pt);
  }
  for (std::size_t i = 1; i < np.hull.size(); ++i) {
    const auto dx = np.hull[i].first - np.hull[i - 1].first;
    np.segments.push_back({Rational(np.hull[i].second - np.hull[i - 1].second) / Rational(static_cast<long>(dx)), dx});
  }
  return np;
}

// ------------------------------------------------------------ factoring

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const Integer& v) {
      Integer w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer d = abs(x - y);
          q = (q * d) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    ++out[n];
    return;
  }
  const Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

std::map<Integer, unsigned> factorize(const Integer& z) {
  if (z == 0) throw std::domain_error("factorize: zero");
  std::map<Integer, unsigned> out;
  Integer n = abs(z);
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  factor_into(n, out);
  return out;
}

std::set<std::uint64_t> prime_support(const RVector& values) {
  std::set<std::uint64_t> primes;
  for (const auto& q : values) {
    if (sgn(q) == 0) throw std::invalid_argument("prime_support: zero entry");
    for (const Integer* part : {&q.get_num(), &q.get_den()})
      for (const auto& [p, e] : factorize(*part)) {
        if (!p.fits_ulong_p()) throw std::overflow_error("prime_support: prime exceeds 64 bits");
        primes.insert(p.get_ui());
      }
  }
  return primes;
}

}  // namespace sigmatrop
