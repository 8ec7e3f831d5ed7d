#include "sigmatrop/ideal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace sigmatrop {

namespace {

using Exp = std::vector<std::int64_t>;

std::int64_t degree(const Exp& e) { return std::accumulate(e.begin(), e.end(), std::int64_t{0}); }

// a > b in graded reverse lexicographic order.
bool grevlex_greater(const Exp& a, const Exp& b) {
  const auto da = degree(a), db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct Greater {
  bool operator()(const Exp& a, const Exp& b) const { return grevlex_greater(a, b); }
};

// Polynomial with terms in decreasing grevlex order.
using Poly = std::map<Exp, Rational, Greater>;

struct Field {
  CoefficientDomain d;
  Rational norm(const Rational& c) const { return d.normalize(c); }
  Rational inv(const Rational& c) const { return d.inverse(c); }
};

void add_scaled(Poly& acc, const Poly& f, const Rational& c, const Exp& shift, const Field& k) {
  for (const auto& [e, a] : f) {
    Exp s = e;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
    auto [it, inserted] = acc.try_emplace(std::move(s), 0);
    it->second = k.norm(it->second + c * a);
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

void make_monic(Poly& f, const Field& k) {
  if (f.empty()) return;
  const Rational inv = k.inv(f.begin()->second);
  for (auto& [e, a] : f) a = k.norm(a * inv);
}

bool divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp lcm(const Exp& a, const Exp& b) {
  Exp out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// Full reduction of f modulo the monic basis g.
Poly reduce(Poly f, const std::vector<Poly>& g, const Field& k) {
  Poly rem;
  while (!f.empty()) {
    const auto lead = f.begin();
    bool reduced = false;
    for (const auto& q : g) {
      const Exp& lq = q.begin()->first;
      if (!divides(lq, lead->first)) continue;
      Exp shift(lq.size());
      for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lead->first[i] - lq[i];
      const Rational c = -lead->second;
      add_scaled(f, q, c, shift, k);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.insert(*lead);
      f.erase(lead);
    }
  }
  return rem;
}

Poly s_poly(const Poly& a, const Poly& b, const Field& k) {
  const Exp& la = a.begin()->first;
  const Exp& lb = b.begin()->first;
  const Exp l = lcm(la, lb);
  Exp sa(l.size()), sb(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sa[i] = l[i] - la[i];
    sb[i] = l[i] - lb[i];
  }
  Poly out;
  add_scaled(out, a, 1, sa, k);
  add_scaled(out, b, -1, sb, k);
  return out;
}

std::vector<Poly> groebner(std::vector<Poly> gens, const Field& k, const GroebnerLimits& lim) {
  std::vector<Poly> g;
  for (auto& f : gens) {
    f = reduce(std::move(f), g, k);
    if (f.empty()) continue;
    make_monic(f, k);
    g.push_back(std::move(f));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  std::size_t processed = 0;
  while (!pairs.empty()) {
    if (++processed > lim.max_pairs) throw ScaleGuardError("ideal_membership: pair limit exceeded");
    // Normal selection strategy: smallest lcm in grevlex, ties by index.
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      const Exp a = lcm(g[it->first].begin()->first, g[it->second].begin()->first);
      const Exp b = lcm(g[best->first].begin()->first, g[best->second].begin()->first);
      if (grevlex_greater(b, a)) best = it;
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    if (coprime(g[i].begin()->first, g[j].begin()->first)) continue;
    Poly r = reduce(s_poly(g[i], g[j], k), g, k);
    if (r.empty()) continue;
    make_monic(r, k);
    if (g.size() >= lim.max_basis) throw ScaleGuardError("ideal_membership: basis size limit exceeded");
    g.push_back(std::move(r));
    for (std::size_t a = 0; a + 1 < g.size(); ++a) pairs.emplace_back(a, g.size() - 1);
  }
  return g;
}

// Laurent polynomial times the monomial clearing negative exponents, in
// `extra` additional trailing variables.
Poly cleared(const LaurentPoly& f, std::size_t extra, const Field& k) {
  const std::size_t n = f.rank();
  Exp lo(n, 0);
  bool first = true;
  for (const auto& [g, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) lo[i] = first ? g.exps[i] : std::min(lo[i], g.exps[i]);
    first = false;
  }
  Poly out;
  for (const auto& [g, c] : f.terms()) {
    Exp e(n + extra, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = g.exps[i] - lo[i];
    out.emplace(std::move(e), k.norm(c));
  }
  return out;
}

std::int64_t total_degree(const Poly& f) {
  std::int64_t d = 0;
  for (const auto& [e, c] : f) d = std::max(d, degree(e));
  return d;
}

LaurentPoly to_laurent(const Poly& f, std::size_t n, CoefficientDomain d) {
  LaurentPoly out(n, d);
  for (const auto& [e, c] : f) out.add_term(Monomial(Exp(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n))), c);
  return out;
}

}  // namespace

bool ideal_membership(const LaurentPoly& lambda, const std::vector<LaurentPoly>& gens, const GroebnerLimits& limits) {
  const std::size_t n = lambda.rank();
  const CoefficientDomain dom = lambda.domain();
  for (const auto& g : gens) {
    if (g.rank() != n) throw DimensionError("ideal_membership: rank mismatch");
    if (!(g.domain() == dom)) throw std::invalid_argument("ideal_membership: coefficient domains differ");
  }
  if (!dom.is_field()) throw UnsupportedError("ideal_membership: coefficients in Z are not supported");
  if (n > limits.max_rank) throw ScaleGuardError("ideal_membership: rank above " + std::to_string(limits.max_rank));
  if (lambda.is_zero()) return true;
  const Field k{dom};
  std::vector<Poly> input;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    input.push_back(cleared(g, 1, k));
  }
  if (input.empty()) return false;
  const Poly target = cleared(lambda, 1, k);
  for (const auto& f : input)
    if (total_degree(f) > limits.max_degree)
      throw ScaleGuardError("ideal_membership: degree above " + std::to_string(limits.max_degree));
  if (total_degree(target) > limits.max_degree)
    throw ScaleGuardError("ideal_membership: degree above " + std::to_string(limits.max_degree));
  // 1 - t x1...xn with t the last variable.
  Poly rabinowitsch;
  rabinowitsch.emplace(Exp(n + 1, 0), k.norm(1));
  rabinowitsch.emplace(Exp(n + 1, 1), k.norm(-1));
  input.push_back(std::move(rabinowitsch));
  const auto g = groebner(std::move(input), k, limits);
  return reduce(target, g, k).empty();
}

std::optional<LaurentPoly> exact_quotient(const LaurentPoly& lambda, const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("exact_quotient: division by zero");
  if (f.rank() != lambda.rank()) throw DimensionError("exact_quotient: rank mismatch");
  const std::size_t n = f.rank();
  const Field k{CoefficientDomain::rationals()};
  const LaurentPoly fq = f.with_domain(CoefficientDomain::rationals());
  const LaurentPoly lq = lambda.with_domain(CoefficientDomain::rationals());
  if (lq.is_zero()) return LaurentPoly(n);
  // Shift both so that all exponents are nonnegative and f has no monomial
  // factor; then f | lambda in the Laurent ring iff it divides in k[x].
  Poly pf = cleared(fq, 0, k), pl = cleared(lq, 0, k);
  Poly quotient;
  const Exp& lf = pf.begin()->first;
  const Rational lead_inv = 1 / pf.begin()->second;
  while (!pl.empty()) {
    const auto& [e, c] = *pl.begin();
    if (!divides(lf, e)) return std::nullopt;
    Exp shift(n);
    for (std::size_t i = 0; i < n; ++i) shift[i] = e[i] - lf[i];
    const Rational q = c * lead_inv;
    quotient.emplace(shift, q);
    add_scaled(pl, pf, -q, shift, k);
  }
  // Undo the shifts: lambda = x^a pl, f = x^b pf.
  Monomial a = Monomial::zero(n), b = Monomial::zero(n);
  bool first = true;
  for (const auto& [g, c] : lq.terms()) {
    for (std::size_t i = 0; i < n; ++i) a.exps[i] = first ? g.exps[i] : std::min(a.exps[i], g.exps[i]);
    first = false;
  }
  first = true;
  for (const auto& [g, c] : fq.terms()) {
    for (std::size_t i = 0; i < n; ++i) b.exps[i] = first ? g.exps[i] : std::min(b.exps[i], g.exps[i]);
    first = false;
  }
  return to_laurent(quotient, n, CoefficientDomain::rationals()).shifted(a - b);
}

bool divides_over_Z(const LaurentPoly& f, const LaurentPoly& lambda) {
  const auto q = exact_quotient(lambda, f);
  if (!q) return false;
  for (const auto& [g, c] : q->terms())
    if (c.get_den() != 1) return false;
  return true;
}

}  // namespace sigmatrop
