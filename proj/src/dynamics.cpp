#include "sigmatrop/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sigmatrop {

PushMap::PushMap(LaurentMatrix m) : m_(std::move(m)) {
  if (m_.empty()) throw std::invalid_argument("PushMap: empty matrix");
  rank_ = m_[0][0].rank();
  for (auto& row : m_) {
    if (row.size() != m_.size()) throw std::invalid_argument("PushMap: matrix must be square");
    for (auto& e : row) {
      if (e.rank() != rank_) throw DimensionError("PushMap: entries of different rank");
      e = e.with_domain(CoefficientDomain::integers());
    }
  }
}

PushMap PushMap::multiplication(const LaurentPoly& f) { return PushMap({{f}}); }

PushMap PushMap::operator*(const PushMap& o) const {
  if (o.size() != size() || o.rank() != rank()) throw DimensionError("PushMap: size mismatch in composition");
  const std::size_t k = size();
  LaurentMatrix out(k, std::vector<LaurentPoly>(k, LaurentPoly(rank_, CoefficientDomain::integers())));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += m_[i][l] * o.m_[l][j];
  return PushMap(std::move(out));
}

PushMap PushMap::pow(unsigned e) const {
  LaurentMatrix id(size(), std::vector<LaurentPoly>(size(), LaurentPoly(rank_, CoefficientDomain::integers())));
  for (std::size_t i = 0; i < size(); ++i) id[i][i] = LaurentPoly::constant(rank_, 1, CoefficientDomain::integers());
  PushMap acc(std::move(id));
  for (unsigned i = 0; i < e; ++i) acc = *this * acc;
  return acc;
}

std::vector<LaurentPoly> PushMap::apply(const std::vector<LaurentPoly>& c) const {
  if (c.size() != size()) throw DimensionError("PushMap: vector length mismatch");
  std::vector<LaurentPoly> out(size(), LaurentPoly(rank_, CoefficientDomain::integers()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) out[i] += m_[i][j] * c[j].with_domain(CoefficientDomain::integers());
  return out;
}

PushNorm norm(const PushMap& phi) {
  PushNorm n;
  n.squared = 0;
  for (const auto& row : phi.matrix())
    for (const auto& e : row)
      for (const auto& [g, c] : e.terms()) n.squared = std::max(n.squared, Rational(g.squared_length()));
  n.value = std::sqrt(n.squared.get_d());
  return n;
}

Extended gsh(const PushMap& phi, const Character& chi) {
  if (chi.rank() != phi.rank()) throw DimensionError("gsh: rank mismatch");
  Extended best = Extended::infinity();
  for (std::size_t j = 0; j < phi.size(); ++j) {
    Extended col = Extended::infinity();
    for (std::size_t i = 0; i < phi.size(); ++i) col = min(col, v_chi(chi, phi(i, j)));
    best = min(best, col);
  }
  return best;
}

double gsh_unit(const PushMap& phi, const Character& chi) {
  const Extended g = gsh(phi, chi);
  if (g.is_infinite()) return INFINITY;
  return g.value().get_d() / std::sqrt(dot(chi.values, chi.values).get_d());
}

Polyhedron sigma_of_push(const PushMap& phi) {
  Polyhedron p(phi.rank());
  std::set<Monomial> seen;
  for (const auto& row : phi.matrix())
    for (const auto& e : row)
      for (const auto& [g, c] : e.terms())
        if (seen.insert(g).second) p.add(to_rational(g.exps), Relation::Gt);
  return p.simplified();
}

LambdaEstimate lambda_of_push_estimate(const PushMap& phi, const std::vector<LaurentPoly>& c, int iters) {
  if (iters < 1) throw std::invalid_argument("lambda_of_push_estimate: iters must be positive");
  LambdaEstimate est;
  std::vector<std::set<Direction>> recent;
  std::vector<LaurentPoly> cur = c;
  for (int k = 1; k <= iters; ++k) {
    cur = phi.apply(cur);
    est.iterations = k;
    std::set<Direction> dirs;
    bool zero = true;
    for (const auto& e : cur) {
      zero = zero && e.is_zero();
      for (const auto& [g, a] : e.terms())
        if (!g.is_zero()) dirs.insert(Direction::of(to_rational(g.exps)));
    }
    if (zero) {
      est.died_out = true;
      est.died_at = k;
      break;
    }
    recent.push_back(std::move(dirs));
    if (recent.size() > 3) recent.erase(recent.begin());
  }
  std::set<Direction> all;
  for (const auto& s : recent) all.insert(s.begin(), s.end());
  est.directions.assign(all.begin(), all.end());
  return est;
}

AngleReport check_angle_bound(const PushMap& phi, const Character& chi, const std::vector<Direction>& dirs) {
  const Extended g = gsh(phi, chi);
  if (g.is_infinite() || sgn(g.value()) <= 0) throw std::invalid_argument("check_angle_bound: requires gsh(phi, chi) > 0");
  const Rational chi2 = dot(chi.values, chi.values);
  const Rational norm2 = norm(phi).squared;
  AngleReport rep;
  // (gsh / |chi|)^2 / ||phi||^2 <= 1 since gsh <= |chi| ||phi||.
  rep.ratio_sq = g.value() * g.value() / (chi2 * norm2);
  rep.bound = std::acos(std::min(1.0, std::sqrt(rep.ratio_sq.get_d())));
  for (const auto& d : dirs) {
    AngleCheck c;
    c.dir = d;
    const RVector e = d.vector();
    const Rational ce = dot(chi.values, e);
    const Rational e2 = dot(e, e);
    // cos(angle) >= ratio  <=>  chi.e >= 0 and (chi.e)^2 >= ratio^2 |chi|^2 |e|^2.
    c.exact = sgn(ce) >= 0 && ce * ce >= rep.ratio_sq * chi2 * e2;
    const double cosv = ce.get_d() / std::sqrt(chi2.get_d() * e2.get_d());
    c.angle = std::acos(std::clamp(cosv, -1.0, 1.0));
    c.pass = c.exact || c.angle <= rep.bound + 1e-6;
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

ComposeReport compose_gsh_check(const PushMap& phi, const PushMap& psi, const Character& chi, int k_max) {
  if (phi.size() != psi.size() || phi.rank() != psi.rank()) throw DimensionError("compose_gsh_check: size mismatch");
  ComposeReport rep;
  rep.gsh_phi = gsh(phi, chi);
  rep.gsh_psi = gsh(psi, chi);
  rep.gsh_composite = gsh(phi * psi, chi);
  if (rep.gsh_composite < rep.gsh_phi + rep.gsh_psi) {
    rep.pass = false;
    rep.failures.push_back("gsh(phi psi) = " + rep.gsh_composite.str() + " < " + (rep.gsh_phi + rep.gsh_psi).str());
  }
  PushMap power = phi;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) power = phi * power;
    const Extended gk = gsh(power, chi);
    rep.gsh_powers.push_back(gk);
    if (rep.gsh_phi.is_finite() && gk < Extended(Rational(k) * rep.gsh_phi.value())) {
      rep.pass = false;
      rep.failures.push_back("gsh(phi^" + std::to_string(k) + ") = " + gk.str() + " < " + std::to_string(k) + " gsh(phi)");
    }
  }
  return rep;
}

}  // namespace sigmatrop
