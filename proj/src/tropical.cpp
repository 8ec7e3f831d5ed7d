#include "sigmatrop/tropical.hpp"

#include <optional>

namespace sigmatrop {

namespace {

std::vector<std::pair<Monomial, Rational>> valued_support(const ValuedPoly& f) {
  std::vector<std::pair<Monomial, Rational>> out;
  for (const auto& [g, c] : f.poly.terms()) out.emplace_back(g, f.v.value(c).value());
  return out;
}

}  // namespace

TropicalFan trop_hypersurface(const ValuedPoly& f, Exec exec) {
  if (f.poly.is_zero()) throw std::invalid_argument("trop_hypersurface: zero polynomial");
  const std::size_t n = f.poly.rank();
  TropicalFan out;
  out.fan = Fan(n);
  const auto terms = valued_support(f);
  if (terms.size() == 1) {
    out.unit = true;
    return out;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) pairs.emplace_back(i, j);
  std::vector<std::optional<Polyhedron>> cells(pairs.size());
  for_each_index(pairs.size(), exec, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const auto& [g, vg] = terms[i];
    const auto& [h, vh] = terms[j];
    Polyhedron p(n);
    // vg + chi.g = vh + chi.h
    p.add(to_rational((g - h).exps), Relation::Eq, vh - vg);
    for (std::size_t l = 0; l < terms.size(); ++l) {
      if (l == i || l == j) continue;
      const auto& [m, vm] = terms[l];
      // vm + chi.m >= vg + chi.g
      p.add(to_rational((m - g).exps), Relation::Geq, vg - vm);
    }
    if (!p.is_empty()) cells[k] = p.simplified();
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!cells[k]) continue;
    out.fan.cells.push_back(std::move(*cells[k]));
    out.tie_pairs.emplace_back(terms[pairs[k].first].first, terms[pairs[k].second].first);
  }
  return out;
}

TropicalFan trop_prevariety(const std::vector<ValuedPoly>& gens, Exec exec) {
  if (gens.empty()) throw std::invalid_argument("trop_prevariety: no generators");
  const std::size_t n = gens[0].poly.rank();
  for (const auto& g : gens) {
    if (g.poly.rank() != n) throw DimensionError("trop_prevariety: inconsistent ranks");
    if (!(g.v == gens[0].v)) throw std::invalid_argument("trop_prevariety: generators carry different valuations");
  }
  TropicalFan acc = trop_hypersurface(gens[0], exec);
  for (std::size_t i = 1; i < gens.size(); ++i) {
    const auto next = trop_hypersurface(gens[i], exec);
    TropicalFan merged;
    merged.fan = Fan(n);
    for (std::size_t a = 0; a < acc.fan.cells.size(); ++a)
      for (std::size_t b = 0; b < next.fan.cells.size(); ++b) {
        auto c = acc.fan.cells[a].intersect(next.fan.cells[b]);
        if (c.is_empty()) continue;
        merged.fan.cells.push_back(c.simplified());
        merged.tie_pairs.push_back(acc.tie_pairs[a]);
      }
    merged.unit = acc.unit || next.unit;
    acc = std::move(merged);
  }
  acc.outer_bound = gens.size() > 1;
  return acc;
}

bool min_attained_twice(const ValuedPoly& f, const RVector& chi) {
  std::optional<Rational> best;
  int count = 0;
  for (const auto& [g, c] : f.poly.terms()) {
    const Rational val = f.v.value(c).value() + dot(chi, g.exps);
    if (!best || val < *best) {
      best = val;
      count = 1;
    } else if (val == *best) {
      ++count;
    }
  }
  return count >= 2;
}

GlobalTropical global_tropical_Z(const LaurentPoly& f, Exec exec) {
  if (f.is_zero()) throw std::invalid_argument("global_tropical_Z: zero polynomial");
  const LaurentPoly fz = f.with_domain(CoefficientDomain::integers());
  GlobalTropical out;
  out.trivial = trop_hypersurface({fz, Valuation::trivial()}, exec);
  out.fan = out.trivial.fan;
  RVector coeffs;
  for (const auto& [g, c] : fz.terms()) coeffs.push_back(c);
  for (auto p : prime_support(coeffs)) {
    auto t = trop_hypersurface({fz, Valuation::padic(p)}, exec);
    out.fan = unite(out.fan, t.fan);
    out.padic.emplace(p, std::move(t));
  }
  return out;
}

}  // namespace sigmatrop
