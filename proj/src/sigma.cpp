#include "sigmatrop/sigma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sigmatrop/tropical.hpp"
#include "sigmatrop/valuation.hpp"

namespace sigmatrop {

// ------------------------------------------------------- simplicial fans

SimplicialFan SimplicialFan::orthants(std::size_t rank) {
  if (rank == 0 || rank > 6) throw ScaleGuardError("orthant fan: rank must be in 1..6");
  SimplicialFan f;
  f.rank = rank;
  for (std::size_t mask = 0; mask < (std::size_t{1} << rank); ++mask) {
    std::vector<Direction> cone;
    for (std::size_t i = 0; i < rank; ++i) {
      ZVector e(rank, 0);
      e[i] = (mask >> i) & 1 ? -1 : 1;
      cone.emplace_back(e);
    }
    std::sort(cone.begin(), cone.end());
    f.cones.push_back(std::move(cone));
  }
  return f;
}

namespace {

// Coordinates of v in the ray basis of a simplicial cone.
RVector cone_coordinates(const std::vector<Direction>& rays, const RVector& v) {
  std::vector<RVector> rows;
  for (const auto& r : rays) rows.push_back(r.vector());
  const auto a = solve(QMatrix(rows).transpose(), v);
  if (!a) throw std::logic_error("simplicial cone with dependent rays");
  return *a;
}

}  // namespace

void SimplicialFan::insert_ray(const Direction& d) {
  if (d.rank() != rank) throw DimensionError("insert_ray: rank mismatch");
  for (const auto& c : cones)
    if (std::find(c.begin(), c.end(), d) != c.end()) return;
  std::vector<std::vector<Direction>> next;
  for (const auto& c : cones) {
    const RVector a = cone_coordinates(c, d.vector());
    if (std::any_of(a.begin(), a.end(), [](const Rational& q) { return sgn(q) < 0; })) {
      next.push_back(c);
      continue;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (sgn(a[i]) == 0) continue;
      auto sub = c;
      sub[i] = d;
      std::sort(sub.begin(), sub.end());
      next.push_back(std::move(sub));
    }
  }
  cones = std::move(next);
}

std::vector<std::vector<Direction>> SimplicialFan::faces() const {
  std::set<std::vector<Direction>> all;
  for (const auto& c : cones)
    for (std::size_t mask = 1; mask < (std::size_t{1} << c.size()); ++mask) {
      std::vector<Direction> face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if ((mask >> i) & 1) face.push_back(c[i]);
      all.insert(std::move(face));
    }
  std::vector<std::vector<Direction>> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

Polyhedron relint_cone(const std::vector<Direction>& rays, std::size_t rank) {
  if (rays.empty()) throw std::invalid_argument("relint_cone: no rays");
  std::vector<RVector> rows;
  for (const auto& r : rays) {
    if (r.rank() != rank) throw DimensionError("relint_cone: rank mismatch");
    rows.push_back(r.vector());
  }
  Polyhedron p(rank);
  for (auto& v : nullspace(rows, rank)) p.add(std::move(v), Relation::Eq);
  const QMatrix m(rows);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    RVector e(rays.size(), 0);
    e[i] = 1;
    const auto f = solve(m, e);
    if (!f) throw std::invalid_argument("relint_cone: rays are linearly dependent");
    p.add(*f, Relation::Gt);
  }
  return p.simplified();
}

// ---------------------------------------------------- certificate search

namespace {

bool only_eq_and_strict(const Polyhedron& p) {
  return std::none_of(p.constraints().begin(), p.constraints().end(),
                      [](const Constraint& c) { return c.rel == Relation::Geq; });
}

struct SupportFilter {
  const Polyhedron& cell;
  bool open;
  std::vector<RVector> gens;

  explicit SupportFilter(const Polyhedron& c) : cell(c), open(only_eq_and_strict(c)) {
    if (open)
      for (const auto& d : cone_generators(c.closure()).all()) gens.push_back(d.vector());
  }

  // chi.g > 0 for every chi in the cell.
  bool positive(const Monomial& g) const {
    if (open) {
      bool some = false;
      for (const auto& r : gens) {
        const int s = sgn(dot(r, g.exps));
        if (s < 0) return false;
        some = some || s > 0;
      }
      return some;
    }
    Polyhedron bad = cell;
    bad.add(to_rational((-g).exps), Relation::Geq, 0);
    return bad.is_empty();
  }
};

void box_monomials(std::size_t n, int k, std::vector<Monomial>& out) {
  Monomial g(std::vector<std::int64_t>(n, -k));
  for (;;) {
    if (!g.is_zero()) out.push_back(g);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (g.exps[i] < k) {
        ++g.exps[i];
        for (std::size_t j = i + 1; j < n; ++j) g.exps[j] = -k;
        break;
      }
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

std::int64_t sup_norm(const Monomial& g) {
  std::int64_t m = 0;
  for (auto e : g.exps) m = std::max(m, e < 0 ? -e : e);
  return m;
}

RVector vec(const QMatrix& a) {
  RVector v;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
  return v;
}

struct LatticeProblem {
  const std::vector<RVector>& columns;  // vec(M^g) per candidate monomial
  RVector rhs;                          // -vec(I)

  // Integer system restricted to the chosen columns, rows scaled to Z.
  std::pair<ZMatrix, ZVector> system(const std::vector<std::size_t>& cols) const {
    ZMatrix a;
    ZVector b;
    for (std::size_t r = 0; r < rhs.size(); ++r) {
      Integer l = rhs[r].get_den();
      bool nonzero = sgn(rhs[r]) != 0;
      for (auto c : cols) {
        l = lcm(l, Integer(columns[c][r].get_den()));
        nonzero = nonzero || sgn(columns[c][r]) != 0;
      }
      if (!nonzero) continue;
      ZVector row;
      for (auto c : cols) row.push_back(Integer(columns[c][r] * l));
      a.push_back(std::move(row));
      b.push_back(Integer(rhs[r] * l));
    }
    return {a, b};
  }

  // Shortest-found integer solution within the bound.
  std::optional<ZVector> solve(const std::vector<std::size_t>& cols, const Integer& bound, bool* infeasible) const {
    auto [a, b] = system(cols);
    if (a.empty()) {
      if (infeasible) *infeasible = false;
      return std::nullopt;
    }
    const auto s = solve_integer(a, b);
    if (infeasible) *infeasible = !s;
    if (!s) return std::nullopt;
    ZVector x = s->particular;
    if (!s->kernel.empty()) x = babai_reduce(x, lll_reduce(s->kernel));
    if (max_abs(x) > bound) return std::nullopt;
    return x;
  }
};

LaurentPoly assemble(std::size_t n, const std::vector<Monomial>& support, const std::vector<std::size_t>& cols,
                     const ZVector& coeffs) {
  LaurentPoly lam = LaurentPoly::constant(n, 1, CoefficientDomain::integers());
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (sgn(coeffs[i]) != 0) lam.add_term(support[cols[i]], Rational(coeffs[i]));
  return lam;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

}  // namespace

std::optional<LaurentPoly> certificate_search(const ModulePresentation& m, const Polyhedron& cell,
                                              const SearchBounds& bounds, Exec exec) {
  const auto md = m.as_matrix();
  if (!md) throw UnsupportedError("certificate_search: modules with a cyclic summand need user-supplied certificates");
  const std::size_t n = m.rank();
  if (cell.rank() != n) throw DimensionError("certificate_search: rank mismatch");
  if (cell.is_empty()) throw std::invalid_argument("certificate_search: empty cell");
  if (bounds.box < 1) throw std::invalid_argument("certificate_search: box must be positive");
  const SupportFilter filter(cell);

  RVector rhs = vec(QMatrix::identity(md->d));
  for (auto& q : rhs) q = -q;

  std::vector<Monomial> support;  // valid monomials of the current box, lexicographic
  std::vector<RVector> columns;
  for (int k = 1; k <= bounds.box; ++k) {
    std::vector<Monomial> box;
    box_monomials(n, k, box);
    std::vector<char> keep(box.size(), 0);
    for_each_index(box.size(), exec, [&](std::size_t i) { keep[i] = filter.positive(box[i]) ? 1 : 0; });
    support.clear();
    for (std::size_t i = 0; i < box.size(); ++i)
      if (keep[i]) support.push_back(box[i]);
    if (support.empty()) continue;
    columns.assign(support.size(), {});
    for_each_index(support.size(), exec, [&](std::size_t i) {
      columns[i] = vec(evaluate(LaurentPoly::monomial(support[i], 1), *md));
    });
    const LatticeProblem problem{columns, rhs};

    // Sparse supports, one subset at a time in lexicographic order.  Subsets
    // inside the previous box were already tried there.
    const std::size_t top = std::min(bounds.max_sparse, support.size());
    for (std::size_t s = 1; s <= top; ++s) {
      if (binomial(support.size(), s) > static_cast<double>(bounds.sparse_budget)) break;
      std::vector<std::vector<std::size_t>> batch;
      std::vector<std::size_t> comb(s);
      std::iota(comb.begin(), comb.end(), std::size_t{0});
      bool more = true;
      while (more) {
        batch.clear();
        while (more && batch.size() < 4096) {
          const bool fresh = std::any_of(comb.begin(), comb.end(), [&](std::size_t c) { return sup_norm(support[c]) == k; });
          if (fresh) batch.push_back(comb);
          more = next_combination(comb, support.size());
        }
        std::vector<std::optional<ZVector>> found(batch.size());
        for_each_index(batch.size(), exec, [&](std::size_t i) { found[i] = problem.solve(batch[i], bounds.coeff_bound, nullptr); });
        for (std::size_t i = 0; i < batch.size(); ++i)
          if (found[i]) return assemble(n, support, batch[i], *found[i]);
      }
    }

    if (support.size() > top && support.size() <= bounds.max_full_columns) {
      std::vector<std::size_t> all(support.size());
      std::iota(all.begin(), all.end(), std::size_t{0});
      bool infeasible = false;
      const auto x = problem.solve(all, bounds.coeff_bound, &infeasible);
      if (x) return assemble(n, support, all, *x);
    }
  }
  return std::nullopt;
}

std::optional<LaurentPoly> certificate_search(const ModulePresentation& m, const Character& chi,
                                              const SearchBounds& bounds, Exec exec) {
  if (chi.is_zero()) throw std::invalid_argument("certificate_search: zero character");
  if (chi.rank() != m.rank()) throw DimensionError("certificate_search: rank mismatch");
  return certificate_search(m, Polyhedron::open_ray(chi.values), bounds, exec);
}

// ------------------------------------------------------------ SigmaResult

namespace {

Fan cones_of(const std::vector<CertifiedCell>& cells, std::size_t rank) {
  Fan f(rank);
  for (const auto& c : cells) f.cells.push_back(c.cone);
  return f;
}

Fan cones_of(const std::vector<WitnessedCell>& cells, std::size_t rank) {
  Fan f(rank);
  for (const auto& c : cells) f.cells.push_back(c.cone);
  return f;
}

Fan nonzero_part(const Fan& f) {
  Fan out(f.rank);
  for (const auto& c : f.cells)
    if (has_nonzero_point(c)) out.cells.push_back(c);
  return out;
}

Fan remainder(std::size_t rank, const Fan& covered, Exec exec) {
  return nonzero_part(subtract(Fan(rank, {Polyhedron::whole(rank)}), covered, exec));
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

std::string vector_str(const RVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

SphericalSet SigmaResult::proved_sigma() const { return SphericalSet(cones_of(sigma, rank)); }
SphericalSet SigmaResult::proved_complement() const { return SphericalSet(cones_of(complement, rank)); }

std::optional<LaurentPoly> SigmaResult::certificate_for(const Direction& d) const {
  for (const auto& c : sigma)
    if (c.cone.contains(d.vector())) return c.certificate;
  return std::nullopt;
}

std::optional<std::string> SigmaResult::witness_for(const Direction& d) const {
  for (const auto& c : complement)
    if (c.cone.contains(d.vector())) return c.witness;
  return std::nullopt;
}

// --------------------------------------------------- scalar/matrix action

namespace {

// Joint eigenvalue tuples when the matrices are simultaneously
// diagonalizable over Q.
std::optional<std::vector<RVector>> joint_eigenvalues(const MatrixData& md) {
  std::vector<std::vector<Rational>> roots;
  for (const auto& a : md.mats) roots.push_back(rational_roots(characteristic_polynomial(a)));
  std::vector<RVector> tuples;
  std::size_t total = 0;
  std::vector<std::size_t> idx(roots.size(), 0);
  if (std::any_of(roots.begin(), roots.end(), [](const auto& r) { return r.empty(); })) return std::nullopt;
  for (;;) {
    std::vector<RVector> rows;
    RVector tuple;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const Rational& l = roots[i][idx[i]];
      tuple.push_back(l);
      const QMatrix shifted = md.mats[i] - QMatrix::identity(md.d).scaled(l);
      for (std::size_t r = 0; r < md.d; ++r) rows.push_back(shifted.row(r));
    }
    const std::size_t dim = nullspace(rows, md.d).size();
    if (dim > 0) {
      tuples.push_back(tuple);
      total += dim;
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == roots[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  if (total != md.d) return std::nullopt;
  return tuples;
}

std::string bounds_str(const SearchBounds& b) {
  return "box " + std::to_string(b.box) + ", |c| <= " + to_string(b.coeff_bound);
}

std::string rays_str(const std::vector<Direction>& rays) {
  std::string s = "cone(";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? " " : "") + rays[i].str();
  return s + ")";
}

}  // namespace

SigmaResult sigma_scalar_action_exact(const ModulePresentation& m, const SigmaOptions& opt) {
  const auto md = m.as_matrix();
  if (!md) throw UnsupportedError("sigma_scalar_action_exact: module has a cyclic summand");
  const std::size_t n = m.rank();
  SigmaResult r;
  r.rank = n;
  r.undecided = Fan(n);

  std::map<Direction, std::vector<std::string>> comp;
  const auto tuples = joint_eigenvalues(*md);
  if (tuples) {
    for (const auto& t : *tuples) {
      for (auto p : prime_support(t)) {
        const auto v = Valuation::padic(p);
        RVector w;
        for (const auto& l : t) w.push_back(v.value(l).value());
        if (is_zero(w)) continue;
        comp[Direction::of(w)].push_back(std::to_string(p) + "-adic valuation of the eigenvalues " + vector_str(t) +
                                         " = " + vector_str(w));
      }
    }
  } else {
    r.notes.push_back("action not simultaneously diagonalizable over Q: complement not computed");
  }

  SimplicialFan fan = SimplicialFan::orthants(n);
  for (const auto& [d, w] : comp) fan.insert_ray(d);
  const auto faces = fan.faces();

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].size() == 1) {
      const auto it = comp.find(faces[i][0]);
      if (it != comp.end()) {
        r.complement.push_back({relint_cone(faces[i], n), join(it->second)});
        continue;
      }
    }
    candidates.push_back(i);
  }

  // Maximal cells first, searched independently; lower cells reuse an earlier
  // certificate when one is valid there.
  std::vector<std::optional<LaurentPoly>> cert(faces.size());
  std::vector<Polyhedron> cells(faces.size());
  for (auto i : candidates) cells[i] = relint_cone(faces[i], n);
  std::vector<std::size_t> top, rest;
  for (auto i : candidates) (faces[i].size() == n ? top : rest).push_back(i);
  for_each_index(top.size(), opt.exec, [&](std::size_t k) {
    cert[top[k]] = certificate_search(m, cells[top[k]], opt.search);
  });
  std::vector<LaurentPoly> known;
  for (auto i : top)
    if (cert[i] && std::find(known.begin(), known.end(), *cert[i]) == known.end()) known.push_back(*cert[i]);
  for_each_index(rest.size(), opt.exec, [&](std::size_t k) {
    const auto i = rest[k];
    for (const auto& lam : known)
      if (initial_one_on(lam, cells[i])) {
        cert[i] = lam;
        return;
      }
    cert[i] = certificate_search(m, cells[i], opt.search);
  });
  for (auto i : candidates) {
    if (cert[i]) {
      r.sigma.push_back({cells[i], *cert[i]});
    } else {
      r.undecided.cells.push_back(cells[i]);
      r.notes.push_back("no certificate for " + rays_str(faces[i]) + " within " + bounds_str(opt.search));
    }
  }
  return r;
}

// ----------------------------------------------------------- cyclic modules

namespace {

// Open region where x^g is the unique chi-initial monomial of f.
Polyhedron initial_region(const LaurentPoly& f, const Monomial& g) {
  Polyhedron p(f.rank());
  for (const auto& [h, c] : f.terms())
    if (h != g) p.add(to_rational((h - g).exps), Relation::Gt);
  return p;
}

void add_initial_regions(const LaurentPoly& f, bool units_only, SigmaResult& r) {
  for (const auto& [g, c] : f.terms()) {
    if (units_only && abs(c) != 1) continue;
    const Polyhedron region = initial_region(f, g);
    if (region.is_empty()) continue;
    const LaurentPoly lam = f.shifted(-g).scaled(f.domain().inverse(c));
    r.sigma.push_back({region.simplified(), lam});
  }
}

std::string tie_str(const std::pair<Monomial, Monomial>& t) {
  return "x^" + vector_str(to_rational(t.first.exps)) + " and x^" + vector_str(to_rational(t.second.exps)) + " tie";
}

std::vector<LaurentPoly> nonzero_gens(const CyclicData& c) {
  std::vector<LaurentPoly> out;
  for (const auto& g : c.gens)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

void whole_complement(SigmaResult& r, const std::string& why) {
  r.complement.push_back({Polyhedron::whole(r.rank), why});
}

}  // namespace

SigmaResult sigma_cyclic_field(const ModulePresentation& m, const SigmaOptions& opt) {
  const auto& c = m.cyclic_data();
  if (!c.domain.is_field()) throw std::invalid_argument("sigma_cyclic_field: coefficients must be a field");
  const std::size_t n = m.rank();
  SigmaResult r;
  r.rank = n;
  r.undecided = Fan(n);
  const auto gens = nonzero_gens(c);
  if (gens.empty()) {
    whole_complement(r, "zero ideal: every character is induced by a monomial valuation trivial on " + c.domain.name());
    return r;
  }
  for (const auto& f : gens) add_initial_regions(f, false, r);
  if (gens.size() == 1) {
    const auto t = trop_hypersurface({gens[0], Valuation::trivial()}, opt.exec);
    for (std::size_t i = 0; i < t.fan.cells.size(); ++i)
      if (has_nonzero_point(t.fan.cells[i]))
        r.complement.push_back({t.fan.cells[i], "trivial valuation on " + c.domain.name() + ", " + tie_str(t.tie_pairs[i])});
    return r;
  }
  std::vector<ValuedPoly> vp;
  for (const auto& f : gens) vp.push_back({f, Valuation::trivial()});
  const auto pre = trop_prevariety(vp, opt.exec);
  r.outer_candidate = nonzero_part(pre.fan);
  r.undecided = remainder(n, cones_of(r.sigma, n), opt.exec);
  r.notes.push_back("several generators: complement bounded by the tropical prevariety, not computed");
  return r;
}

SigmaResult sigma_cyclic_Z(const ModulePresentation& m, const SigmaOptions& opt) {
  const auto& c = m.cyclic_data();
  if (c.domain.kind != DomainKind::Integers) throw std::invalid_argument("sigma_cyclic_Z: coefficients must be Z");
  const std::size_t n = m.rank();
  SigmaResult r;
  r.rank = n;
  r.undecided = Fan(n);
  const auto gens = nonzero_gens(c);
  if (gens.size() > 1) throw UnsupportedError("sigma_cyclic_Z: only principal ideals are supported over Z");
  if (gens.empty()) {
    whole_complement(r, "zero ideal: every character is induced by a monomial valuation trivial on Z");
    return r;
  }
  const LaurentPoly& f = gens[0];
  const auto global = global_tropical_Z(f, opt.exec);
  for (std::size_t i = 0; i < global.trivial.fan.cells.size(); ++i)
    if (has_nonzero_point(global.trivial.fan.cells[i]))
      r.complement.push_back({global.trivial.fan.cells[i], "trivial valuation on Z, " + tie_str(global.trivial.tie_pairs[i])});
  for (const auto& [p, t] : global.padic)
    for (std::size_t i = 0; i < t.fan.cells.size(); ++i) {
      const auto proj = SphericalSet::radial_projection(Fan(n, {t.fan.cells[i]}));
      for (const auto& cone : proj.fan.cells)
        r.complement.push_back({cone, std::to_string(p) + "-adic valuation, " + tie_str(t.tie_pairs[i])});
    }
  RVector coeffs;
  for (const auto& [g, a] : f.terms()) coeffs.push_back(a);
  for (auto p : prime_support(coeffs)) {
    const auto fp = f.with_domain(CoefficientDomain::prime_field(p));
    if (fp.is_zero()) {
      whole_complement(r, "valuations of residue characteristic " + std::to_string(p) + " (f vanishes mod " + std::to_string(p) + ")");
      continue;
    }
    const auto t = trop_hypersurface({fp, Valuation::trivial()}, opt.exec);
    for (std::size_t i = 0; i < t.fan.cells.size(); ++i)
      if (has_nonzero_point(t.fan.cells[i]))
        r.complement.push_back({t.fan.cells[i], "valuation of residue characteristic " + std::to_string(p) + ", " + tie_str(t.tie_pairs[i])});
  }
  add_initial_regions(f, true, r);
  Fan covered = cones_of(r.sigma, n);
  for (const auto& w : r.complement) covered.cells.push_back(w.cone);
  r.undecided = remainder(n, covered, opt.exec);
  if (!spherically_empty(r.undecided))
    r.notes.push_back("regions whose initial coefficient is not a unit in Z are left undecided");
  return r;
}

// --------------------------------------------------------------- direct sum

namespace {

LaurentPoly product_certificate(const LaurentPoly& a, const LaurentPoly& b) {
  const auto& da = a.domain();
  const auto& db = b.domain();
  if (da == db) return a * b;
  // Certificates over F_p lift to Z through their canonical representatives.
  if (da.kind == DomainKind::PrimeField && db.kind == DomainKind::Integers) return a.with_domain(db) * b;
  if (db.kind == DomainKind::PrimeField && da.kind == DomainKind::Integers) return a * b.with_domain(da);
  throw UnsupportedError("direct sum of modules over different coefficient rings (" + da.name() + ", " + db.name() + ")");
}

}  // namespace

SigmaResult sigma_direct_sum(const SigmaResult& a, const SigmaResult& b, Exec exec) {
  if (a.rank != b.rank) throw DimensionError("sigma_direct_sum: rank mismatch");
  const std::size_t n = a.rank;
  SigmaResult r;
  r.rank = n;
  const std::size_t nb = b.sigma.size();
  std::vector<std::optional<CertifiedCell>> meet(a.sigma.size() * nb);
  for_each_index(meet.size(), exec, [&](std::size_t k) {
    const auto& x = a.sigma[k / nb];
    const auto& y = b.sigma[k % nb];
    const Polyhedron cone = x.cone.intersect(y.cone);
    if (!has_nonzero_point(cone)) return;
    meet[k] = CertifiedCell{cone.simplified(), product_certificate(x.certificate, y.certificate)};
  });
  for (auto& c : meet)
    if (c) r.sigma.push_back(std::move(*c));
  r.complement = a.complement;
  r.complement.insert(r.complement.end(), b.complement.begin(), b.complement.end());
  Fan covered = cones_of(r.sigma, n);
  for (const auto& w : r.complement) covered.cells.push_back(w.cone);
  r.undecided = remainder(n, covered, exec);
  if (a.outer_candidate || b.outer_candidate) {
    const Fan oa = a.outer_candidate ? *a.outer_candidate : cones_of(a.complement, n);
    const Fan ob = b.outer_candidate ? *b.outer_candidate : cones_of(b.complement, n);
    r.outer_candidate = unite(oa, ob);
  }
  r.notes = a.notes;
  r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
  return r;
}

SigmaResult compute_sigma(const ModulePresentation& m, const SigmaOptions& opt) {
  switch (m.kind()) {
    case ModuleKind::Scalar:
    case ModuleKind::Matrix:
      return sigma_scalar_action_exact(m, opt);
    case ModuleKind::Cyclic:
      return m.cyclic_data().domain.is_field() ? sigma_cyclic_field(m, opt) : sigma_cyclic_Z(m, opt);
    case ModuleKind::DirectSum:
      break;
  }
  SigmaResult acc = compute_sigma(m.summands()[0], opt);
  for (std::size_t i = 1; i < m.summands().size(); ++i)
    acc = sigma_direct_sum(acc, compute_sigma(m.summands()[i], opt), opt.exec);
  return acc;
}

bool certificates_verified(const SigmaResult& r, const ModulePresentation& m) {
  for (const auto& c : r.sigma)
    if (!certificate_valid_on(c.certificate, c.cone, m)) return false;
  return true;
}

namespace {

bool overlaps(const Fan& a, const Fan& b, Exec exec) { return meets_antipodally(a, negate(b), exec); }

}  // namespace

bool pairwise_disjoint(const SigmaResult& r, Exec exec) {
  const Fan s = cones_of(r.sigma, r.rank), c = cones_of(r.complement, r.rank);
  return !overlaps(s, c, exec) && !overlaps(s, r.undecided, exec) && !overlaps(c, r.undecided, exec);
}

// ----------------------------------------------------- metabelian predicates

std::string to_string(Decision d) {
  switch (d) {
    case Decision::True:
      return "true";
    case Decision::False:
      return "false";
    case Decision::Undecided:
      return "undecided";
  }
  return "undecided";
}

Decision metabelian_fp(const SigmaResult& r, Exec exec) {
  const Fan c = cones_of(r.complement, r.rank);
  if (meets_antipodally(c, c, exec)) return Decision::False;
  const Fan cu = unite(c, r.undecided);
  if (!meets_antipodally(cu, cu, exec)) return Decision::True;
  return Decision::Undecided;
}

std::optional<std::vector<Direction>> finite_directions(const std::vector<Polyhedron>& cells) {
  std::set<Direction> out;
  for (const auto& c : cells) {
    if (!has_nonzero_point(c)) continue;
    if (c.dimension() >= 2) return std::nullopt;
    for (const auto& d : cone_generators(c.closure()).all()) out.insert(d);
  }
  return std::vector<Direction>(out.begin(), out.end());
}

namespace {

bool hemisphere(const std::vector<Direction>& dirs) { return dirs.empty() || in_open_hemisphere(dirs).witness.has_value(); }

std::vector<Polyhedron> complement_cells(const SigmaResult& r) {
  std::vector<Polyhedron> out;
  for (const auto& w : r.complement) out.push_back(w.cone);
  return out;
}

}  // namespace

Decision metabelian_fp_infinity(const SigmaResult& r) {
  const auto dirs = finite_directions(complement_cells(r));
  if (!dirs) return Decision::False;
  if (!hemisphere(*dirs)) return Decision::False;
  return r.exact() ? Decision::True : Decision::Undecided;
}

FpmReport fpm_test(const std::vector<Direction>& complement, int m) {
  if (complement.size() > 12) throw ScaleGuardError("fpm_test: more than 12 complement directions");
  FpmReport rep;
  rep.conjectural = m >= 3;
  const std::size_t s = m <= 0 ? complement.size() : std::min<std::size_t>(static_cast<std::size_t>(m), complement.size());
  rep.value = Decision::True;
  if (s == 0) return rep;
  std::vector<std::size_t> comb(s);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  do {
    std::vector<Direction> sub;
    for (auto i : comb) sub.push_back(complement[i]);
    if (!hemisphere(sub)) {
      rep.value = Decision::False;
      rep.failing_subset = sub;
      return rep;
    }
  } while (next_combination(comb, complement.size()));
  return rep;
}

FpmReport fpm_test(const SigmaResult& r, int m) {
  const auto dirs = finite_directions(complement_cells(r));
  if (!dirs) {
    FpmReport rep;
    rep.conjectural = m >= 3;
    rep.value = m <= 0 ? Decision::False : Decision::Undecided;
    return rep;
  }
  auto rep = fpm_test(*dirs, m);
  if (rep.value == Decision::True && !r.exact()) rep.value = Decision::Undecided;
  return rep;
}

}  // namespace sigmatrop
