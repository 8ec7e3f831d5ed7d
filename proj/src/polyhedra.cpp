#include "sigmatrop/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "sigmatrop/linalg.hpp"
#include "sigmatrop/lp.hpp"

namespace sigmatrop {

bool Constraint::satisfied_by(const RVector& x) const {
  const Rational v = dot(normal, x);
  switch (rel) {
    case Relation::Eq: return v == rhs;
    case Relation::Geq: return v >= rhs;
    case Relation::Gt: return v > rhs;
  }
  return false;
}

bool Constraint::operator<(const Constraint& o) const {
  if (rel != o.rel) return rel < o.rel;
  if (normal != o.normal) return std::lexicographical_compare(normal.begin(), normal.end(), o.normal.begin(), o.normal.end());
  return rhs < o.rhs;
}

Polyhedron Polyhedron::point(const RVector& x) {
  Polyhedron p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    RVector e(x.size());
    e[i] = 1;
    p.add(std::move(e), Relation::Eq, x[i]);
  }
  return p;
}

namespace {

Polyhedron ray_cell(const RVector& d, Relation rel) {
  if (is_zero(d)) throw std::invalid_argument("ray of the zero vector");
  Polyhedron p(d.size());
  for (auto& v : nullspace(std::vector<RVector>{d}, d.size())) p.add(std::move(v), Relation::Eq);
  p.add(d, rel);
  return p;
}

}  // namespace

Polyhedron Polyhedron::open_ray(const RVector& d) { return ray_cell(d, Relation::Gt); }
Polyhedron Polyhedron::closed_ray(const RVector& d) { return ray_cell(d, Relation::Geq); }

Polyhedron& Polyhedron::add(RVector normal, Relation rel, Rational rhs) {
  if (normal.size() != rank_) throw DimensionError("constraint rank mismatch");
  constraints_.push_back({std::move(normal), rel, std::move(rhs)});
  return *this;
}

Polyhedron Polyhedron::intersect(const Polyhedron& o) const {
  if (o.rank_ != rank_) throw DimensionError("intersect: rank mismatch");
  Polyhedron r = *this;
  r.constraints_.insert(r.constraints_.end(), o.constraints_.begin(), o.constraints_.end());
  return r;
}

bool Polyhedron::contains(const RVector& x) const {
  if (x.size() != rank_) throw DimensionError("membership: rank mismatch");
  return std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return c.satisfied_by(x); });
}

bool Polyhedron::is_conical() const {
  return std::all_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) { return sgn(c.rhs) == 0; });
}

namespace {

// Builds the LP over (x, t): equalities, weak rows a.x >= b, strict rows
// a.x - t >= b, t <= 1, maximizing t.  `as_eq` forces listed rows to equality.
LinearProgram slack_lp(const Polyhedron& p, const std::vector<bool>& as_eq, bool all_strict) {
  const std::size_t n = p.rank();
  LinearProgram lp;
  lp.nvars = n + 1;
  bool any_slack = false;
  const auto& cs = p.constraints();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    RVector a = cs[i].normal;
    a.push_back(0);
    if (cs[i].rel == Relation::Eq || as_eq[i]) {
      lp.add(std::move(a), RowSense::Eq, cs[i].rhs);
    } else if (cs[i].rel == Relation::Gt || all_strict) {
      a[n] = -1;
      lp.add(std::move(a), RowSense::Ge, cs[i].rhs);
      any_slack = true;
    } else {
      lp.add(std::move(a), RowSense::Ge, cs[i].rhs);
    }
  }
  RVector t(n + 1);
  t[n] = 1;
  lp.add(t, RowSense::Le, 1);
  if (any_slack) lp.objective = t;
  return lp;
}

bool trivially_false(const Constraint& c) {
  if (!is_zero(c.normal)) return false;
  switch (c.rel) {
    case Relation::Eq: return sgn(c.rhs) != 0;
    case Relation::Geq: return sgn(c.rhs) > 0;
    case Relation::Gt: return sgn(c.rhs) >= 0;
  }
  return false;
}

}  // namespace

bool Polyhedron::is_empty() const {
  for (const auto& c : constraints_)
    if (trivially_false(c)) return true;
  const auto lp = slack_lp(*this, std::vector<bool>(constraints_.size(), false), false);
  const auto r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible) return true;
  return !lp.objective.empty() && sgn(r.value) <= 0;
}

namespace {

// Inequalities that hold with equality on the whole closure of a nonempty cell.
std::vector<bool> implicit_equalities(const Polyhedron& p) {
  const auto& cs = p.constraints();
  std::vector<bool> implicit(cs.size(), false);
  const Polyhedron cl = p.closure();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].rel == Relation::Eq) continue;
    LinearProgram lp;
    lp.nvars = p.rank();
    for (const auto& c : cl.constraints())
      lp.add(c.normal, c.rel == Relation::Eq ? RowSense::Eq : RowSense::Ge, c.rhs);
    lp.objective = cs[i].normal;
    const auto r = solve_lp(lp);
    implicit[i] = r.status == LpStatus::Optimal && r.value == cs[i].rhs;
  }
  return implicit;
}

}  // namespace

int Polyhedron::dimension() const {
  if (is_empty()) return -1;
  const auto implicit = implicit_equalities(*this);
  std::vector<RVector> eqs;
  for (std::size_t i = 0; i < constraints_.size(); ++i)
    if (constraints_[i].rel == Relation::Eq || implicit[i]) eqs.push_back(constraints_[i].normal);
  return static_cast<int>(rank_ - sigmatrop::rank(eqs, rank_));
}

std::optional<RVector> Polyhedron::interior_point() const {
  if (is_empty()) return std::nullopt;
  const auto implicit = implicit_equalities(*this);
  auto lp = slack_lp(*this, implicit, true);
  RVector t(rank_ + 1);
  t[rank_] = 1;
  lp.objective = t;
  const auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return RVector(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(rank_));
}

Polyhedron Polyhedron::closure() const {
  Polyhedron p = *this;
  for (auto& c : p.constraints_)
    if (c.rel == Relation::Gt) c.rel = Relation::Geq;
  return p;
}

Polyhedron Polyhedron::recession() const {
  Polyhedron p = closure();
  for (auto& c : p.constraints_) c.rhs = 0;
  return p;
}

Polyhedron Polyhedron::negated() const {
  Polyhedron p = *this;
  for (auto& c : p.constraints_)
    for (auto& a : c.normal) a = -a;
  return p;
}

std::optional<Polyhedron> Polyhedron::local_cone(const RVector& x) const {
  Polyhedron lc(rank_);
  for (const auto& c : constraints_) {
    const Rational v = dot(c.normal, x);
    if (c.rel == Relation::Eq) {
      if (v != c.rhs) return std::nullopt;
      lc.add(c.normal, Relation::Eq);
    } else if (v < c.rhs) {
      return std::nullopt;
    } else if (v == c.rhs) {
      lc.add(c.normal, c.rel);
    }
  }
  return lc;
}

Polyhedron Polyhedron::conify() const {
  struct Row {
    RVector a;
    Rational ct;
    Relation rel;
  };
  std::vector<Row> rows;
  for (const auto& c : constraints_) rows.push_back({c.normal, Rational(-c.rhs), c.rel});
  rows.push_back({RVector(rank_), Rational(1), Relation::Gt});

  Polyhedron out(rank_);
  auto sub = std::find_if(rows.begin(), rows.end(),
                          [](const Row& r) { return r.rel == Relation::Eq && sgn(r.ct) != 0; });
  if (sub != rows.end()) {
    const Row s = *sub;
    for (const auto& r : rows) {
      RVector a = r.a;
      for (std::size_t j = 0; j < rank_; ++j) a[j] -= r.ct * s.a[j] / s.ct;
      out.add(std::move(a), r.rel);
    }
    return out.simplified();
  }
  std::vector<const Row*> lower, upper;
  for (const auto& r : rows) {
    if (sgn(r.ct) == 0)
      out.add(r.a, r.rel);
    else if (sgn(r.ct) > 0)
      lower.push_back(&r);
    else
      upper.push_back(&r);
  }
  for (const Row* l : lower)
    for (const Row* u : upper) {
      RVector a(rank_);
      const Rational cu = -u->ct;
      for (std::size_t j = 0; j < rank_; ++j) a[j] = cu * l->a[j] + l->ct * u->a[j];
      const bool strict = l->rel == Relation::Gt || u->rel == Relation::Gt;
      out.add(std::move(a), strict ? Relation::Gt : Relation::Geq);
    }
  return out.simplified();
}

Polyhedron Polyhedron::simplified() const {
  Polyhedron p(rank_);
  std::set<Constraint> seen;
  for (const auto& c : constraints_) {
    if (trivially_false(c)) {
      Polyhedron f(rank_);
      f.constraints_.push_back({RVector(rank_), Relation::Gt, Rational(0)});
      return f;
    }
    if (is_zero(c.normal)) continue;
    Integer l = 1;
    for (const auto& q : c.normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    Integer g = 0;
    for (const auto& q : c.normal) {
      Integer z = q.get_num() * (l / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    const Rational scale = Rational(l) / Rational(g);
    Constraint k{c.normal, c.rel, Rational(c.rhs * scale)};
    for (auto& q : k.normal) q *= scale;
    if (k.rel == Relation::Eq) {
      // Sign convention for equalities: first nonzero coefficient positive.
      auto it = std::find_if(k.normal.begin(), k.normal.end(), [](const Rational& q) { return sgn(q) != 0; });
      if (sgn(*it) < 0) {
        for (auto& q : k.normal) q = -q;
        k.rhs = -k.rhs;
      }
    }
    seen.insert(std::move(k));
  }
  p.constraints_.assign(seen.begin(), seen.end());
  return p;
}

std::string Polyhedron::str() const {
  if (constraints_.empty()) return "R^" + std::to_string(rank_);
  std::ostringstream os;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const auto& c = constraints_[i];
    if (i) os << ", ";
    os << "(";
    for (std::size_t j = 0; j < c.normal.size(); ++j) os << (j ? "," : "") << to_string(c.normal[j]);
    os << ")." << "x " << (c.rel == Relation::Eq ? "=" : c.rel == Relation::Geq ? ">=" : ">") << " "
       << to_string(c.rhs);
  }
  return os.str();
}

// ---------------------------------------------------------------- fans

void Fan::add(Polyhedron p) {
  if (p.rank() != rank) throw DimensionError("fan: cell rank mismatch");
  cells.push_back(std::move(p));
}

bool Fan::contains(const RVector& x) const {
  return std::any_of(cells.begin(), cells.end(), [&](const Polyhedron& p) { return p.contains(x); });
}

bool Fan::empty_set() const {
  return std::all_of(cells.begin(), cells.end(), [](const Polyhedron& p) { return p.is_empty(); });
}

Fan Fan::pruned() const {
  Fan f(rank);
  std::set<std::vector<Constraint>> seen;
  for (const auto& c : cells) {
    if (c.is_empty()) continue;
    auto s = c.simplified();
    if (seen.insert(s.constraints()).second) f.cells.push_back(std::move(s));
  }
  return f;
}

Fan unite(const Fan& a, const Fan& b) {
  if (a.rank != b.rank) throw DimensionError("unite: rank mismatch");
  Fan f = a;
  f.cells.insert(f.cells.end(), b.cells.begin(), b.cells.end());
  return f;
}

Fan intersect(const Fan& a, const Fan& b) {
  if (a.rank != b.rank) throw DimensionError("intersect: rank mismatch");
  Fan f(a.rank);
  for (const auto& p : a.cells)
    for (const auto& q : b.cells) {
      auto r = p.intersect(q);
      if (!r.is_empty()) f.cells.push_back(r.simplified());
    }
  return f;
}

Fan negate(const Fan& a) {
  Fan f(a.rank);
  for (const auto& p : a.cells) f.cells.push_back(p.negated());
  return f;
}

namespace {

std::vector<Constraint> negations(const Constraint& c) {
  RVector neg = c.normal;
  for (auto& q : neg) q = -q;
  switch (c.rel) {
    case Relation::Eq: return {{c.normal, Relation::Gt, c.rhs}, {neg, Relation::Gt, Rational(-c.rhs)}};
    case Relation::Geq: return {{neg, Relation::Gt, Rational(-c.rhs)}};
    case Relation::Gt: return {{neg, Relation::Geq, Rational(-c.rhs)}};
  }
  return {};
}

std::vector<Polyhedron> cell_minus(const Polyhedron& p, const Polyhedron& q) {
  std::vector<Polyhedron> out;
  Polyhedron prefix = p;
  for (const auto& c : q.constraints()) {
    for (const auto& n : negations(c)) {
      Polyhedron piece = prefix;
      piece.add(n);
      if (!piece.is_empty()) out.push_back(piece.simplified());
    }
    prefix.add(c);
    if (prefix.is_empty()) break;
  }
  return out;
}

}  // namespace

Fan subtract(const Fan& a, const Fan& b, Exec exec) {
  if (a.rank != b.rank) throw DimensionError("subtract: rank mismatch");
  std::vector<std::vector<Polyhedron>> parts(a.cells.size());
  for_each_index(a.cells.size(), exec, [&](std::size_t i) {
    if (a.cells[i].is_empty()) return;
    std::vector<Polyhedron> pieces{a.cells[i].simplified()};
    for (const auto& q : b.cells) {
      std::vector<Polyhedron> next;
      for (const auto& piece : pieces) {
        auto rest = cell_minus(piece, q);
        next.insert(next.end(), rest.begin(), rest.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    parts[i] = std::move(pieces);
  });
  Fan f(a.rank);
  for (auto& part : parts)
    for (auto& p : part) f.cells.push_back(std::move(p));
  return f;
}

bool is_subset(const Fan& a, const Fan& b) { return subtract(a, b).empty_set(); }
bool same_set(const Fan& a, const Fan& b) { return is_subset(a, b) && is_subset(b, a); }

SphericalSet SphericalSet::radial_projection(const Fan& f) {
  Fan c(f.rank);
  for (const auto& p : f.cells) {
    if (p.is_empty()) continue;
    auto k = p.conify();
    if (has_nonzero_point(k)) c.cells.push_back(std::move(k));
  }
  return SphericalSet(c.pruned());
}

SphericalSet SphericalSet::whole(std::size_t rank) { return SphericalSet(Fan(rank, {Polyhedron::whole(rank)})); }

SphericalSet SphericalSet::points(std::size_t rank, const std::vector<Direction>& dirs) {
  Fan f(rank);
  for (const auto& d : dirs) f.add(Polyhedron::open_ray(d.vector()).simplified());
  return SphericalSet(f);
}

bool SphericalSet::empty_set() const { return spherically_empty(fan); }

SphericalSet SphericalSet::complement() const {
  Fan rest = subtract(Fan(rank(), {Polyhedron::whole(rank())}), fan);
  Fan out(rank());
  for (auto& c : rest.cells)
    if (has_nonzero_point(c)) out.cells.push_back(std::move(c));
  return SphericalSet(out);
}

bool has_nonzero_point(const Polyhedron& cone) {
  if (!cone.is_conical()) throw std::invalid_argument("has_nonzero_point expects a conical cell");
  return cone.dimension() >= 1;
}

bool spherically_empty(const Fan& conical) {
  return std::none_of(conical.cells.begin(), conical.cells.end(), [](const Polyhedron& p) { return has_nonzero_point(p); });
}

bool meets_antipodally(const Fan& x, const Fan& y, Exec exec) {
  const std::size_t ny = y.cells.size();
  std::vector<char> hit(x.cells.size() * ny, 0);
  for_each_index(hit.size(), exec, [&](std::size_t k) {
    const auto r = x.cells[k / ny].intersect(y.cells[k % ny].negated());
    hit[k] = has_nonzero_point(r) ? 1 : 0;
  });
  return std::find(hit.begin(), hit.end(), 1) != hit.end();
}

bool covers_with_antipodal(const SphericalSet& s) {
  const auto c = s.complement();
  return !meets_antipodally(c.fan, c.fan);
}

// ------------------------------------------------------------------- rays

std::vector<Direction> ConeGenerators::all() const {
  std::set<Direction> out(rays.begin(), rays.end());
  for (const auto& d : lineality) {
    out.insert(d);
    out.insert(-d);
  }
  return {out.begin(), out.end()};
}

namespace {

void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ConeGenerators cone_generators(const Polyhedron& cone) {
  const std::size_t n = cone.rank();
  if (n > 6) throw std::invalid_argument("cone_generators: rank " + std::to_string(n) + " exceeds 6");
  if (!cone.is_conical()) throw std::invalid_argument("cone_generators: cell is not a cone");
  ConeGenerators g;
  if (cone.closure().is_empty()) return g;
  std::vector<RVector> eqs, ineqs;
  for (const auto& c : cone.constraints()) (c.rel == Relation::Eq ? eqs : ineqs).push_back(c.normal);
  std::vector<RVector> all = eqs;
  all.insert(all.end(), ineqs.begin(), ineqs.end());
  const auto lin = nullspace(all, n);
  for (const auto& v : lin) g.lineality.push_back(Direction::of(v));
  std::vector<RVector> base = eqs;
  base.insert(base.end(), lin.begin(), lin.end());
  const std::size_t r = rank(base, n);
  if (r >= n) return g;
  const std::size_t k = n - 1 - r;
  std::set<Direction> found;
  for_each_subset(ineqs.size(), k, [&](const std::vector<std::size_t>& sub) {
    std::vector<RVector> sys = base;
    for (auto i : sub) sys.push_back(ineqs[i]);
    const auto ns = nullspace(sys, n);
    if (ns.size() != 1) return;
    for (int s : {1, -1}) {
      RVector d = ns[0];
      for (auto& q : d) q *= s;
      if (std::all_of(ineqs.begin(), ineqs.end(), [&](const RVector& a) { return sgn(dot(a, d)) >= 0; }))
        found.insert(Direction::of(d));
    }
  });
  g.rays.assign(found.begin(), found.end());
  return g;
}

std::vector<Direction> rays(const Polyhedron& cone) { return cone_generators(cone).all(); }

// ---------------------------------------------------- local cones, tests

Fan local_cone_at(const Fan& f, const RVector& x) {
  Fan out(f.rank);
  for (const auto& p : f.cells) {
    auto lc = p.local_cone(x);
    if (!lc) continue;
    if (has_nonzero_point(*lc)) out.cells.push_back(lc->simplified());
  }
  return out.pruned();
}

Fan local_cone_at_origin(const Fan& f) { return local_cone_at(f, RVector(f.rank)); }

Fan local_cone_at_infinity(const Fan& f) {
  Fan out(f.rank);
  out.add(Polyhedron::point(RVector(f.rank)));
  for (const auto& p : f.cells)
    if (!p.is_empty()) out.add(p.recession());
  return out.pruned();
}

HemisphereResult in_open_hemisphere(const std::vector<Direction>& dirs) {
  if (dirs.empty()) throw std::invalid_argument("in_open_hemisphere: empty list");
  const std::size_t n = dirs[0].rank();
  HemisphereResult res;
  LinearProgram lp;
  lp.nvars = n + 1;
  for (const auto& d : dirs) {
    if (d.rank() != n) throw DimensionError("in_open_hemisphere: rank mismatch");
    RVector a = d.vector();
    a.push_back(-1);
    lp.add(std::move(a), RowSense::Ge, 0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    RVector a(n + 1);
    a[j] = 1;
    lp.add(a, RowSense::Le, 1);
    lp.add(a, RowSense::Ge, -1);
  }
  RVector t(n + 1);
  t[n] = 1;
  lp.add(t, RowSense::Le, 1);
  lp.objective = t;
  const auto r = solve_lp(lp);
  if (r.status == LpStatus::Optimal && sgn(r.value) > 0) {
    res.witness = RVector(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
    return res;
  }
  LinearProgram comb;
  comb.nvars = dirs.size();
  for (std::size_t j = 0; j < n; ++j) {
    RVector a(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) a[i] = Rational(dirs[i].coords[j]);
    comb.add(std::move(a), RowSense::Eq, 0);
  }
  comb.add(RVector(dirs.size(), Rational(1)), RowSense::Eq, 1);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    RVector e(dirs.size());
    e[i] = 1;
    comb.add(std::move(e), RowSense::Ge, 0);
  }
  const auto c = solve_lp(comb);
  if (c.status != LpStatus::Optimal) throw std::logic_error("in_open_hemisphere: neither witness nor combination");
  res.combination = c.x;
  return res;
}

bool verify_hemisphere(const std::vector<Direction>& dirs, const HemisphereResult& r) {
  if (r.witness.has_value() == r.combination.has_value()) return false;
  if (r.witness)
    return std::all_of(dirs.begin(), dirs.end(), [&](const Direction& d) { return sgn(dot(*r.witness, d.vector())) > 0; });
  const auto& w = *r.combination;
  if (w.size() != dirs.size()) return false;
  Rational total = 0;
  RVector sum(dirs[0].rank());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (sgn(w[i]) < 0) return false;
    total += w[i];
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += w[i] * Rational(dirs[i].coords[j]);
  }
  return total == 1 && is_zero(sum);
}

bool balanceable_at(const Fan& f, const RVector& x) {
  if (!f.contains(x)) throw std::invalid_argument("balanceable_at: point not in fan");
  const Fan lc = local_cone_at(f, x);
  std::set<Direction> gens;
  for (const auto& c : lc.cells)
    for (const auto& d : rays(c)) gens.insert(d);
  if (gens.empty()) return true;
  const std::vector<Direction> g(gens.begin(), gens.end());
  LinearProgram lp;
  lp.nvars = g.size();
  for (std::size_t j = 0; j < f.rank; ++j) {
    RVector a(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) a[i] = Rational(g[i].coords[j]);
    lp.add(std::move(a), RowSense::Eq, 0);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    RVector e(g.size());
    e[i] = 1;
    lp.add(std::move(e), RowSense::Ge, 1);
  }
  return solve_lp(lp).status == LpStatus::Optimal;
}

std::optional<int> pure_dimension(const Fan& f) {
  std::vector<Polyhedron> cells;
  std::vector<int> dims;
  for (const auto& c : f.cells) {
    const int d = c.dimension();
    if (d < 0) continue;
    cells.push_back(c);
    dims.push_back(d);
  }
  if (cells.empty()) return std::nullopt;
  std::optional<int> common;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cells.size() && maximal; ++j)
      if (dims[j] > dims[i] && is_subset(Fan(f.rank, {cells[i]}), Fan(f.rank, {cells[j].closure()}))) maximal = false;
    if (!maximal) continue;
    if (common && *common != dims[i]) return std::nullopt;
    common = dims[i];
  }
  return common;
}

}  // namespace sigmatrop
