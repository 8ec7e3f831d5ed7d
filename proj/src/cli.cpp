#include "sigmatrop/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "sigmatrop/amoeba.hpp"
#include "sigmatrop/dynamics.hpp"
#include "sigmatrop/hyperbolic.hpp"
#include "sigmatrop/sigma.hpp"
#include "sigmatrop/tropical.hpp"

namespace sigmatrop::cli {

namespace {

// ------------------------------------------------------------ schema reading

std::string sub(const std::string& path, std::string_view key) { return path + "." + std::string(key); }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void only_keys(const Json& o, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!o.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [k, v] : o.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw SchemaError(sub(path, k), "unknown field");
}

const Json& need(const Json& o, const std::string& path, std::string_view key) {
  const auto it = o.find(std::string(key));
  if (it == o.end()) throw SchemaError(sub(path, key), "missing required field");
  return *it;
}

const Json* opt(const Json& o, std::string_view key) {
  const auto it = o.find(std::string(key));
  return it == o.end() ? nullptr : &*it;
}

const Json& array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t integer_or(const Json& o, const std::string& path, std::string_view key, std::int64_t dflt) {
  const Json* v = opt(o, key);
  return v ? integer(*v, sub(path, key)) : dflt;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

bool boolean_or(const Json& o, const std::string& path, std::string_view key, bool dflt) {
  const Json* v = opt(o, key);
  if (!v) return dflt;
  if (!v->is_boolean()) throw SchemaError(sub(path, key), "expected a boolean");
  return v->get<bool>();
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

Rational rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw SchemaError(path, "expected a rational as \"n/d\" or an integer");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

RVector rvector(const Json& v, const std::string& path) {
  RVector out;
  for (std::size_t i = 0; i < array(v, path).size(); ++i) out.push_back(rational(v[i], at(path, i)));
  return out;
}

CoefficientDomain domain(const Json& v, const std::string& path) {
  const std::string s = text(v, path);
  if (s == "ZZ") return CoefficientDomain::integers();
  if (s == "QQ") return CoefficientDomain::rationals();
  if (s.size() > 4 && s.starts_with("GF(") && s.back() == ')') {
    try {
      return CoefficientDomain::prime_field(std::stoull(s.substr(3, s.size() - 4)));
    } catch (const std::exception& e) {
      throw SchemaError(path, std::string("bad prime field: ") + e.what());
    }
  }
  throw SchemaError(path, "domain must be ZZ, QQ or GF(p)");
}

CoefficientDomain domain_or(const Json& o, const std::string& path, CoefficientDomain dflt) {
  const Json* v = opt(o, "domain");
  return v ? domain(*v, sub(path, "domain")) : dflt;
}

std::size_t rank_of(const Json& o, const std::string& path) {
  const auto r = integer(need(o, path, "rank"), sub(path, "rank"));
  if (r < 1 || r > 12) throw SchemaError(sub(path, "rank"), "rank must be in 1..12");
  return static_cast<std::size_t>(r);
}

// A polynomial is either an expression string or a list of [exponents, coefficient] pairs.
LaurentPoly poly(const Json& v, const std::string& path, std::size_t rank, CoefficientDomain d) {
  if (v.is_string()) {
    try {
      return parse_laurent(v.get<std::string>(), rank, d);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path, e.what());
    }
  }
  LaurentPoly f(rank, d);
  for (std::size_t i = 0; i < array(v, path).size(); ++i) {
    const std::string p = at(path, i);
    const Json& term = v[i];
    if (!term.is_array() || term.size() != 2) throw SchemaError(p, "expected [exponents, coefficient]");
    std::vector<std::int64_t> e;
    for (std::size_t k = 0; k < array(term[0], at(p, 0)).size(); ++k) e.push_back(integer(term[0][k], at(at(p, 0), k)));
    if (e.size() != rank) throw SchemaError(at(p, 0), "exponent vector length differs from rank");
    try {
      f.add_term(Monomial(e), rational(term[1], at(p, 1)));
    } catch (const std::invalid_argument& ex) {
      if (dynamic_cast<const SchemaError*>(&ex)) throw;
      throw SchemaError(at(p, 1), ex.what());
    }
  }
  return f;
}

std::vector<LaurentPoly> polys(const Json& v, const std::string& path, std::size_t rank, CoefficientDomain d) {
  std::vector<LaurentPoly> out;
  for (std::size_t i = 0; i < array(v, path).size(); ++i) out.push_back(poly(v[i], at(path, i), rank, d));
  return out;
}

LaurentMatrix laurent_matrix(const Json& v, const std::string& path, std::size_t rank, CoefficientDomain d) {
  LaurentMatrix m;
  for (std::size_t i = 0; i < array(v, path).size(); ++i) m.push_back(polys(v[i], at(path, i), rank, d));
  return m;
}

Direction direction(const Json& v, const std::string& path) {
  ZVector z;
  for (std::size_t i = 0; i < array(v, path).size(); ++i) z.emplace_back(static_cast<long>(integer(v[i], at(path, i))));
  try {
    return Direction(z);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

ModulePresentation module(const Json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected an object");
  const std::string kind = text(need(v, path, "kind"), sub(path, "kind"));
  if (kind == "scalar") {
    only_keys(v, path, {"kind", "rhos"});
    return ModulePresentation::scalar(rvector(need(v, path, "rhos"), sub(path, "rhos")));
  }
  if (kind == "matrix") {
    only_keys(v, path, {"kind", "mats", "generators"});
    std::vector<QMatrix> mats;
    const Json& ms = array(need(v, path, "mats"), sub(path, "mats"));
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::vector<RVector> rows;
      for (std::size_t r = 0; r < array(ms[i], at(sub(path, "mats"), i)).size(); ++r)
        rows.push_back(rvector(ms[i][r], at(at(sub(path, "mats"), i), r)));
      mats.emplace_back(rows);
    }
    std::vector<RVector> gens;
    const Json& gs = array(need(v, path, "generators"), sub(path, "generators"));
    for (std::size_t i = 0; i < gs.size(); ++i) gens.push_back(rvector(gs[i], at(sub(path, "generators"), i)));
    return ModulePresentation::matrix(std::move(mats), std::move(gens));
  }
  if (kind == "cyclic") {
    only_keys(v, path, {"kind", "rank", "domain", "gens"});
    const std::size_t r = rank_of(v, path);
    const CoefficientDomain d = domain(need(v, path, "domain"), sub(path, "domain"));
    return ModulePresentation::cyclic(r, d, polys(need(v, path, "gens"), sub(path, "gens"), r, d));
  }
  if (kind == "direct_sum") {
    only_keys(v, path, {"kind", "parts"});
    std::vector<ModulePresentation> parts;
    const Json& ps = array(need(v, path, "parts"), sub(path, "parts"));
    for (std::size_t i = 0; i < ps.size(); ++i) parts.push_back(module(ps[i], at(sub(path, "parts"), i)));
    return ModulePresentation::direct_sum(std::move(parts));
  }
  throw SchemaError(sub(path, "kind"), "module kind must be scalar, matrix, cyclic or direct_sum");
}

SearchBounds search_bounds(const Json* v, const std::string& path) {
  SearchBounds b;
  if (!v) return b;
  only_keys(*v, path, {"box", "coeff_bound", "max_sparse", "sparse_budget", "max_full_columns"});
  b.box = static_cast<int>(integer_or(*v, path, "box", b.box));
  if (const Json* c = opt(*v, "coeff_bound")) {
    const Rational q = rational(*c, sub(path, "coeff_bound"));
    if (q.get_den() != 1 || q < 1) throw SchemaError(sub(path, "coeff_bound"), "expected a positive integer");
    b.coeff_bound = q.get_num();
  }
  b.max_sparse = static_cast<std::size_t>(integer_or(*v, path, "max_sparse", static_cast<std::int64_t>(b.max_sparse)));
  b.sparse_budget =
      static_cast<std::size_t>(integer_or(*v, path, "sparse_budget", static_cast<std::int64_t>(b.sparse_budget)));
  b.max_full_columns = static_cast<std::size_t>(
      integer_or(*v, path, "max_full_columns", static_cast<std::int64_t>(b.max_full_columns)));
  if (b.box < 1) throw SchemaError(sub(path, "box"), "box must be positive");
  return b;
}

// ------------------------------------------------------------ serialization

Json js(const Rational& q) { return sigmatrop::to_string(q); }
Json js(const Integer& z) { return sigmatrop::to_string(z); }
Json js(const Extended& e) { return e.is_infinite() ? Json("inf") : js(e.value()); }

Json js(const RVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(js(q));
  return a;
}

Json js(const Direction& d) {
  Json a = Json::array();
  for (const auto& z : d.coords) a.push_back(z.get_si());
  return a;
}

Json js(const std::vector<Direction>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(js(d));
  return a;
}

Json js(const LaurentPoly& f) {
  Json terms = Json::array();
  for (const auto& [g, c] : f.terms()) terms.push_back(Json::array({Json(g.exps), js(c)}));
  return Json{{"text", sigmatrop::to_string(f)}, {"domain", f.domain().name()}, {"terms", terms}};
}

const char* rel_name(Relation r) {
  switch (r) {
    case Relation::Eq:
      return "=";
    case Relation::Geq:
      return ">=";
    case Relation::Gt:
      return ">";
  }
  return "?";
}

// Rays of a cell: the closed cone for conical cells, the recession cone otherwise.
ConeGenerators generators_of(const Polyhedron& p) {
  if (p.rank() > 6 || p.is_empty()) return {};
  return cone_generators(p.is_conical() ? p.closure() : p.recession().closure());
}

Json js(const Polyhedron& p) {
  Json cons = Json::array();
  for (const auto& c : p.constraints())
    cons.push_back(Json{{"normal", js(c.normal)}, {"rel", rel_name(c.rel)}, {"rhs", js(c.rhs)}});
  const auto g = generators_of(p);
  return Json{{"constraints", cons},
              {"conical", p.is_conical()},
              {"dimension", p.dimension()},
              {"rays", js(g.rays)},
              {"lineality", js(g.lineality)}};
}

// Unique ray directions of a fan, lineality spaces contributing both signs.
std::vector<Direction> fan_rays(const std::vector<Polyhedron>& cells) {
  std::set<Direction> all;
  for (const auto& c : cells) {
    const auto g = generators_of(c);
    for (const auto& r : g.rays) all.insert(r);
    for (const auto& l : g.lineality) {
      all.insert(l);
      all.insert(-l);
    }
  }
  return {all.begin(), all.end()};
}

Json js(const Fan& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells) cells.push_back(js(c));
  return Json{{"rank", f.rank}, {"cells", cells}, {"rays", js(fan_rays(f.cells))}};
}

// ------------------------------------------------------------------ commands

struct Partial {
  Json result;
  int exit_code = kOk;
  Json provenance = Json::object();
};

Partial run_trop(const Json& p, const RunOptions& o) {
  const std::string path = "payload";
  only_keys(p, path, {"rank", "domain", "polys", "valuation", "local_cones"});
  const std::size_t n = rank_of(p, path);
  const CoefficientDomain d = domain_or(p, path, CoefficientDomain::rationals());
  const auto fs = polys(need(p, path, "polys"), sub(path, "polys"), n, d);
  if (fs.empty()) throw SchemaError(sub(path, "polys"), "at least one polynomial required");
  Valuation v = Valuation::trivial();
  bool global = false;
  if (const Json* vj = opt(p, "valuation")) {
    const std::string vp = sub(path, "valuation");
    only_keys(*vj, vp, {"kind", "p"});
    const std::string kind = text(need(*vj, vp, "kind"), sub(vp, "kind"));
    if (kind == "padic") {
      const auto prime = integer(need(*vj, vp, "p"), sub(vp, "p"));
      if (prime < 2) throw SchemaError(sub(vp, "p"), "expected a prime");
      v = Valuation::padic(static_cast<std::uint64_t>(prime));
    } else if (kind == "global_z") {
      global = true;
    } else if (kind != "trivial") {
      throw SchemaError(sub(vp, "kind"), "valuation kind must be trivial, padic or global_z");
    }
  }
  const bool local = boolean_or(p, path, "local_cones", true);

  Partial out;
  Fan fan(n);
  if (global) {
    if (fs.size() != 1) throw SchemaError(sub(path, "polys"), "global_z takes exactly one polynomial");
    const auto g = global_tropical_Z(fs[0].with_domain(CoefficientDomain::integers()), o.exec);
    fan = g.fan;
    Json padic = Json::object();
    for (const auto& [prime, t] : g.padic) padic[std::to_string(prime)] = js(t.fan);
    out.result = Json{{"kind", "global_z"}, {"fan", js(g.fan)}, {"trivial", js(g.trivial.fan)}, {"padic", padic}};
  } else {
    std::vector<ValuedPoly> vs;
    for (const auto& f : fs) vs.push_back({f, v});
    const TropicalFan t = vs.size() == 1 ? trop_hypersurface(vs[0], o.exec) : trop_prevariety(vs, o.exec);
    fan = t.fan;
    out.result = Json{{"kind", vs.size() == 1 ? "hypersurface" : "prevariety"},
                      {"valuation", v.str()},
                      {"fan", js(t.fan)},
                      {"unit", t.unit},
                      {"outer_bound", t.outer_bound}};
  }
  const auto dim = pure_dimension(fan);
  out.result["pure_dimension"] = dim ? Json(*dim) : Json(nullptr);
  const RVector origin(n, Rational(0));
  out.result["balanceable_at_origin"] = fan.contains(origin) ? Json(balanceable_at(fan, origin)) : Json(nullptr);
  if (local) {
    out.result["lc_origin"] = js(local_cone_at_origin(fan));
    out.result["lc_infinity"] = js(local_cone_at_infinity(fan));
  }
  return out;
}

Json fpm_json(const FpmReport& r, int m) {
  return Json{{"m", m <= 0 ? Json("inf") : Json(m)},
              {"value", to_string(r.value)},
              {"conjectural", r.conjectural},
              {"failing_subset", js(r.failing_subset)}};
}

std::vector<int> fpm_list(const Json& p, const std::string& path) {
  std::vector<int> ms;
  if (const Json* v = opt(p, "fpm"))
    for (std::size_t i = 0; i < array(*v, sub(path, "fpm")).size(); ++i)
      ms.push_back(static_cast<int>(integer((*v)[i], at(sub(path, "fpm"), i))));
  return ms;
}

Json predicates(const SigmaResult& r, const std::vector<int>& ms, Exec exec, bool& undecided) {
  const Decision fp = metabelian_fp(r, exec), fpi = metabelian_fp_infinity(r);
  undecided = fp == Decision::Undecided || fpi == Decision::Undecided;
  Json out{{"metabelian_fp", to_string(fp)}, {"metabelian_fp_infinity", to_string(fpi)}};
  std::vector<Polyhedron> cells;
  for (const auto& c : r.complement) cells.push_back(c.cone);
  const auto dirs = finite_directions(cells);
  out["complement_directions"] = dirs ? js(*dirs) : Json(nullptr);
  Json fpm = Json::array();
  for (int m : ms) {
    const FpmReport f = fpm_test(r, m);
    if (f.value == Decision::Undecided) undecided = true;
    fpm.push_back(fpm_json(f, m));
  }
  out["fpm"] = fpm;
  return out;
}

SigmaResult sigma_with_escalation(const ModulePresentation& m, SigmaOptions so, const RunOptions& o, Json& boxes) {
  SigmaResult r = compute_sigma(m, so);
  boxes.push_back(so.search.box);
  while (!r.exact() && o.bound_escalation > so.search.box) {
    so.search.box = std::min(2 * so.search.box, o.bound_escalation);
    r = compute_sigma(m, so);
    boxes.push_back(so.search.box);
  }
  return r;
}

Json sigma_json(const SigmaResult& r, const ModulePresentation& m, Exec exec) {
  Json sig = Json::array(), comp = Json::array();
  for (const auto& c : r.sigma) sig.push_back(Json{{"cone", js(c.cone)}, {"certificate", js(c.certificate)}});
  for (const auto& c : r.complement) comp.push_back(Json{{"cone", js(c.cone)}, {"witness", c.witness}});
  std::vector<Polyhedron> sig_cells, comp_cells;
  for (const auto& c : r.sigma) sig_cells.push_back(c.cone);
  for (const auto& c : r.complement) comp_cells.push_back(c.cone);
  return Json{{"module", m.str()},
              {"rank", r.rank},
              {"exact", r.exact()},
              {"sigma", sig},
              {"sigma_rays", js(fan_rays(sig_cells))},
              {"complement", comp},
              {"complement_rays", js(fan_rays(comp_cells))},
              {"undecided", js(r.undecided)},
              {"outer_candidate", r.outer_candidate ? js(*r.outer_candidate) : Json(nullptr)},
              {"notes", r.notes},
              {"certificates_verified", certificates_verified(r, m)},
              {"pairwise_disjoint", pairwise_disjoint(r, exec)}};
}

Partial run_sigma(const Json& p, const RunOptions& o) {
  const std::string path = "payload";
  only_keys(p, path, {"module", "search", "fpm"});
  const ModulePresentation m = module(need(p, path, "module"), sub(path, "module"));
  SigmaOptions so{search_bounds(opt(p, "search"), sub(path, "search")), o.exec};
  Partial out;
  Json boxes = Json::array();
  const SigmaResult r = sigma_with_escalation(m, so, o, boxes);
  out.result = sigma_json(r, m, o.exec);
  bool undecided = false;
  out.result["predicates"] = predicates(r, fpm_list(p, path), o.exec, undecided);
  out.provenance["search_boxes"] = boxes;
  if (!r.exact()) out.exit_code = kUndecided;
  return out;
}

Partial run_group(const Json& p, const RunOptions& o) {
  const std::string path = "payload";
  only_keys(p, path, {"module", "search", "rank", "complement", "fpm"});
  SigmaResult r;
  Partial out;
  if (const Json* mj = opt(p, "module")) {
    if (opt(p, "complement")) throw SchemaError(sub(path, "complement"), "give either module or complement");
    const ModulePresentation m = module(*mj, sub(path, "module"));
    Json boxes = Json::array();
    r = sigma_with_escalation(m, SigmaOptions{search_bounds(opt(p, "search"), sub(path, "search")), o.exec}, o,
                              boxes);
    out.provenance["search_boxes"] = boxes;
  } else {
    if (opt(p, "search")) throw SchemaError(sub(path, "search"), "search bounds need a module");
    const std::size_t n = rank_of(p, path);
    r.rank = n;
    r.undecided = Fan(n);
    const Json& cj = array(need(p, path, "complement"), sub(path, "complement"));
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const Direction d = direction(cj[i], at(sub(path, "complement"), i));
      if (d.rank() != n) throw SchemaError(at(sub(path, "complement"), i), "direction length differs from rank");
      r.complement.push_back({Polyhedron::open_ray(d.vector()), "given"});
    }
  }
  bool undecided = false;
  out.result = predicates(r, fpm_list(p, path), o.exec, undecided);
  out.result["sigma_exact"] = r.exact();
  if (undecided) out.exit_code = kUndecided;
  return out;
}

Partial run_dyn(const Json& p, const RunOptions&) {
  const std::string path = "payload";
  only_keys(p, path, {"rank", "matrix", "chi", "psi", "k_max", "c", "iterations", "directions"});
  const std::size_t n = rank_of(p, path);
  const CoefficientDomain zz = CoefficientDomain::integers();
  const PushMap phi(laurent_matrix(need(p, path, "matrix"), sub(path, "matrix"), n, zz));
  Partial out;
  const PushNorm nm = norm(phi);
  out.result = Json{{"size", phi.size()},
                    {"rank", phi.rank()},
                    {"norm_squared", js(nm.squared)},
                    {"norm", nm.value},
                    {"sigma_of_push", js(sigma_of_push(phi))}};
  std::optional<Character> chi;
  if (const Json* cj = opt(p, "chi")) {
    chi = Character(rvector(*cj, sub(path, "chi")));
    if (chi->rank() != n) throw SchemaError(sub(path, "chi"), "character length differs from rank");
    const Extended g = gsh(phi, *chi);
    out.result["gsh"] = js(g);
    out.result["pushes"] = g.is_infinite() || sgn(g.value()) > 0;
    if (!chi->is_zero()) out.result["gsh_unit"] = gsh_unit(phi, *chi);
  }
  if (const Json* psj = opt(p, "psi")) {
    if (!chi) throw SchemaError(sub(path, "psi"), "compose check needs chi");
    const PushMap psi(laurent_matrix(*psj, sub(path, "psi"), n, zz));
    const auto k_max = integer_or(p, path, "k_max", 5);
    const ComposeReport c = compose_gsh_check(phi, psi, *chi, static_cast<int>(k_max));
    Json powers = Json::array();
    for (const auto& e : c.gsh_powers) powers.push_back(js(e));
    out.result["compose"] = Json{{"pass", c.pass},
                                 {"gsh_phi", js(c.gsh_phi)},
                                 {"gsh_psi", js(c.gsh_psi)},
                                 {"gsh_composite", js(c.gsh_composite)},
                                 {"gsh_powers", powers},
                                 {"failures", c.failures}};
    if (!c.pass) out.exit_code = kError;
  }
  std::vector<Direction> dirs;
  if (const Json* c = opt(p, "c")) {
    const auto iters = integer_or(p, path, "iterations", 12);
    const LambdaEstimate e = lambda_of_push_estimate(phi, polys(*c, sub(path, "c"), n, zz), static_cast<int>(iters));
    out.result["lambda_estimate"] = Json{{"directions", js(e.directions)},
                                         {"died_out", e.died_out},
                                         {"died_at", e.died_at},
                                         {"iterations", e.iterations}};
    dirs = e.directions;
  }
  if (const Json* dj = opt(p, "directions")) {
    dirs.clear();
    for (std::size_t i = 0; i < array(*dj, sub(path, "directions")).size(); ++i)
      dirs.push_back(direction((*dj)[i], at(sub(path, "directions"), i)));
  }
  if (chi && !dirs.empty() && !chi->is_zero()) {
    const AngleReport a = check_angle_bound(phi, *chi, dirs);
    Json checks = Json::array();
    for (const auto& c : a.checks)
      checks.push_back(Json{{"direction", js(c.dir)}, {"angle", c.angle}, {"exact", c.exact}, {"pass", c.pass}});
    out.result["angle_bound"] =
        Json{{"pass", a.pass}, {"bound", a.bound}, {"ratio_squared", js(a.ratio_sq)}, {"checks", checks}};
    if (!a.pass) out.exit_code = kError;
  }
  return out;
}

Json js(const h2::ComplexQ& z) { return Json{{"re", js(z.re)}, {"im", js(z.im)}}; }

Json js(const h2::GroupRingElement& c) {
  Json a = Json::array();
  for (const auto& [g, n] : c) a.push_back(Json{{"k", g.k}, {"b", js(g.b)}, {"coefficient", js(n)}});
  return a;
}

Partial run_h2(const Json& p, const RunOptions& o) {
  const std::string path = "payload";
  only_keys(p, path, {"p", "checks"});
  const auto pr = integer(need(p, path, "p"), sub(path, "p"));
  if (pr < 2) throw SchemaError(sub(path, "p"), "p must be at least 2");
  const auto prime = static_cast<std::uint64_t>(pr);
  Partial out;
  Json reports = Json::array();
  bool all_pass = true, inconclusive = false;
  const Json& checks = array(need(p, path, "checks"), sub(path, "checks"));
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string cp = at(sub(path, "checks"), i);
    const Json& c = checks[i];
    if (!c.is_object()) throw SchemaError(cp, "expected an object");
    const std::string name = text(need(c, cp, "name"), sub(cp, "name"));
    Json rep{{"name", name}};
    if (name == "support_at_zero_A") {
      only_keys(c, cp, {"name", "k", "j_max"});
      const auto r = h2::verify_support_at_zero_A(prime, integer(need(c, cp, "k"), sub(cp, "k")),
                                                  integer(need(c, cp, "j_max"), sub(cp, "j_max")));
      Json rows = Json::array();
      for (const auto& row : r.rows)
        rows.push_back(Json{{"j", row.j},
                            {"epsilon", js(row.epsilon)},
                            {"point", js(row.point)},
                            {"busemann_log_arg", js(row.busemann_arg)},
                            {"pass", row.pass}});
      rep["rows"] = rows;
      rep["strictly_increasing"] = r.strictly_increasing;
      rep["pass"] = r.pass;
      all_pass = all_pass && r.pass;
    } else if (name == "infinity_obstruction_A") {
      only_keys(c, cp, {"name", "q", "coeff_bound", "k_max"});
      const auto r = h2::verify_infinity_obstruction_A(prime, rational(need(c, cp, "q"), sub(cp, "q")),
                                                      integer_or(c, cp, "coeff_bound", 10),
                                                      integer_or(c, cp, "k_max", 4), o.exec);
      Json sols = Json::array();
      for (const auto& s : r.solutions) sols.push_back(s);
      rep.update(Json{{"status", r.status},
                      {"applies", r.applies},
                      {"k_min", r.k_min},
                      {"divisor", js(r.divisor)},
                      {"symbolic_pass", r.symbolic_pass},
                      {"two_p_divides", r.two_p_divides},
                      {"candidates", r.candidates},
                      {"solutions", sols},
                      {"brute_force_pass", r.brute_force_pass},
                      {"pass", r.pass}});
      if (r.status == "inconclusive")
        inconclusive = true;
      else
        all_pass = all_pass && r.pass;
    } else if (name == "push_B") {
      only_keys(c, cp, {"name", "samples"});
      const auto r = h2::verify_push_B(prime, static_cast<int>(integer_or(c, cp, "samples", 20)));
      Json samples = Json::array();
      for (const auto& s : r.samples)
        samples.push_back(Json{{"lambda", js(s.lambda)},
                               {"epsilon_preserved", s.epsilon_preserved},
                               {"shift_exact", s.shift_exact}});
      rep.update(Json{{"shift_log_arg", js(r.shift_arg)}, {"shift", r.shift}, {"samples", samples}, {"pass", r.pass}});
      all_pass = all_pass && r.pass;
    } else if (name == "zero_obstruction_B" || name == "zero_search") {
      only_keys(c, cp, {"name", "q", "coeff_bound", "size_bound", "k_max", "module"});
      h2::Module mod = h2::Module::B;
      if (const Json* mj = opt(c, "module")) {
        if (name != "zero_search") throw SchemaError(sub(cp, "module"), "unknown field");
        const std::string ms = text(*mj, sub(cp, "module"));
        if (ms != "A" && ms != "B") throw SchemaError(sub(cp, "module"), "module must be A or B");
        mod = ms == "A" ? h2::Module::A : h2::Module::B;
      }
      const auto r = h2::zero_obstruction_search(
          prime, rational(need(c, cp, "q"), sub(cp, "q")), integer_or(c, cp, "coeff_bound", 5),
          integer_or(c, cp, "size_bound", 3), integer_or(c, cp, "k_max", 3), mod, o.exec);
      rep.update(Json{{"module", h2::to_string(r.module)},
                      {"coeff_bound", r.coeff_bound},
                      {"size_bound", r.size_bound},
                      {"k_max", r.k_max},
                      {"elements_in_horoball", r.elements_in_horoball},
                      {"candidates", r.candidates},
                      {"witness", r.witness ? js(*r.witness) : Json(nullptr)},
                      {"pass", r.pass}});
      // Over A a witness is the expected outcome; only B asserts absence.
      if (name == "zero_obstruction_B") all_pass = all_pass && r.pass;
    } else {
      throw SchemaError(sub(cp, "name"), "unknown check");
    }
    reports.push_back(rep);
  }
  out.result = Json{{"p", prime}, {"checks", reports}, {"all_pass", all_pass}};
  if (!all_pass)
    out.exit_code = kError;
  else if (inconclusive)
    out.exit_code = kUndecided;
  return out;
}

Partial run_amoeba(const Json& p, const RunOptions& o) {
  const std::string path = "payload";
  only_keys(p, path, {"poly", "angles", "s_grid", "min_radius", "angle_bins", "include_points"});
  const LaurentPoly f = poly(need(p, path, "poly"), sub(path, "poly"), 2, CoefficientDomain::rationals());
  const auto angles = integer_or(p, path, "angles", 64);
  std::vector<double> grid = default_s_grid();
  if (const Json* g = opt(p, "s_grid")) {
    grid.clear();
    for (std::size_t i = 0; i < array(*g, sub(path, "s_grid")).size(); ++i)
      grid.push_back(number((*g)[i], at(sub(path, "s_grid"), i)));
  }
  const double min_radius = opt(p, "min_radius") ? number(p["min_radius"], sub(path, "min_radius")) : 15.0;
  const auto bins = integer_or(p, path, "angle_bins", 360);
  const bool include_points = boolean_or(p, path, "include_points", true);

  const AmoebaCloud cloud = amoeba_sample(f, grid, static_cast<int>(angles), o.exec);
  const LimitDirections ld = log_limit_directions(cloud, min_radius, static_cast<int>(bins));
  const Fan expected = local_cone_at_infinity(trop_hypersurface({f, Valuation::trivial()}).fan);
  const auto rays = fan_rays(expected.cells);
  Json dirs = Json::array();
  double worst = 0;
  for (const auto& b : ld.bins) {
    double best = 180;
    for (const auto& r : rays) {
      const auto u = r.unit();
      best = std::min(best, angle_degrees(b.dir, {u[0], u[1]}));
    }
    worst = std::max(worst, best);
    dirs.push_back(Json{{"dir", Json::array({b.dir[0], b.dir[1]})}, {"count", b.count}, {"angle_to_ray", best}});
  }
  Partial out;
  out.result = Json{{"poly", js(f)},
                    {"points", cloud.points.size()},
                    {"dropped", cloud.dropped},
                    {"min_radius", cloud.min_radius},
                    {"max_radius", cloud.max_radius},
                    {"no_far_points", ld.no_far_points},
                    {"limit_directions", dirs},
                    {"max_angle_to_ray", worst},
                    {"expected", js(expected)}};
  if (include_points) {
    Json pts = Json::array();
    for (const auto& q : cloud.points) pts.push_back(Json::array({q[0], q[1]}));
    out.result["cloud"] = pts;
  }
  return out;
}

Json error_doc(const Json& echo, std::string_view kind, const std::string& message, const std::string& path) {
  return Json{{"version", 1}, {"job", echo}, {"error", {{"kind", kind}, {"message", message}, {"path", path}}}};
}

}  // namespace

RunOutcome run(const Json& job, const RunOptions& opt_in) {
  const Json echo = job;
  try {
    only_keys(job, "job", {"version", "command", "payload"});
    if (integer(need(job, "job", "version"), "job.version") != 1) throw SchemaError("job.version", "unsupported version");
    const std::string cmd = text(need(job, "job", "command"), "job.command");
    const Json& payload = need(job, "job", "payload");
    if (!payload.is_object()) throw SchemaError("payload", "expected an object");
    Partial part;
    if (cmd == "trop")
      part = run_trop(payload, opt_in);
    else if (cmd == "sigma")
      part = run_sigma(payload, opt_in);
    else if (cmd == "group")
      part = run_group(payload, opt_in);
    else if (cmd == "dyn")
      part = run_dyn(payload, opt_in);
    else if (cmd == "h2")
      part = run_h2(payload, opt_in);
    else if (cmd == "amoeba")
      part = run_amoeba(payload, opt_in);
    else
      throw SchemaError("job.command", "unknown command '" + cmd + "'");
    Json prov{{"tool", "sigmatrop"},
              {"tool_version", kToolVersion},
              {"deterministic_order", "parallel slots merged in index order"},
              {"bound_escalation", opt_in.bound_escalation}};
    prov.update(part.provenance);
    return {Json{{"version", 1}, {"job", echo}, {"result", part.result}, {"provenance", prov}}, part.exit_code};
  } catch (const SchemaError& e) {
    return {error_doc(echo, "schema", e.message(), e.path()), kSchema};
  } catch (const UnsupportedError& e) {
    return {error_doc(echo, "unsupported", e.what(), ""), kError};
  } catch (const ScaleGuardError& e) {
    return {error_doc(echo, "scale_guard", e.what(), ""), kError};
  } catch (const std::invalid_argument& e) {
    return {error_doc(echo, "invalid_argument", e.what(), ""), kError};
  } catch (const std::exception& e) {
    return {error_doc(echo, "runtime", e.what(), ""), kError};
  }
}

RunOutcome run_text(std::string_view text, const RunOptions& opt) {
  Json job;
  try {
    job = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return {error_doc(nullptr, "schema", e.what(), "job"), kSchema};
  }
  return run(job, opt);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<std::filesystem::path> emit_plot_data(const Json& doc, const std::filesystem::path& dir) {
  if (!doc.contains("result")) throw std::invalid_argument("emit_plot_data: document has no result");
  const Json& r = doc["result"];
  struct Plot {
    std::string name;
    std::size_t rank;
    const Json* rays;
  };
  std::vector<Plot> fans;
  for (const char* key : {"fan", "undecided", "expected"})
    if (r.contains(key) && r[key].is_object() && r[key].contains("rays"))
      fans.push_back({key, r[key]["rank"].get<std::size_t>(), &r[key]["rays"]});
  for (const char* key : {"sigma", "complement"})
    if (r.contains(std::string(key) + "_rays"))
      fans.push_back({key, r["rank"].get<std::size_t>(), &r[std::string(key) + "_rays"]});
  const bool cloud = r.contains("cloud");
  if (fans.empty() && !cloud) throw std::invalid_argument("emit_plot_data: result has no fan or amoeba cloud");
  for (const auto& f : fans)
    if (f.rank > 3) throw UnsupportedError("emit_plot_data: fan of rank " + std::to_string(f.rank) + " cannot be plotted");

  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  static const char* heads[] = {"dir_x", "dir_y", "dir_z"};
  for (const auto& f : fans) {
    const auto path = dir / (f.name + ".csv");
    std::ofstream os(path);
    for (std::size_t i = 0; i < f.rank; ++i) os << (i ? "," : "") << heads[i];
    os << "\n" << std::setprecision(17);
    for (const auto& ray : *f.rays) {
      double len = 0;
      for (const auto& c : ray) len += c.get<double>() * c.get<double>();
      len = std::sqrt(len);
      for (std::size_t i = 0; i < ray.size(); ++i) os << (i ? "," : "") << ray[i].get<double>() / len;
      os << "\n";
    }
    written.push_back(path);
  }
  if (cloud) {
    const auto path = dir / "amoeba.csv";
    std::ofstream os(path);
    os << "s,ln_abs_y\n" << std::setprecision(17);
    for (const auto& pt : r["cloud"]) os << pt[0].get<double>() << "," << pt[1].get<double>() << "\n";
    written.push_back(path);
  }
  return written;
}

}  // namespace sigmatrop::cli
