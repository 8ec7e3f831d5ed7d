#include "sigmatrop/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sigmatrop::h2 {

namespace {

void check_p(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
}

Rational pw(std::uint64_t p, std::int64_t e) { return rational_power(Rational(Integer(std::to_string(p))), e); }

Rational abs2(const ComplexQ& z) { return z.re * z.re + z.im * z.im; }

double ln(const Rational& q) { return std::log(q.get_d()); }

}  // namespace

void validate(const GroupElement& g, std::uint64_t p) {
  check_p(p);
  Integer den = g.b.get_den();
  const Integer pz(std::to_string(p));
  while (den % pz == 0) den /= pz;
  if (den != 1) throw std::invalid_argument("group element: b = " + sigmatrop::to_string(g.b) + " is not in Z[1/p]");
}

GroupElement t_power(std::int64_t k) { return {k, 0}; }

GroupElement compose(const GroupElement& g, const GroupElement& h, std::uint64_t p) {
  check_p(p);
  return {g.k + h.k, pw(p, g.k) * h.b + pw(p, -h.k) * g.b};
}

GroupElement inverse(const GroupElement& g, std::uint64_t p) {
  check_p(p);
  return {-g.k, -g.b};
}

QMatrix as_matrix(const GroupElement& g, std::uint64_t p) {
  QMatrix m(2, 2);
  m(0, 0) = pw(p, g.k);
  m(0, 1) = g.b;
  m(1, 1) = pw(p, -g.k);
  return m;
}

ComplexQ mobius_act(const GroupElement& g, const ComplexQ& z, std::uint64_t p) {
  check_p(p);
  if (sgn(z.im) <= 0) throw std::invalid_argument("mobius_act: point not in the upper half-plane");
  const Rational s = pw(p, 2 * g.k);
  return {s * z.re + pw(p, g.k) * g.b, s * z.im};
}

std::string BoundaryPoint::str() const { return at_infinity ? "inf" : sigmatrop::to_string(x); }

BoundaryPoint mobius_act(const GroupElement& g, const BoundaryPoint& xi, std::uint64_t p) {
  check_p(p);
  if (xi.at_infinity) return xi;
  return BoundaryPoint::real(pw(p, 2 * g.k) * xi.x + pw(p, g.k) * g.b);
}

BusemannValue busemann(const BoundaryPoint& xi, const ComplexQ& z) {
  if (sgn(z.im) <= 0) throw std::invalid_argument("busemann: point not in the upper half-plane");
  BusemannValue v;
  if (xi.at_infinity) {
    v.log_arg = z.im;
  } else {
    const ComplexQ d{z.re - xi.x, z.im};
    v.log_arg = (1 + xi.x * xi.x) * z.im / abs2(d);
  }
  v.value = ln(v.log_arg);
  return v;
}

bool Horoball::contains(const ComplexQ& z) const {
  if (sgn(level_arg) <= 0) throw std::invalid_argument("horoball: level log-argument must be positive");
  return busemann(xi, z).log_arg >= level_arg;
}

Horoball mobius_act(const GroupElement& g, const Horoball& hb, std::uint64_t p) {
  const BoundaryPoint xi = mobius_act(g, hb.xi, p);
  const Rational shift = busemann(xi, mobius_act(g, ComplexQ{0, 1}, p)).log_arg;
  return {xi, hb.level_arg * shift};
}

std::string to_string(Module m) { return m == Module::A ? "A" : "B"; }

Rational epsilon(const GroupElement& g, Module m, std::uint64_t p) {
  check_p(p);
  return pw(p, m == Module::A ? 2 * g.k : -2 * g.k);
}

Rational epsilon(const GroupRingElement& c, Module m, std::uint64_t p) {
  Rational s = 0;
  for (const auto& [g, n] : c) s += Rational(n) * epsilon(g, m, p);
  return s;
}

GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b, std::uint64_t p) {
  GroupRingElement out;
  for (const auto& [g, m] : a)
    for (const auto& [h, n] : b) {
      auto& c = out[compose(g, h, p)];
      c += m * n;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::vector<ComplexQ> control_image(const GroupRingElement& c, std::uint64_t p) {
  std::vector<ComplexQ> pts;
  for (const auto& [g, n] : c) pts.push_back(mobius_act(g, ComplexQ{0, 1}, p));
  return pts;
}

// ------------------------------------------------------------- support at 0

SupportReport verify_support_at_zero_A(std::uint64_t p, std::int64_t k, std::int64_t j_max) {
  check_p(p);
  const std::int64_t j0 = k < 0 ? -k : k;
  if (j_max < j0)
    throw std::invalid_argument("verify_support_at_zero_A: j_max must be at least |k| = " + std::to_string(j0));
  SupportReport r;
  r.p = p;
  r.k = k;
  const Rational target = pw(p, 2 * k);
  const BoundaryPoint zero = BoundaryPoint::real(0);
  for (std::int64_t j = j0; j <= j_max; ++j) {
    GroupRingElement c;
    c[t_power(-j)] = pw(p, 2 * (k + j)).get_num();
    SupportRow row;
    row.j = j;
    row.epsilon = epsilon(c, Module::A, p);
    const auto pts = control_image(c, p);
    row.point = pts.front();
    row.busemann_arg = busemann(zero, row.point).log_arg;
    row.pass = row.epsilon == target && row.point == ComplexQ{0, pw(p, -2 * j)} && row.busemann_arg == pw(p, 2 * j);
    r.rows.push_back(row);
  }
  r.strictly_increasing = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    if (!(r.rows[i].busemann_arg > r.rows[i - 1].busemann_arg)) r.strictly_increasing = false;
  r.pass = r.strictly_increasing && std::all_of(r.rows.begin(), r.rows.end(), [](const auto& x) { return x.pass; });
  return r;
}

// --------------------------------------------------------- obstruction at inf

ObstructionReport verify_infinity_obstruction_A(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                                std::int64_t k_max, Exec exec) {
  check_p(p);
  if (coeff_bound < 0 || k_max < 1) throw std::invalid_argument("verify_infinity_obstruction_A: bad bounds");
  ObstructionReport r;
  r.p = p;
  r.q = q;
  r.two_p_divides = p % 2 == 0;
  if (q <= 1) {
    r.status = "inconclusive";
    return r;
  }
  r.applies = true;
  r.k_min = 0;
  while (pw(p, 2 * r.k_min) < q) ++r.k_min;
  r.divisor = pw(p, 2 * r.k_min).get_num();
  r.symbolic_pass = r.divisor > 1;

  const auto width = static_cast<std::uint64_t>(2 * coeff_bound + 1);
  double total_d = std::pow(static_cast<double>(width), static_cast<double>(k_max));
  if (total_d > 1e9) throw ScaleGuardError("verify_infinity_obstruction_A: more than 1e9 candidates");
  const double top = static_cast<double>(coeff_bound) * static_cast<double>(k_max) *
                     std::pow(static_cast<double>(p), 2.0 * static_cast<double>(k_max));
  if (top > 1e36) throw ScaleGuardError("verify_infinity_obstruction_A: values exceed 128-bit range");
  std::uint64_t total = 1;
  for (std::int64_t i = 0; i < k_max; ++i) total *= width;
  std::vector<__int128> powers;
  __int128 pp = 1;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    pp *= static_cast<__int128>(p) * static_cast<__int128>(p);
    powers.push_back(pp);
  }

  constexpr std::uint64_t chunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  std::vector<std::vector<std::vector<std::int64_t>>> found(chunks);
  for_each_index(chunks, exec, [&](std::size_t c) {
    const std::uint64_t lo = c * chunk, hi = std::min(total, lo + chunk);
    std::vector<std::int64_t> m(static_cast<std::size_t>(k_max));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rest = idx;
      __int128 s = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = static_cast<std::int64_t>(rest % width) - coeff_bound;
        rest /= width;
        s += static_cast<__int128>(m[i]) * powers[i];
      }
      if (s == 1 && found[c].size() < 10) found[c].push_back(m);
    }
  });
  r.candidates = total;
  for (auto& f : found)
    for (auto& m : f)
      if (r.solutions.size() < 10) r.solutions.push_back(std::move(m));
  r.brute_force_pass = r.solutions.empty();
  r.pass = r.symbolic_pass && r.brute_force_pass;
  r.status = r.pass ? "pass" : "fail";
  return r;
}

// ------------------------------------------------------------------ push B

PushReport verify_push_B(std::uint64_t p, int random_samples) {
  check_p(p);
  PushReport r;
  r.p = p;
  r.shift_arg = pw(p, 2);
  r.shift = std::log(r.shift_arg.get_d());
  GroupRingElement push;
  push[t_power(1)] = Integer(std::to_string(p * p));

  std::vector<GroupRingElement> lambdas;
  lambdas.emplace_back();
  lambdas.push_back({{t_power(0), 1}});
  lambdas.push_back({{t_power(1), 1}});
  std::mt19937_64 rng(0x5eedu);
  std::uniform_int_distribution<int> terms(1, 4), kd(-3, 3), md(-5, 5), jd(0, 2), cd(1, 5), sd(0, 1);
  for (int s = 0; s < random_samples; ++s) {
    GroupRingElement l;
    const int n = terms(rng);
    for (int i = 0; i < n; ++i) {
      const GroupElement g{kd(rng), Rational(md(rng)) / pw(p, jd(rng))};
      const int c = cd(rng) * (sd(rng) ? 1 : -1);
      l[g] += c;
    }
    std::erase_if(l, [](const auto& kv) { return kv.second == 0; });
    lambdas.push_back(std::move(l));
  }

  r.pass = true;
  const BoundaryPoint inf = BoundaryPoint::infinity();
  for (auto& l : lambdas) {
    PushSample sample;
    const GroupRingElement pushed = multiply(l, push, p);
    sample.epsilon_preserved = epsilon(pushed, Module::B, p) == epsilon(l, Module::B, p);
    // Right multiplication is a bijection g -> g t on supports.
    sample.shift_exact = pushed.size() == l.size();
    for (const auto& [g, n] : l) {
      const GroupElement gt = compose(g, t_power(1), p);
      const auto it = pushed.find(gt);
      if (it == pushed.end() || it->second != n * Integer(std::to_string(p * p))) {
        sample.shift_exact = false;
        continue;
      }
      const ComplexQ before = mobius_act(g, ComplexQ{0, 1}, p), after = mobius_act(gt, ComplexQ{0, 1}, p);
      if (busemann(inf, after).log_arg != busemann(inf, before).log_arg * r.shift_arg) sample.shift_exact = false;
    }
    sample.lambda = std::move(l);
    r.pass = r.pass && sample.epsilon_preserved && sample.shift_exact;
    r.samples.push_back(std::move(sample));
  }
  return r;
}

// -------------------------------------------------------- obstruction at 0

ZeroSearchReport zero_obstruction_search(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                         std::int64_t size_bound, std::int64_t k_max, Module m, Exec exec) {
  check_p(p);
  if (coeff_bound < 0 || size_bound < 0 || k_max < 0 || sgn(q) <= 0)
    throw std::invalid_argument("zero_obstruction_search: bad bounds");
  ZeroSearchReport r;
  r.p = p;
  r.q = q;
  r.module = m;
  r.coeff_bound = coeff_bound;
  r.size_bound = size_bound;
  r.k_max = k_max;

  const Horoball hb{BoundaryPoint::real(0), q};
  const Rational den = pw(p, k_max);
  if (den > 1000000) throw ScaleGuardError("zero_obstruction_search: p^k_max exceeds 1e6");
  const std::int64_t mmax = den.get_num().get_si();
  std::vector<GroupElement> elems;
  std::vector<Rational> eps;
  for (std::int64_t k = -k_max; k <= k_max; ++k)
    for (std::int64_t num = -mmax; num <= mmax; ++num) {
      const GroupElement g{k, Rational(num) / den};
      if (!hb.contains(mobius_act(g, ComplexQ{0, 1}, p))) continue;
      elems.push_back(g);
      eps.push_back(epsilon(g, m, p));
    }
  r.elements_in_horoball = elems.size();

  // Supports in lexicographic order of index lists, sizes 1..size_bound.
  std::vector<std::vector<std::size_t>> supports;
  double count = 0;
  const double per_coeff = 2.0 * static_cast<double>(coeff_bound);
  for (std::int64_t s = 1; s <= size_bound && s <= static_cast<std::int64_t>(elems.size()); ++s) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
      supports.push_back(idx);
      count += std::pow(per_coeff, static_cast<double>(s));
      if (supports.size() > 5000000 || count > 1e9)
        throw ScaleGuardError("zero_obstruction_search: more than 1e9 candidates");
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == elems.size() - idx.size() + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (coeff_bound == 0) supports.clear();

  std::vector<std::optional<std::vector<std::int64_t>>> hit(supports.size());
  std::vector<std::uint64_t> tried(supports.size(), 0);
  for_each_index(supports.size(), exec, [&](std::size_t si) {
    const auto& sup = supports[si];
    std::vector<std::int64_t> c(sup.size(), -coeff_bound);
    while (true) {
      bool nonzero = std::none_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
      if (nonzero) {
        ++tried[si];
        Rational s = 0;
        for (std::size_t i = 0; i < sup.size(); ++i) s += Rational(c[i]) * eps[sup[i]];
        if (s == 1) {
          hit[si] = c;
          return;
        }
      }
      std::size_t i = c.size();
      while (i > 0 && c[i - 1] == coeff_bound) c[--i] = -coeff_bound;
      if (i == 0) break;
      ++c[i - 1];
    }
  });
  for (std::size_t si = 0; si < supports.size(); ++si) {
    r.candidates += tried[si];
    if (hit[si] && !r.witness) {
      GroupRingElement w;
      for (std::size_t i = 0; i < supports[si].size(); ++i) w[elems[supports[si][i]]] = static_cast<long>((*hit[si])[i]);
      r.witness = std::move(w);
    }
  }
  r.pass = !r.witness.has_value();
  return r;
}

ZeroSearchReport verify_zero_obstruction_B(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                           std::int64_t size_bound, std::int64_t k_max, Exec exec) {
  return zero_obstruction_search(p, q, coeff_bound, size_bound, k_max, Module::B, exec);
}

}  // namespace sigmatrop::h2
