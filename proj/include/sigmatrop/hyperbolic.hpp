#pragma once

// The group of matrices [[p^k, b], [0, p^-k]] (b in Z[1/p]) acting on the
// upper half-plane, and mechanized checks of its horospherical limit sets
// for the modules A (t acts by p^2) and B (t acts by p^-2) on Z[1/p].
//
// Busemann functions are normalized to vanish at the base point i and are
// kept as exact log-arguments: beta = ln(L) with L rational, so comparisons
// and sums of Busemann values become comparisons and products of rationals.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigmatrop/linalg.hpp"
#include "sigmatrop/parallel.hpp"
#include "sigmatrop/rational.hpp"

namespace sigmatrop::h2 {

struct GroupElement {
  std::int64_t k = 0;
  Rational b = 0;

  auto operator<=>(const GroupElement& o) const {
    if (k != o.k) return k <=> o.k;
    return cmp(b, o.b) <=> 0;
  }
  bool operator==(const GroupElement& o) const { return k == o.k && b == o.b; }
};

/// Throws unless p >= 2 and the denominator of b is a power of p.
void validate(const GroupElement& g, std::uint64_t p);
/// t^k: the diagonal element (k, 0).
GroupElement t_power(std::int64_t k);
/// Product g h, from [[p^k1, b1], [0, p^-k1]] [[p^k2, b2], [0, p^-k2]].
GroupElement compose(const GroupElement& g, const GroupElement& h, std::uint64_t p);
GroupElement inverse(const GroupElement& g, std::uint64_t p);
QMatrix as_matrix(const GroupElement& g, std::uint64_t p);

struct ComplexQ {
  Rational re, im;
  bool operator==(const ComplexQ&) const = default;
};

/// z -> p^{2k} z + p^k b.  Throws unless Im z > 0.
ComplexQ mobius_act(const GroupElement& g, const ComplexQ& z, std::uint64_t p);

/// A point of the boundary R u {inf}.
struct BoundaryPoint {
  bool at_infinity = false;
  Rational x;

  static BoundaryPoint infinity() { return {true, 0}; }
  static BoundaryPoint real(const Rational& x) { return {false, x}; }
  std::string str() const;
  bool operator==(const BoundaryPoint&) const = default;
};

BoundaryPoint mobius_act(const GroupElement& g, const BoundaryPoint& xi, std::uint64_t p);

struct BusemannValue {
  Rational log_arg;  // beta = ln(log_arg)
  double value = 0;
};

/// xi = inf: ln Im z;  xi real: ln((1 + xi^2) Im z / |z - xi|^2).
BusemannValue busemann(const BoundaryPoint& xi, const ComplexQ& z);

/// {z : beta_xi(z) >= ln(level_arg)}.
struct Horoball {
  BoundaryPoint xi;
  Rational level_arg;

  bool contains(const ComplexQ& z) const;
};

/// Image of a horoball under g: same center moved by g, level shifted by
/// beta_{g xi}(g i) (multiplicatively on log-arguments).
Horoball mobius_act(const GroupElement& g, const Horoball& hb, std::uint64_t p);

using GroupRingElement = std::map<GroupElement, Integer>;

enum class Module { A, B };
std::string to_string(Module m);

/// epsilon(g) = p^{2k} on A and p^{-2k} on B; N acts trivially.
Rational epsilon(const GroupElement& g, Module m, std::uint64_t p);
Rational epsilon(const GroupRingElement& c, Module m, std::uint64_t p);

GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b, std::uint64_t p);
/// Control image {g . i : g in supp c}.
std::vector<ComplexQ> control_image(const GroupRingElement& c, std::uint64_t p);

// ------------------------------------------------------------- reports

struct SupportRow {
  std::int64_t j = 0;
  Rational epsilon;         // epsilon_A(c_j)
  ComplexQ point;           // h(c_j)
  Rational busemann_arg;    // log-argument of beta_0(h(c_j))
  bool pass = false;
};

struct SupportReport {
  std::uint64_t p = 0;
  std::int64_t k = 0;
  std::vector<SupportRow> rows;
  bool strictly_increasing = false;
  bool pass = false;
};

/// c_j = p^{2(k+j)} t^{-j} for j = |k| .. j_max: epsilon_A(c_j) = p^{2k} and
/// beta_0(h(c_j)) = ln p^{2j}, strictly increasing.  Throws
/// std::invalid_argument if j_max < |k| or p < 2.
SupportReport verify_support_at_zero_A(std::uint64_t p, std::int64_t k, std::int64_t j_max);

struct ObstructionReport {
  std::uint64_t p = 0;
  Rational q;
  bool applies = false;            // q > 1; otherwise inconclusive
  std::int64_t k_min = 0;          // least k with p^{2k} >= q
  Integer divisor;                 // p^{2 k_min}: divides every reachable epsilon
  bool symbolic_pass = false;      // divisor > 1, so epsilon != 1
  bool two_p_divides = false;      // whether 2p also divides every p^{2k}, k >= 1
  std::uint64_t candidates = 0;
  std::vector<std::vector<std::int64_t>> solutions;  // m_1..m_kmax with epsilon = 1
  bool brute_force_pass = false;
  bool pass = false;
  std::string status;              // "pass", "fail" or "inconclusive"
};

/// No reduced element sum m_k t^k with h over {Im >= q} has epsilon_A = 1:
/// symbolically via p-divisibility and by exhaustive search over
/// m_k in [-bound, bound], k = 1..k_max.
ObstructionReport verify_infinity_obstruction_A(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                                std::int64_t k_max, Exec exec = Exec::Serial);

struct PushSample {
  GroupRingElement lambda;
  bool epsilon_preserved = false;
  bool shift_exact = false;  // every point's Im multiplied by exactly p^2
};

struct PushReport {
  std::uint64_t p = 0;
  Rational shift_arg;  // p^2: gsh toward inf is ln(p^2) = 2 ln p
  double shift = 0;
  std::vector<PushSample> samples;
  bool pass = false;
};

/// Right multiplication by p^2 t lifts the identity of B and pushes every
/// control image toward inf by exactly 2 ln p.  Samples: 0, 1, t, then
/// `random_samples` random elements from a fixed-seed generator.
PushReport verify_push_B(std::uint64_t p, int random_samples = 20);

struct ZeroSearchReport {
  std::uint64_t p = 0;
  Rational q;
  Module module = Module::B;
  std::int64_t coeff_bound = 0, size_bound = 0, k_max = 0;
  std::size_t elements_in_horoball = 0;
  std::uint64_t candidates = 0;
  std::optional<GroupRingElement> witness;  // epsilon(c) = 1 and h(c) inside the horoball
  bool pass = false;                        // no witness (expected for B)
};

/// Exhaustive search for c with epsilon(c) = 1 and h(c) inside the horoball
/// at 0 of log-argument q.  Group elements: k in [-k_max, k_max],
/// b = m / p^k_max with |b| <= 1; at most size_bound terms, nonzero
/// coefficients in [-coeff_bound, coeff_bound].
ZeroSearchReport zero_obstruction_search(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                         std::int64_t size_bound, std::int64_t k_max, Module m,
                                         Exec exec = Exec::Serial);
ZeroSearchReport verify_zero_obstruction_B(std::uint64_t p, const Rational& q, std::int64_t coeff_bound,
                                           std::int64_t size_bound, std::int64_t k_max = 3,
                                           Exec exec = Exec::Serial);

}  // namespace sigmatrop::h2
