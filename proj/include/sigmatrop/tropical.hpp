#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sigmatrop/polyhedra.hpp"
#include "sigmatrop/ring.hpp"
#include "sigmatrop/valuation.hpp"

namespace sigmatrop {

struct ValuedPoly {
  LaurentPoly poly;
  Valuation v;
};

/// Tropical hypersurface: chi where min_g (v(c_g) + chi.g) is attained at
/// least twice.  cells[i] is the locus where the pair tie_pairs[i] attains it.
struct TropicalFan {
  Fan fan;
  std::vector<std::pair<Monomial, Monomial>> tie_pairs;
  bool unit = false;          // single monomial: empty hypersurface
  bool outer_bound = false;   // prevariety: may strictly contain the variety
};

TropicalFan trop_hypersurface(const ValuedPoly& f, Exec exec = Exec::Serial);

/// Intersection of the generators' hypersurfaces; an outer bound for the
/// tropical variety of the ideal they generate.
TropicalFan trop_prevariety(const std::vector<ValuedPoly>& gens, Exec exec = Exec::Serial);

/// Direct evaluation of the defining condition; the oracle for the fan.
bool min_attained_twice(const ValuedPoly& f, const RVector& chi);

struct GlobalTropical {
  Fan fan;                                  // union of all components
  std::map<std::uint64_t, TropicalFan> padic;  // one per prime of the coefficient support
  TropicalFan trivial;
};

/// Union of the trivial and p-adic hypersurfaces over the primes dividing
/// some coefficient of f (f over Z, nonzero).
GlobalTropical global_tropical_Z(const LaurentPoly& f, Exec exec = Exec::Serial);

}  // namespace sigmatrop
