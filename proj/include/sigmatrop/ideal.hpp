#pragma once

// Ideal membership in Laurent polynomial rings over a field.  A Laurent ideal
// I corresponds to the saturation (I_poly : (x1...xn)^inf) of the polynomial
// ideal obtained by clearing monomial units; membership in the saturation is
// decided by a Groebner basis of I_poly + (1 - t x1...xn) in grevlex order.

#include <optional>
#include <vector>

#include "sigmatrop/ring.hpp"

namespace sigmatrop {

struct GroebnerLimits {
  std::size_t max_rank = 4;
  std::int64_t max_degree = 12;   // total degree of the shifted inputs
  std::size_t max_basis = 400;
  std::size_t max_pairs = 20000;
};

/// Decides lambda in (gens) inside D[x^+-1].  D must be a field (QQ or F_p);
/// Z coefficients throw UnsupportedError, oversize inputs ScaleGuardError.
/// An empty generator list is the zero ideal.
bool ideal_membership(const LaurentPoly& lambda, const std::vector<LaurentPoly>& gens,
                      const GroebnerLimits& limits = {});

/// f divides lambda in Z[x^+-1] (f nonzero).  Exact division over Q of the
/// unit-cleared polynomials followed by an integrality check of the quotient.
bool divides_over_Z(const LaurentPoly& f, const LaurentPoly& lambda);

/// Quotient lambda / f in the Laurent ring over Q, or nullopt if f does not
/// divide lambda there.
std::optional<LaurentPoly> exact_quotient(const LaurentPoly& lambda, const LaurentPoly& f);

}  // namespace sigmatrop
