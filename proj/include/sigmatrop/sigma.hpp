#pragma once

// Inner and outer approximations of Sigma^0(G; A) for G = Z^n.
//
// A direction is reported in Sigma only together with a certificate lambda
// (lambda A = 0, initial part 1 on the whole cell) and in the complement only
// together with the valuation that induces it.  Everything else is undecided.

#include <optional>
#include <string>
#include <vector>

#include "sigmatrop/module.hpp"
#include "sigmatrop/polyhedra.hpp"

namespace sigmatrop {

struct SearchBounds {
  int box = 6;                            // supports inside [-box, box]^n
  Integer coeff_bound = 1000000;          // |coefficient| <= coeff_bound
  std::size_t max_sparse = 3;             // largest support size tried one subset at a time
  std::size_t sparse_budget = 200000;     // subsets per (box, size) before skipping that size
  std::size_t max_full_columns = 60;      // full-support lattice solve up to this many monomials
};

/// Searches lambda = 1 + sum c_g x^g with g in [-k, k]^n and chi.g > 0 on
/// the cell, for k = 1, ..., bounds.box.  Within a box, supports of size
/// 1, 2, ..., max_sparse are tried in lexicographic order of the monomial
/// lists; then the full support is solved as an integer lattice problem and
/// the coefficients are shortened by LLL + Babai.  The first solution with
/// height <= coeff_bound is returned.  A full-support solve without integer
/// solutions proves that no certificate exists on that box.
///
/// Throws UnsupportedError for modules with a cyclic summand.
std::optional<LaurentPoly> certificate_search(const ModulePresentation& m, const Polyhedron& cell,
                                              const SearchBounds& bounds = {}, Exec exec = Exec::Serial);
std::optional<LaurentPoly> certificate_search(const ModulePresentation& m, const Character& chi,
                                              const SearchBounds& bounds = {}, Exec exec = Exec::Serial);

struct CertifiedCell {
  Polyhedron cone;  // conical, origin excluded
  LaurentPoly certificate;
};

struct WitnessedCell {
  Polyhedron cone;
  std::string witness;  // the valuation inducing these characters
};

struct SigmaResult {
  std::size_t rank = 0;
  std::vector<CertifiedCell> sigma;
  std::vector<WitnessedCell> complement;
  Fan undecided;
  /// Outer bound for the complement when it is not computed exactly.
  std::optional<Fan> outer_candidate;
  std::vector<std::string> notes;

  SphericalSet proved_sigma() const;
  SphericalSet proved_complement() const;
  SphericalSet undecided_set() const { return SphericalSet(undecided); }
  bool exact() const { return spherically_empty(undecided); }

  std::optional<LaurentPoly> certificate_for(const Direction& d) const;
  std::optional<std::string> witness_for(const Direction& d) const;
};

struct SigmaOptions {
  SearchBounds search;
  Exec exec = Exec::Serial;
};

/// Scalar and matrix actions.  The complement is exact when the matrices are
/// simultaneously diagonalizable over Q (p-adic valuations of the joint
/// eigenvalues); otherwise it is left undecided.  Sigma cells come from a
/// complete simplicial fan refined at the complement directions; cells
/// without a certificate inside the search bounds become undecided.
SigmaResult sigma_scalar_action_exact(const ModulePresentation& m, const SigmaOptions& opt = {});

/// Cyclic module over Q or F_p.  One generator: exact, with complement the
/// trivial-valuation hypersurface and Sigma the open regions where a single
/// monomial is initial.  Zero ideal: complement is the whole sphere.  Several
/// generators: the prevariety is an outer candidate, Sigma is certified per
/// generator and the remainder is undecided.
SigmaResult sigma_cyclic_field(const ModulePresentation& m, const SigmaOptions& opt = {});

/// Cyclic module over Z with a principal (or zero) ideal.  The complement is
/// the radial projection of the trivial, p-adic and residue-characteristic-p
/// hypersurfaces; Sigma regions are certified where the initial monomial has
/// a unit coefficient.  Several generators throw UnsupportedError.
SigmaResult sigma_cyclic_Z(const ModulePresentation& m, const SigmaOptions& opt = {});

/// Sigma of A' + A'': intersections of certified cells (certificate the
/// product), union of complements, the rest undecided.
SigmaResult sigma_direct_sum(const SigmaResult& a, const SigmaResult& b, Exec exec = Exec::Serial);

/// Dispatch on the module kind.
SigmaResult compute_sigma(const ModulePresentation& m, const SigmaOptions& opt = {});

/// Soundness checks used by tests and the CLI: every certificate valid on its
/// cell, and the three sets pairwise disjoint on the sphere.
bool certificates_verified(const SigmaResult& r, const ModulePresentation& m);
bool pairwise_disjoint(const SigmaResult& r, Exec exec = Exec::Serial);

// ----------------------------------------------------- metabelian predicates

enum class Decision { True, False, Undecided };
std::string to_string(Decision d);

/// Finite presentability of the metabelian extension: Sigma together with
/// its antipodal set covers the sphere, i.e. no complement direction has its
/// antipode in the complement.
Decision metabelian_fp(const SigmaResult& r, Exec exec = Exec::Serial);

/// Type FP_infinity: the complement is a finite set of directions contained
/// in an open hemisphere.
Decision metabelian_fp_infinity(const SigmaResult& r);

struct FpmReport {
  Decision value = Decision::Undecided;
  bool conjectural = false;  // 3 <= m < infinity: the predicate of an open conjecture
  std::vector<Direction> failing_subset;
};

/// Every m-point subset of the finite complement lies in an open hemisphere
/// (m <= 0 means infinity).  Guard: at most 12 complement directions.
FpmReport fpm_test(const std::vector<Direction>& complement, int m);
FpmReport fpm_test(const SigmaResult& r, int m);

/// The complement as a finite list of directions, or nullopt if some cell
/// has dimension >= 2.
std::optional<std::vector<Direction>> finite_directions(const std::vector<Polyhedron>& cells);

// ------------------------------------------------------- simplicial fans

/// Complete simplicial fan given by maximal cones, each a basis of rays.
struct SimplicialFan {
  std::size_t rank = 0;
  std::vector<std::vector<Direction>> cones;

  static SimplicialFan orthants(std::size_t rank);
  /// Stellar subdivision at d (no-op if d is already a ray).
  void insert_ray(const Direction& d);
  /// All faces (nonempty ray subsets), by decreasing dimension, then by rays.
  std::vector<std::vector<Direction>> faces() const;
};

/// Relative interior of the cone spanned by linearly independent rays.
Polyhedron relint_cone(const std::vector<Direction>& rays, std::size_t rank);

}  // namespace sigmatrop
