#pragma once

// Finitely generated modules over Z G (G = Z^n) and the certificates that
// witness finite generation over a half-space monoid ring.

#include <optional>
#include <string>
#include <vector>

#include "sigmatrop/linalg.hpp"
#include "sigmatrop/polyhedra.hpp"
#include "sigmatrop/ring.hpp"

namespace sigmatrop {

enum class ModuleKind { Cyclic, Scalar, Matrix, DirectSum };

/// D G / (gens).
struct CyclicData {
  CoefficientDomain domain;
  std::vector<LaurentPoly> gens;

  bool zero_ideal() const;
};

/// The Z G-submodule of Q^d generated by `generators`, where the i-th basis
/// element of G acts by mats[i].  Scalar actions are the case d = 1.
struct MatrixData {
  std::size_t d = 0;
  std::vector<QMatrix> mats;
  std::vector<RVector> generators;
};

class ModulePresentation {
 public:
  /// Rank of G and the ideal generators (all of that rank).
  static ModulePresentation cyclic(std::size_t rank, CoefficientDomain domain, std::vector<LaurentPoly> gens);
  /// Z[1/rho] style module: x_i acts by multiplication with rhos[i] on the
  /// Z G-span of 1 in Q.  Throws on a zero entry.
  static ModulePresentation scalar(std::vector<Rational> rhos);
  /// Throws unless the matrices are square of one size, invertible and
  /// pairwise commuting, and the generators span Q^d.
  static ModulePresentation matrix(std::vector<QMatrix> mats, std::vector<RVector> generators);
  static ModulePresentation direct_sum(std::vector<ModulePresentation> parts);

  std::size_t rank() const { return rank_; }
  ModuleKind kind() const { return kind_; }
  const CyclicData& cyclic_data() const;
  const MatrixData& matrix_data() const;
  const std::vector<ModulePresentation>& summands() const { return parts_; }

  /// Direct sums of scalar and matrix modules as one block-diagonal matrix
  /// module; nullopt if some summand is cyclic.
  std::optional<MatrixData> as_matrix() const;
  /// Number of module generators (the size k of a matrix certificate).
  std::size_t generator_count() const;
  std::string str() const;

 private:
  std::size_t rank_ = 0;
  ModuleKind kind_ = ModuleKind::Scalar;
  CyclicData cyclic_;
  MatrixData matrix_;
  std::vector<ModulePresentation> parts_;
};

/// lambda(M_1, ..., M_n) as a matrix (negative exponents via inverses).
QMatrix evaluate(const LaurentPoly& lambda, const MatrixData& m);

/// lambda A = 0.  Cyclic summands over a field use ideal membership, over Z
/// a principal ideal uses exact division; Z with several generators throws
/// UnsupportedError.
bool annihilates(const LaurentPoly& lambda, const ModulePresentation& m);

/// lambda A = 0 and the chi-initial part of lambda is the constant 1.
bool certificate_valid(const LaurentPoly& lambda, const Character& chi, const ModulePresentation& m);

/// The constant-1 initial part holds at every point of the cell (conical,
/// nonempty, origin excluded): constant coefficient 1 and chi.g > 0 on the
/// cell for every other monomial g.
bool initial_one_on(const LaurentPoly& lambda, const Polyhedron& cell);
/// Certificate validity at every character of the cell.
bool certificate_valid_on(const LaurentPoly& lambda, const Polyhedron& cell, const ModulePresentation& m);

using LaurentMatrix = std::vector<std::vector<LaurentPoly>>;

/// theta a = 0 for the generator tuple a of m, and the least chi-grade of
/// theta is the identity matrix.  Throws std::invalid_argument unless theta
/// is k x k with k = m.generator_count().
bool matrix_certificate_valid(const LaurentMatrix& theta, std::size_t k, const Character& chi,
                              const ModulePresentation& m);

/// det theta by cofactor expansion (k <= 8).
LaurentPoly determinant_reduction(const LaurentMatrix& theta);

}  // namespace sigmatrop
