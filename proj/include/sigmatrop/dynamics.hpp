#pragma once

// Push maps on the free module F = (Z G)^k with the canonical control map
// (basis element x_j at the origin, g x_j at g): norms, guaranteed shifts,
// the open cone Sigma(phi) and iterated-support estimates of Lambda(phi).

#include <optional>
#include <string>
#include <vector>

#include "sigmatrop/module.hpp"
#include "sigmatrop/polyhedra.hpp"

namespace sigmatrop {

/// A G-equivariant endomorphism of (Z G)^k; column j is the image of x_j.
class PushMap {
 public:
  /// Throws unless the matrix is square, nonempty, of one rank, integral.
  explicit PushMap(LaurentMatrix m);
  /// 1 x 1 multiplication map.
  static PushMap multiplication(const LaurentPoly& f);

  std::size_t size() const { return m_.size(); }
  std::size_t rank() const { return rank_; }
  const LaurentMatrix& matrix() const { return m_; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  /// Composition: (*this) after o.
  PushMap operator*(const PushMap& o) const;
  PushMap pow(unsigned e) const;
  std::vector<LaurentPoly> apply(const std::vector<LaurentPoly>& c) const;

 private:
  std::size_t rank_ = 0;
  LaurentMatrix m_;
};

struct PushNorm {
  Rational squared;  // exact ||phi||^2
  double value = 0;
};

/// Largest exponent-vector length over all monomials of all entries.
PushNorm norm(const PushMap& phi);

/// min over nonzero columns j of v_chi(phi(x_j)), unnormalized in chi
/// (+inf when phi = 0).  Divide by |chi| for the unit-character value.
Extended gsh(const PushMap& phi, const Character& chi);
double gsh_unit(const PushMap& phi, const Character& chi);

/// {chi : chi.g > 0 for every monomial g of phi}: an open cone, empty as soon
/// as the zero monomial occurs.
Polyhedron sigma_of_push(const PushMap& phi);

struct LambdaEstimate {
  std::vector<Direction> directions;  // support directions of the last 3 iterates
  bool died_out = false;
  int died_at = 0;     // first k with phi^k(c) = 0
  int iterations = 0;  // iterates actually computed
};

/// Iterates phi^k(c), k = 1..iters, exactly.
LambdaEstimate lambda_of_push_estimate(const PushMap& phi, const std::vector<LaurentPoly>& c, int iters);

struct AngleCheck {
  Direction dir;
  double angle = 0;     // radians between chi and dir
  bool exact = false;   // cos^2 comparison in exact arithmetic
  bool pass = false;    // exact, or float angle within bound + 1e-6
};

struct AngleReport {
  bool pass = true;
  double bound = 0;    // arccos(gsh_unit / ||phi||)
  Rational ratio_sq;   // (gsh_unit / ||phi||)^2, exact
  std::vector<AngleCheck> checks;
};

/// Every estimated direction lies within arccos(gsh/||phi||) of chi.
/// Throws std::invalid_argument unless gsh(phi, chi) > 0.
AngleReport check_angle_bound(const PushMap& phi, const Character& chi, const std::vector<Direction>& dirs);

struct ComposeReport {
  bool pass = true;
  Extended gsh_phi, gsh_psi, gsh_composite;
  std::vector<Extended> gsh_powers;  // gsh(phi^k), k = 1..k_max
  std::vector<std::string> failures;
};

/// gsh(phi psi) >= gsh(phi) + gsh(psi) and gsh(phi^k) >= k gsh(phi), exactly.
ComposeReport compose_gsh_check(const PushMap& phi, const PushMap& psi, const Character& chi, int k_max = 5);

}  // namespace sigmatrop
