#pragma once

// Dense exact linear algebra over Q and Z at desk scale.

#include <optional>
#include <vector>

#include "sigmatrop/rational.hpp"

namespace sigmatrop {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit QMatrix(const std::vector<RVector>& rows);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  RVector row(std::size_t i) const;
  RVector col(std::size_t j) const;

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const Rational& c) const;
  RVector apply(const RVector& v) const;
  QMatrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  /// Integer power; negative exponents need an invertible matrix.
  QMatrix pow(std::int64_t e) const;
  Rational det() const;
  std::optional<QMatrix> inverse() const;

  bool operator==(const QMatrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct RowEchelon {
  QMatrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

RowEchelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);
std::size_t rank(const std::vector<RVector>& rows, std::size_t ncols);

/// Basis of {x : m x = 0}, one vector per free column, each with a 1 in its
/// free coordinate (the standard RREF basis).
std::vector<RVector> nullspace(const QMatrix& m);
std::vector<RVector> nullspace(const std::vector<RVector>& rows, std::size_t ncols);

/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<RVector> solve(const QMatrix& m, const RVector& b);

/// Characteristic polynomial coefficients c_0..c_n of det(tI - m), c_n = 1.
RVector characteristic_polynomial(const QMatrix& m);

/// Distinct rational roots of sum c_i t^i (rational root test on the
/// integer-scaled polynomial).
std::vector<Rational> rational_roots(const RVector& coeffs);

// ------------------------------------------------------- integer lattices

using ZMatrix = std::vector<ZVector>;  // row-major

/// Column Hermite reduction: a * u = h with u unimodular and h lower
/// trapezoidal; the first `rank` columns of h carry the pivots.
struct ColumnHermite {
  ZMatrix h;
  ZMatrix u;
  std::vector<std::size_t> pivot_rows;  // pivot row of column t, t < rank
  std::size_t rank = 0;
};
ColumnHermite column_hermite(const ZMatrix& a);

struct IntegerSolution {
  ZVector particular;
  std::vector<ZVector> kernel;  // lattice basis of {x in Z^s : a x = 0}
};

/// All integer solutions of a x = b, or nullopt when there is none (which
/// is then a proof that none exists).
std::optional<IntegerSolution> solve_integer(const ZMatrix& a, const ZVector& b);

/// LLL reduction (delta = 3/4) of linearly independent integer rows.
std::vector<ZVector> lll_reduce(std::vector<ZVector> basis);

/// Babai nearest-plane reduction of v against an LLL-reduced basis; returns
/// v - (lattice vector), a short representative of v modulo the lattice.
ZVector babai_reduce(const ZVector& v, const std::vector<ZVector>& reduced_basis);

Integer max_abs(const ZVector& v);

}  // namespace sigmatrop
