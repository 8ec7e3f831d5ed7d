#include "sigmatrop/linalg.hpp"

#include <algorithm>
#include <set>

#include "sigmatrop/valuation.hpp"

namespace sigmatrop {

QMatrix::QMatrix(const std::vector<RVector>& rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("QMatrix: ragged rows");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RVector QMatrix::row(std::size_t i) const {
  return RVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RVector QMatrix::col(std::size_t j) const {
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("matrix product: shape mismatch");
  QMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum: shape mismatch");
  QMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const { return *this + o.scaled(-1); }

QMatrix QMatrix::scaled(const Rational& c) const {
  QMatrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

RVector QMatrix::apply(const RVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector: shape mismatch");
  RVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

QMatrix QMatrix::pow(std::int64_t e) const {
  if (!is_square()) throw DimensionError("pow of a non-square matrix");
  QMatrix base = *this;
  if (e < 0) {
    auto inv = inverse();
    if (!inv) throw std::domain_error("negative power of a singular matrix");
    base = *inv;
    e = -e;
  }
  QMatrix r = identity(rows_);
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

Rational QMatrix::det() const {
  if (!is_square()) throw DimensionError("det of a non-square matrix");
  QMatrix m = *this;
  Rational d = 1;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (!is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

RowEchelon rref(QMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank(const std::vector<RVector>& rows, std::size_t ncols) {
  if (rows.empty()) return 0;
  for (const auto& r : rows)
    if (r.size() != ncols) throw DimensionError("rank: row length mismatch");
  return rank(QMatrix(rows));
}

std::vector<RVector> nullspace(const QMatrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RVector> nullspace(const std::vector<RVector>& rows, std::size_t ncols) {
  if (rows.empty()) {
    std::vector<RVector> basis;
    for (std::size_t i = 0; i < ncols; ++i) {
      RVector v(ncols);
      v[i] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  for (const auto& r : rows)
    if (r.size() != ncols) throw DimensionError("nullspace: row length mismatch");
  return nullspace(QMatrix(rows));
}

std::optional<RVector> solve(const QMatrix& m, const RVector& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: rhs length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto e = rref(aug);
  RVector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

RVector characteristic_polynomial(const QMatrix& m) {
  // Faddeev-LeVerrier.
  const std::size_t n = m.rows();
  if (!m.is_square()) throw DimensionError("characteristic polynomial of a non-square matrix");
  RVector c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix t = mk + QMatrix::identity(n).scaled(c[n - k + 1]);
    mk = m * t;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

namespace {

std::vector<Integer> divisors(const Integer& z) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factorize(z)) {
    const std::size_t base = ds.size();
    Integer pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
    }
  }
  return ds;
}

}  // namespace

std::vector<Rational> rational_roots(const RVector& coeffs) {
  std::vector<Integer> a;
  Integer l = 1;
  for (const auto& q : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  for (const auto& q : coeffs) a.push_back(q.get_num() * (l / q.get_den()));
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.empty()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::set<Rational> roots;
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  if (low + 1 == a.size()) return {roots.begin(), roots.end()};
  auto eval = [&](const Rational& x) {
    Rational s = 0;
    for (std::size_t i = a.size(); i-- > low;) s = s * x + Rational(a[i]);
    return s;
  };
  for (const auto& p : divisors(a[low]))
    for (const auto& q : divisors(a.back()))
      for (int sign : {1, -1}) {
        Rational x(p * sign, q);
        x.canonicalize();
        if (sgn(eval(x)) == 0) roots.insert(x);
      }
  return {roots.begin(), roots.end()};
}

// ------------------------------------------------------------ lattices

namespace {

void column_op(ZMatrix& m, std::size_t j, std::size_t k, const Integer& a, const Integer& b,
               const Integer& c, const Integer& d) {
  // (col j, col k) <- (a col j + b col k, c col j + d col k)
  for (auto& row : m) {
    const Integer x = row[j], y = row[k];
    row[j] = a * x + b * y;
    row[k] = c * x + d * y;
  }
}

}  // namespace

ColumnHermite column_hermite(const ZMatrix& a) {
  ColumnHermite out;
  out.h = a;
  const std::size_t m = a.size();
  const std::size_t s = m == 0 ? 0 : a[0].size();
  out.u.assign(s, ZVector(s, 0));
  for (std::size_t i = 0; i < s; ++i) out.u[i][i] = 1;
  std::size_t r = 0;
  for (std::size_t i = 0; i < m && r < s; ++i) {
    for (std::size_t j = r + 1; j < s; ++j) {
      const Integer x = out.h[i][r], y = out.h[i][j];
      if (y == 0) continue;
      Integer g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      // [x y] * [[p, -y/g], [q, x/g]] = [g 0], determinant 1.
      const Integer yg = y / g, xg = x / g;
      column_op(out.h, r, j, p, q, Integer(-yg), xg);
      column_op(out.u, r, j, p, q, Integer(-yg), xg);
    }
    if (out.h[i][r] == 0) continue;
    if (out.h[i][r] < 0) {
      column_op(out.h, r, r, -1, 0, -1, 0);
      column_op(out.u, r, r, -1, 0, -1, 0);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  out.rank = r;
  return out;
}

std::optional<IntegerSolution> solve_integer(const ZMatrix& a, const ZVector& b) {
  if (a.size() != b.size()) throw DimensionError("solve_integer: rhs length mismatch");
  const std::size_t s = a.empty() ? 0 : a[0].size();
  const auto ch = column_hermite(a);
  ZVector y(s, 0);
  std::size_t t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer residual = b[i];
    for (std::size_t k = 0; k < t; ++k) residual -= ch.h[i][k] * y[k];
    if (t < ch.rank && ch.pivot_rows[t] == i) {
      if (!mpz_divisible_p(residual.get_mpz_t(), ch.h[i][t].get_mpz_t())) return std::nullopt;
      y[t] = residual / ch.h[i][t];
      ++t;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular.assign(s, 0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < ch.rank; ++k) sol.particular[i] += ch.u[i][k] * y[k];
  for (std::size_t k = ch.rank; k < s; ++k) {
    ZVector v(s);
    for (std::size_t i = 0; i < s; ++i) v[i] = ch.u[i][k];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

namespace {

Integer round_nearest(const Rational& q) {
  // floor(q + 1/2)
  Rational t = q + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return f;
}

}  // namespace

std::vector<ZVector> lll_reduce(std::vector<ZVector> b) {
  const std::size_t k_n = b.size();
  if (k_n == 0) return b;
  const std::size_t dim = b[0].size();
  std::vector<RVector> bstar(k_n, RVector(dim));
  std::vector<RVector> mu(k_n, RVector(k_n));
  std::vector<Rational> norm2(k_n);
  auto gram_schmidt = [&]() {
    for (std::size_t i = 0; i < k_n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) bstar[i][d] = b[i][d];
      for (std::size_t j = 0; j < i; ++j) {
        Rational num = 0;
        for (std::size_t d = 0; d < dim; ++d) num += Rational(b[i][d]) * bstar[j][d];
        mu[i][j] = num / norm2[j];
        for (std::size_t d = 0; d < dim; ++d) bstar[i][d] -= mu[i][j] * bstar[j][d];
      }
      norm2[i] = 0;
      for (std::size_t d = 0; d < dim; ++d) norm2[i] += bstar[i][d] * bstar[i][d];
    }
  };
  gram_schmidt();
  const Rational delta(3, 4);
  std::size_t k = 1;
  while (k < k_n) {
    for (std::size_t j = k; j-- > 0;) {
      const Integer q = round_nearest(mu[k][j]);
      if (q == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) b[k][d] -= q * b[j][d];
      for (std::size_t l = 0; l < j; ++l) mu[k][l] -= Rational(q) * mu[j][l];
      mu[k][j] -= Rational(q);
    }
    if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

ZVector babai_reduce(const ZVector& v, const std::vector<ZVector>& basis) {
  ZVector w = v;
  if (basis.empty()) return w;
  const std::size_t dim = v.size();
  std::vector<RVector> bstar;
  std::vector<Rational> norm2;
  for (const auto& bi : basis) {
    RVector s(bi.begin(), bi.end());
    for (std::size_t j = 0; j < bstar.size(); ++j) {
      Rational num = 0;
      for (std::size_t d = 0; d < dim; ++d) num += Rational(bi[d]) * bstar[j][d];
      const Rational m = num / norm2[j];
      for (std::size_t d = 0; d < dim; ++d) s[d] -= m * bstar[j][d];
    }
    Rational nn = 0;
    for (const auto& x : s) nn += x * x;
    bstar.push_back(std::move(s));
    norm2.push_back(nn);
  }
  for (std::size_t j = basis.size(); j-- > 0;) {
    Rational num = 0;
    for (std::size_t d = 0; d < dim; ++d) num += Rational(w[d]) * bstar[j][d];
    const Integer q = round_nearest(num / norm2[j]);
    if (q == 0) continue;
    for (std::size_t d = 0; d < dim; ++d) w[d] -= q * basis[j][d];
  }
  return w;
}

Integer max_abs(const ZVector& v) {
  Integer m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

}  // namespace sigmatrop
