#include "sigmatrop/module.hpp"

#include <map>
#include <sstream>

#include "sigmatrop/ideal.hpp"

namespace sigmatrop {

bool CyclicData::zero_ideal() const {
  for (const auto& g : gens)
    if (!g.is_zero()) return false;
  return true;
}

ModulePresentation ModulePresentation::cyclic(std::size_t rank, CoefficientDomain domain, std::vector<LaurentPoly> gens) {
  ModulePresentation m;
  m.rank_ = rank;
  m.kind_ = ModuleKind::Cyclic;
  for (auto& g : gens) {
    if (g.rank() != rank) throw DimensionError("cyclic module: generator rank mismatch");
    g = g.with_domain(domain);
  }
  m.cyclic_ = {domain, std::move(gens)};
  return m;
}

ModulePresentation ModulePresentation::scalar(std::vector<Rational> rhos) {
  if (rhos.empty()) throw std::invalid_argument("scalar module: rank 0");
  std::vector<QMatrix> mats;
  for (const auto& r : rhos) {
    if (sgn(r) == 0) throw std::invalid_argument("scalar module: zero multiplier");
    QMatrix a(1, 1);
    a(0, 0) = r;
    mats.push_back(a);
  }
  ModulePresentation m;
  m.rank_ = rhos.size();
  m.kind_ = ModuleKind::Scalar;
  m.matrix_ = {1, std::move(mats), {RVector{1}}};
  return m;
}

ModulePresentation ModulePresentation::matrix(std::vector<QMatrix> mats, std::vector<RVector> generators) {
  if (mats.empty()) throw std::invalid_argument("matrix module: rank 0");
  const std::size_t d = mats[0].rows();
  if (d == 0) throw std::invalid_argument("matrix module: size 0");
  for (const auto& a : mats) {
    if (a.rows() != d || a.cols() != d) throw DimensionError("matrix module: matrices must be square of one size");
    if (sgn(a.det()) == 0) throw std::invalid_argument("matrix module: singular action matrix");
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!(mats[i] * mats[j] == mats[j] * mats[i])) throw std::invalid_argument("matrix module: action matrices do not commute");
  for (const auto& v : generators)
    if (v.size() != d) throw DimensionError("matrix module: generator size mismatch");
  if (sigmatrop::rank(generators, d) != d) throw std::invalid_argument("matrix module: generators do not span Q^d");
  ModulePresentation m;
  m.rank_ = mats.size();
  m.kind_ = d == 1 ? ModuleKind::Scalar : ModuleKind::Matrix;
  m.matrix_ = {d, std::move(mats), std::move(generators)};
  return m;
}

ModulePresentation ModulePresentation::direct_sum(std::vector<ModulePresentation> parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum: no summands");
  if (parts.size() == 1) return parts[0];
  ModulePresentation m;
  m.rank_ = parts[0].rank();
  m.kind_ = ModuleKind::DirectSum;
  for (auto& p : parts) {
    if (p.rank() != m.rank_) throw DimensionError("direct sum: rank mismatch");
    if (p.kind() == ModuleKind::DirectSum)
      for (auto& q : p.parts_) m.parts_.push_back(std::move(q));
    else
      m.parts_.push_back(std::move(p));
  }
  return m;
}

const CyclicData& ModulePresentation::cyclic_data() const {
  if (kind_ != ModuleKind::Cyclic) throw std::logic_error("not a cyclic module");
  return cyclic_;
}

const MatrixData& ModulePresentation::matrix_data() const {
  if (kind_ != ModuleKind::Scalar && kind_ != ModuleKind::Matrix) throw std::logic_error("not a matrix module");
  return matrix_;
}

std::optional<MatrixData> ModulePresentation::as_matrix() const {
  switch (kind_) {
    case ModuleKind::Cyclic:
      return std::nullopt;
    case ModuleKind::Scalar:
    case ModuleKind::Matrix:
      return matrix_;
    case ModuleKind::DirectSum:
      break;
  }
  std::vector<MatrixData> blocks;
  std::size_t total = 0;
  for (const auto& p : parts_) {
    auto b = p.as_matrix();
    if (!b) return std::nullopt;
    total += b->d;
    blocks.push_back(std::move(*b));
  }
  MatrixData out;
  out.d = total;
  out.mats.assign(rank_, QMatrix(total, total));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t r = 0; r < b.d; ++r)
        for (std::size_t c = 0; c < b.d; ++c) out.mats[i](off + r, off + c) = b.mats[i](r, c);
    for (const auto& v : b.generators) {
      RVector w(total, 0);
      for (std::size_t r = 0; r < b.d; ++r) w[off + r] = v[r];
      out.generators.push_back(std::move(w));
    }
    off += b.d;
  }
  return out;
}

std::size_t ModulePresentation::generator_count() const {
  switch (kind_) {
    case ModuleKind::Cyclic:
      return 1;
    case ModuleKind::Scalar:
    case ModuleKind::Matrix:
      return matrix_.generators.size();
    case ModuleKind::DirectSum:
      break;
  }
  std::size_t k = 0;
  for (const auto& p : parts_) k += p.generator_count();
  return k;
}

std::string ModulePresentation::str() const {
  std::ostringstream os;
  switch (kind_) {
    case ModuleKind::Cyclic: {
      os << cyclic_.domain.name() << "G/(";
      for (std::size_t i = 0; i < cyclic_.gens.size(); ++i) os << (i ? ", " : "") << to_string(cyclic_.gens[i]);
      os << ")";
      break;
    }
    case ModuleKind::Scalar: {
      os << "scalar(";
      for (std::size_t i = 0; i < matrix_.mats.size(); ++i) os << (i ? ", " : "") << to_string(matrix_.mats[i](0, 0));
      os << ")";
      break;
    }
    case ModuleKind::Matrix:
      os << "matrix(d=" << matrix_.d << ", rank " << rank_ << ")";
      break;
    case ModuleKind::DirectSum:
      for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? " + " : "") << parts_[i].str();
      break;
  }
  return os.str();
}

QMatrix evaluate(const LaurentPoly& lambda, const MatrixData& m) {
  if (lambda.rank() != m.mats.size()) throw DimensionError("evaluate: rank mismatch");
  std::map<std::pair<std::size_t, std::int64_t>, QMatrix> powers;
  const auto power = [&](std::size_t i, std::int64_t e) -> const QMatrix& {
    auto it = powers.find({i, e});
    if (it == powers.end()) it = powers.emplace(std::make_pair(i, e), m.mats[i].pow(e)).first;
    return it->second;
  };
  QMatrix acc(m.d, m.d);
  for (const auto& [g, c] : lambda.terms()) {
    QMatrix t = QMatrix::identity(m.d);
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (g.exps[i] != 0) t = t * power(i, g.exps[i]);
    acc = acc + t.scaled(c);
  }
  return acc;
}

namespace {

bool annihilates_cyclic(const LaurentPoly& lambda, const CyclicData& c) {
  if (lambda.is_zero()) return true;
  if (c.zero_ideal()) return false;
  const LaurentPoly l = lambda.with_domain(c.domain);
  if (c.domain.is_field()) return ideal_membership(l, c.gens);
  std::vector<LaurentPoly> nonzero;
  for (const auto& g : c.gens)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.size() != 1) throw UnsupportedError("annihilates: Z coefficients need a principal ideal");
  return divides_over_Z(nonzero[0], l);
}

}  // namespace

bool annihilates(const LaurentPoly& lambda, const ModulePresentation& m) {
  if (lambda.rank() != m.rank()) throw DimensionError("annihilates: rank mismatch");
  switch (m.kind()) {
    case ModuleKind::Cyclic:
      return annihilates_cyclic(lambda, m.cyclic_data());
    case ModuleKind::Scalar:
    case ModuleKind::Matrix:
      return evaluate(lambda, m.matrix_data()).is_zero();
    case ModuleKind::DirectSum:
      break;
  }
  for (const auto& p : m.summands())
    if (!annihilates(lambda, p)) return false;
  return true;
}

namespace {

bool is_constant_one(const LaurentPoly& f) {
  return f.size() == 1 && f.terms().begin()->first.is_zero() && f.terms().begin()->second == 1;
}

}  // namespace

bool certificate_valid(const LaurentPoly& lambda, const Character& chi, const ModulePresentation& m) {
  if (chi.rank() != m.rank() || lambda.rank() != m.rank()) throw DimensionError("certificate_valid: rank mismatch");
  if (chi.is_zero()) throw std::invalid_argument("certificate_valid: zero character");
  if (!is_constant_one(initial_part(chi, lambda))) return false;
  return annihilates(lambda, m);
}

bool initial_one_on(const LaurentPoly& lambda, const Polyhedron& cell) {
  if (lambda.rank() != cell.rank()) throw DimensionError("initial_one_on: rank mismatch");
  if (lambda.coefficient(Monomial::zero(lambda.rank())) != 1) return false;
  for (const auto& [g, c] : lambda.terms()) {
    if (g.is_zero()) continue;
    Polyhedron bad = cell;
    bad.add(to_rational((-g).exps), Relation::Geq, 0);  // chi.g <= 0
    if (!bad.is_empty()) return false;
  }
  return true;
}

bool certificate_valid_on(const LaurentPoly& lambda, const Polyhedron& cell, const ModulePresentation& m) {
  if (cell.is_empty()) throw std::invalid_argument("certificate_valid_on: empty cell");
  return initial_one_on(lambda, cell) && annihilates(lambda, m);
}

namespace {

void check_square(const LaurentMatrix& theta, std::size_t k) {
  if (theta.size() != k) throw std::invalid_argument("matrix certificate: expected " + std::to_string(k) + " rows");
  for (const auto& row : theta)
    if (row.size() != k) throw std::invalid_argument("matrix certificate: non-square matrix");
}

// Generator ranges of the summands of m, flattened.
void flatten(const ModulePresentation& m, std::vector<const ModulePresentation*>& out) {
  if (m.kind() == ModuleKind::DirectSum) {
    for (const auto& p : m.summands()) flatten(p, out);
  } else {
    out.push_back(&m);
  }
}

}  // namespace

bool matrix_certificate_valid(const LaurentMatrix& theta, std::size_t k, const Character& chi,
                              const ModulePresentation& m) {
  if (k != m.generator_count()) throw std::invalid_argument("matrix certificate: k differs from the generator count");
  check_square(theta, k);
  if (chi.is_zero()) throw std::invalid_argument("matrix certificate: zero character");
  // Least chi-grade of theta must be the identity.
  Extended least = Extended::infinity();
  for (const auto& row : theta)
    for (const auto& e : row) least = min(least, v_chi(chi, e));
  if (least.is_infinite()) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& e = theta[i][j];
      LaurentPoly graded(e.rank(), e.domain());
      for (const auto& [g, c] : e.terms())
        if (chi_value(chi, g) == least.value()) graded.add_term(g, c);
      if (i == j ? !is_constant_one(graded) : !graded.is_zero()) return false;
    }
  // theta a = 0, summand by summand.
  std::vector<const ModulePresentation*> parts;
  flatten(m, parts);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t col = 0;
    for (const auto* p : parts) {
      const std::size_t kp = p->generator_count();
      if (p->kind() == ModuleKind::Cyclic) {
        if (!annihilates(theta[i][col], *p)) return false;
      } else {
        const auto& md = p->matrix_data();
        RVector sum(md.d, 0);
        for (std::size_t j = 0; j < kp; ++j) {
          const auto v = evaluate(theta[i][col + j], md).apply(md.generators[j]);
          for (std::size_t r = 0; r < md.d; ++r) sum[r] += v[r];
        }
        if (!is_zero(sum)) return false;
      }
      col += kp;
    }
  }
  return true;
}

LaurentPoly determinant_reduction(const LaurentMatrix& theta) {
  const std::size_t k = theta.size();
  if (k == 0) throw std::invalid_argument("determinant: empty matrix");
  check_square(theta, k);
  if (k > 8) throw ScaleGuardError("determinant: size above 8");
  if (k == 1) return theta[0][0];
  const auto& t0 = theta[0][0];
  LaurentPoly det(t0.rank(), t0.domain());
  for (std::size_t j = 0; j < k; ++j) {
    if (theta[0][j].is_zero()) continue;
    LaurentMatrix minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<LaurentPoly> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(theta[r][c]);
      minor.push_back(std::move(row));
    }
    const LaurentPoly term = theta[0][j] * determinant_reduction(minor);
    det += j % 2 == 0 ? term : -term;
  }
  return det;
}

}  // namespace sigmatrop
