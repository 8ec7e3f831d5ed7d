#include "sigmatrop/amoeba.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace sigmatrop {

using cd = std::complex<double>;

std::vector<double> default_s_grid() {
  std::vector<double> s;
  for (int k = -80; k <= 80; ++k) s.push_back(0.5 * k);
  for (int k = 1; k <= 14; ++k) {
    s.push_back(std::pow(10.0, -k));
    s.push_back(-std::pow(10.0, -k));
  }
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

struct Bivariate {
  // coefficient of y^j as a Laurent polynomial in x: list of (x-exponent, c)
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, double>>> by_y;
  std::int64_t jmin = 0, jmax = 0;
};

Bivariate split(const LaurentPoly& f) {
  if (f.rank() != 2) throw std::invalid_argument("amoeba_sample: polynomial must have rank 2");
  Bivariate b;
  for (const auto& [g, c] : f.terms()) b.by_y[g.exps[1]].emplace_back(g.exps[0], c.get_d());
  if (b.by_y.empty()) throw std::invalid_argument("amoeba_sample: zero polynomial");
  b.jmin = b.by_y.begin()->first;
  b.jmax = b.by_y.rbegin()->first;
  if (b.jmin == b.jmax) throw std::invalid_argument("amoeba_sample: polynomial has y-degree 0");
  return b;
}

// Roots of sum a_k y^k (k = 0..d) with a_d != 0.
std::vector<cd> companion_roots(const std::vector<cd>& a) {
  const std::size_t d = a.size() - 1;
  if (d == 1) return {-a[0] / a[1]};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<cd> r;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r.push_back(es.eigenvalues()(i));
  return r;
}

std::pair<cd, double> eval_with_scale(const std::vector<cd>& a, cd y) {
  cd p = 0;
  double scale = 0;
  for (std::size_t k = a.size(); k-- > 0;) {
    p = p * y + a[k];
    scale += std::abs(a[k]) * std::pow(std::abs(y), static_cast<double>(k));
  }
  return {p, scale};
}

cd newton_polish(const std::vector<cd>& a, cd y) {
  for (int it = 0; it < 4; ++it) {
    cd p = 0, dp = 0;
    for (std::size_t k = a.size(); k-- > 0;) {
      dp = dp * y + p;
      p = p * y + a[k];
    }
    if (dp == cd(0)) break;
    const cd next = y - p / dp;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    const double before = std::abs(p);
    const double after = std::abs(eval_with_scale(a, next).first);
    if (after >= before) break;
    y = next;
  }
  return y;
}

}  // namespace

AmoebaCloud amoeba_sample(const LaurentPoly& f, const std::vector<double>& s_grid, int angles, Exec exec) {
  if (angles < 1) throw std::invalid_argument("amoeba_sample: angles must be positive");
  const Bivariate b = split(f);
  const std::size_t d = static_cast<std::size_t>(b.jmax - b.jmin);
  const std::size_t total = s_grid.size() * static_cast<std::size_t>(angles);
  std::vector<std::vector<std::array<double, 2>>> slots(total);
  std::vector<std::size_t> dropped(total, 0);
  for_each_index(total, exec, [&](std::size_t idx) {
    const double s = s_grid[idx / static_cast<std::size_t>(angles)];
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(idx % static_cast<std::size_t>(angles)) / angles;
    const cd x = std::polar(std::exp(s), phi);
    std::vector<cd> a(d + 1, cd(0));
    std::vector<double> mag(d + 1, 0.0);
    for (const auto& [j, terms] : b.by_y) {
      cd c = 0;
      double m = 0;
      for (const auto& [e, coef] : terms) {
        const cd t = coef * std::pow(x, static_cast<int>(e));
        c += t;
        m += std::abs(t);
      }
      a[static_cast<std::size_t>(j - b.jmin)] = c;
      mag[static_cast<std::size_t>(j - b.jmin)] = m;
    }
    // Trim coefficients that cancel at this x (degree drop or zero roots).
    const auto vanishes = [&](std::size_t k) { return std::abs(a[k]) <= 1e-13 * mag[k]; };
    std::size_t hi = d, lo = 0;
    while (hi > 0 && vanishes(hi)) --hi;
    while (lo < hi && vanishes(lo)) ++lo;
    if (hi == lo) return;
    std::vector<cd> poly(a.begin() + static_cast<std::ptrdiff_t>(lo), a.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    auto roots = companion_roots(poly);
    std::vector<cd> kept;
    for (auto y : roots) {
      y = newton_polish(poly, y);
      const auto [p, scale] = eval_with_scale(poly, y);
      if (!(std::abs(y) > 0) || !std::isfinite(std::abs(y)) || std::abs(p) > 1e-9 * scale) {
        ++dropped[idx];
        continue;
      }
      kept.push_back(y);
    }
    std::sort(kept.begin(), kept.end(), [](const cd& u, const cd& v) {
      return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
    });
    for (const auto& y : kept) slots[idx].push_back({s, std::log(std::abs(y))});
  });
  AmoebaCloud cloud;
  bool first = true;
  for (std::size_t i = 0; i < total; ++i) {
    cloud.dropped += dropped[i];
    for (const auto& pt : slots[i]) {
      const double r = std::hypot(pt[0], pt[1]);
      cloud.min_radius = first ? r : std::min(cloud.min_radius, r);
      cloud.max_radius = first ? r : std::max(cloud.max_radius, r);
      first = false;
      cloud.points.push_back(pt);
    }
  }
  return cloud;
}

LimitDirections log_limit_directions(const AmoebaCloud& cloud, double min_radius, int angle_bins) {
  if (cloud.points.empty()) throw std::invalid_argument("log_limit_directions: empty cloud");
  if (angle_bins < 1) throw std::invalid_argument("log_limit_directions: angle_bins must be positive");
  std::vector<std::array<double, 2>> sum(static_cast<std::size_t>(angle_bins), {0.0, 0.0});
  std::vector<std::size_t> count(static_cast<std::size_t>(angle_bins), 0);
  for (const auto& p : cloud.points) {
    const double vx = -p[0], vy = -p[1];
    const double r = std::hypot(vx, vy);
    if (r < min_radius) continue;
    const double ang = std::atan2(vy, vx) + std::numbers::pi;  // [0, 2 pi]
    auto bin = static_cast<std::size_t>(ang / (2 * std::numbers::pi) * angle_bins);
    bin = std::min(bin, static_cast<std::size_t>(angle_bins - 1));
    sum[bin][0] += vx / r;
    sum[bin][1] += vy / r;
    ++count[bin];
  }
  LimitDirections out;
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] == 0) continue;
    const double n = std::hypot(sum[i][0], sum[i][1]);
    out.bins.push_back({{sum[i][0] / n, sum[i][1] / n}, count[i]});
  }
  out.no_far_points = out.bins.empty();
  return out;
}

double angle_degrees(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double c = (a[0] * b[0] + a[1] * b[1]) / (std::hypot(a[0], a[1]) * std::hypot(b[0], b[1]));
  return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

void write_amoeba_csv(std::ostream& os, const AmoebaCloud& cloud) {
  os << "s,ln_abs_y\n" << std::setprecision(17);
  for (const auto& p : cloud.points) os << p[0] << "," << p[1] << "\n";
}

}  // namespace sigmatrop
