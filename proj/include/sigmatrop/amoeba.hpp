#pragma once

// Numeric amoeba sampling for bivariate Laurent polynomials over Q.  This is
// the only floating-point path of the tropical module; results are
// approximate and compared to exact fans with angular tolerances.

#include <array>
#include <iosfwd>
#include <vector>

#include "sigmatrop/parallel.hpp"
#include "sigmatrop/ring.hpp"

namespace sigmatrop {

struct AmoebaCloud {
  std::vector<std::array<double, 2>> points;  // (ln|x|, ln|y|)
  std::size_t dropped = 0;                    // roots failing the residual check
  double min_radius = 0, max_radius = 0;      // Euclidean norms of the points
};

/// Default grid: -40..40 step 1/2 together with +-10^-k, k = 1..14.
std::vector<double> default_s_grid();

/// For each s and each of `angles` arguments phi = 2 pi j / angles, sets
/// x = e^{s + i phi} and records (s, ln|y|) for every nonzero root y of
/// f(x, .).  Roots come from companion-matrix eigenvalues, polished by
/// Newton steps; a relative residual above 1e-9 drops the root.
AmoebaCloud amoeba_sample(const LaurentPoly& f, const std::vector<double>& s_grid, int angles,
                          Exec exec = Exec::Serial);

struct LimitDirection {
  std::array<double, 2> dir;  // unit vector
  std::size_t count = 0;
};

struct LimitDirections {
  std::vector<LimitDirection> bins;  // populated bins in angular order
  bool no_far_points = false;
};

/// Far points (norm >= min_radius) in the valuation convention v = -ln|.|,
/// grouped into `angle_bins` equal angular bins; each bin reports its mean
/// direction.
LimitDirections log_limit_directions(const AmoebaCloud& cloud, double min_radius, int angle_bins);

/// Angle in degrees between two nonzero plane vectors.
double angle_degrees(const std::array<double, 2>& a, const std::array<double, 2>& b);

void write_amoeba_csv(std::ostream& os, const AmoebaCloud& cloud);

}  // namespace sigmatrop
