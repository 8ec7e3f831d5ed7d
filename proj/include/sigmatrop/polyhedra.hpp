#pragma once

// Exact rational polyhedral cells, fans (finite unions of cells, not
// required to meet face-to-face) and spherical sets.
//
// A cell is {x : normal.x REL rhs} with REL one of =, >=, >.  Cells with all
// right-hand sides zero are cones; tropical varieties of p-adic valuations
// need affine cells, radial projection turns them back into cones.

#include <optional>
#include <string>
#include <vector>

#include "sigmatrop/parallel.hpp"
#include "sigmatrop/rational.hpp"
#include "sigmatrop/ring.hpp"

namespace sigmatrop {

enum class Relation { Eq, Geq, Gt };

struct Constraint {
  RVector normal;
  Relation rel = Relation::Geq;
  Rational rhs;

  bool satisfied_by(const RVector& x) const;
  bool operator==(const Constraint&) const = default;
  bool operator<(const Constraint& o) const;
};

class Polyhedron {
 public:
  explicit Polyhedron(std::size_t rank = 0) : rank_(rank) {}

  static Polyhedron whole(std::size_t rank) { return Polyhedron(rank); }
  static Polyhedron point(const RVector& x);
  /// The relatively open ray R_{>0} d.
  static Polyhedron open_ray(const RVector& d);
  /// The closed half-line R_{>=0} d.
  static Polyhedron closed_ray(const RVector& d);

  std::size_t rank() const { return rank_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  Polyhedron& add(RVector normal, Relation rel, Rational rhs = 0);
  Polyhedron& add(const Constraint& c) { return add(c.normal, c.rel, c.rhs); }
  Polyhedron intersect(const Polyhedron& o) const;

  bool contains(const RVector& x) const;
  bool contains(const Character& chi) const { return contains(chi.values); }
  bool is_conical() const;

  bool is_empty() const;
  /// -1 for the empty cell.
  int dimension() const;
  /// A point of the relative interior, or nullopt when empty.
  std::optional<RVector> interior_point() const;

  Polyhedron closure() const;
  /// Recession cone of the closure (rhs -> 0, strict -> weak).
  Polyhedron recession() const;
  /// Image under x -> -x.
  Polyhedron negated() const;
  /// Directions d such that x + eps*d lies in the cell for all small eps > 0;
  /// nullopt when no such segment starts at x (including the zero direction).
  std::optional<Polyhedron> local_cone(const RVector& x) const;
  /// Cone {t y : t > 0, y in cell}, obtained by Fourier-Motzkin elimination.
  Polyhedron conify() const;

  /// Canonical form: primitive integer normals, sorted, deduplicated, trivial
  /// rows removed.  An infeasible trivial row collapses to a single 0 > 0.
  Polyhedron simplified() const;

  std::string str() const;
  bool operator==(const Polyhedron& o) const = default;

 private:
  std::size_t rank_;
  std::vector<Constraint> constraints_;
};

using RationalCone = Polyhedron;

struct Fan {
  std::size_t rank = 0;
  std::vector<Polyhedron> cells;

  Fan() = default;
  explicit Fan(std::size_t r) : rank(r) {}
  Fan(std::size_t r, std::vector<Polyhedron> c) : rank(r), cells(std::move(c)) {}

  void add(Polyhedron p);
  bool contains(const RVector& x) const;
  bool contains(const Character& chi) const { return contains(chi.values); }
  bool empty_set() const;  // every cell empty
  /// Drops empty cells and canonicalizes the rest (order preserved).
  Fan pruned() const;
};

Fan unite(const Fan& a, const Fan& b);
Fan intersect(const Fan& a, const Fan& b);
Fan negate(const Fan& a);
/// Set difference a \ b as a union of cells.
Fan subtract(const Fan& a, const Fan& b, Exec exec = Exec::Serial);
bool is_subset(const Fan& a, const Fan& b);
bool same_set(const Fan& a, const Fan& b);

/// A set of rays: nonzero points of the fan, up to positive scaling.  Cells
/// are conical.
struct SphericalSet {
  Fan fan;

  SphericalSet() = default;
  explicit SphericalSet(Fan f) : fan(std::move(f)) {}
  static SphericalSet radial_projection(const Fan& f);
  static SphericalSet whole(std::size_t rank);
  static SphericalSet points(std::size_t rank, const std::vector<Direction>& dirs);

  std::size_t rank() const { return fan.rank; }
  bool contains(const Direction& d) const { return fan.contains(d.vector()); }
  bool empty_set() const;
  SphericalSet complement() const;
};

/// Nonempty and not just the origin (for conical cells).
bool has_nonzero_point(const Polyhedron& cone);
/// True if the spherical set has no points, i.e. every cell is empty or {0}.
bool spherically_empty(const Fan& conical);
/// True if some point of x is antipodal to some point of y (nonzero points).
bool meets_antipodally(const Fan& x, const Fan& y, Exec exec = Exec::Serial);

// ------------------------------------------------------------------- rays

struct ConeGenerators {
  std::vector<Direction> lineality;  // basis of the lineality space
  std::vector<Direction> rays;       // extreme rays of the pointed part

  /// Rays together with +- each lineality basis vector, sorted lexicographically.
  std::vector<Direction> all() const;
};

/// Generators of the closure of a conical cell by enumeration of tight
/// subsystems (double description at desk scale).  Rank at most 6.
ConeGenerators cone_generators(const Polyhedron& cone);
std::vector<Direction> rays(const Polyhedron& cone);

// ---------------------------------------------------- local cones, tests

Fan local_cone_at(const Fan& f, const RVector& x);
Fan local_cone_at_origin(const Fan& f);
Fan local_cone_at_infinity(const Fan& f);

struct HemisphereResult {
  std::optional<RVector> witness;      // chi with chi.u > 0 for all u
  std::optional<RVector> combination;  // convex weights summing the inputs to 0
};
HemisphereResult in_open_hemisphere(const std::vector<Direction>& dirs);
bool verify_hemisphere(const std::vector<Direction>& dirs, const HemisphereResult& r);

/// S together with -S covers the whole sphere.
bool covers_with_antipodal(const SphericalSet& s);

/// The convex hull of the local cone of f at x is a linear subspace.
/// Throws std::invalid_argument if x is not in f.
bool balanceable_at(const Fan& f, const RVector& x);

/// Common dimension of the inclusion-maximal cells, or nullopt if they
/// differ or the fan is empty.
std::optional<int> pure_dimension(const Fan& f);

}  // namespace sigmatrop
