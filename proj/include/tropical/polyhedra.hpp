// Rational polyhedra, polyhedral complexes and weighted tropical cycles.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tropical/exactmath.hpp"

namespace tropical {

/// normal · x <= offset (inequality) or normal · x == offset (equation).
struct Constraint {
  LatticeVector normal;
  Integer offset;
  bool operator==(const Constraint&) const = default;
};

/// Generators of the cone { y : eq · y = 0, ineq · y <= 0 }.
struct ConeGenerators {
  std::vector<LatticeVector> lineality;
  std::vector<LatticeVector> rays;
};

/// Double description: extreme rays and lineality of a homogeneous cone.
ConeGenerators double_description(std::size_t dim, const std::vector<LatticeVector>& equations,
                                  const std::vector<LatticeVector>& inequalities);

/// A rational polyhedron conv(vertices) + cone(rays) + span(lineality).
///
/// Always stored in canonical form: the lineality basis is in reduced
/// echelon form (rows scaled to primitive integers), vertices and rays are
/// reduced modulo the lineality space, rays are primitive, and all lists are
/// sorted. Two cells are equal as sets iff they compare equal. The facet
/// description is computed on first use.
class Cell {
public:
  Cell() = default;

  static Cell empty(std::size_t ambient_dim);
  static Cell point(const RationalVector& p);
  /// Cone, polyhedron or affine space from arbitrary (possibly redundant)
  /// generators. Vertices must be nonempty unless everything is empty.
  static Cell from_generators(std::size_t ambient_dim, const std::vector<RationalVector>& vertices,
                              const std::vector<LatticeVector>& rays,
                              const std::vector<LatticeVector>& lineality = {});
  /// As above, but the caller guarantees the generators are irredundant and
  /// the cell is pointed modulo the given lineality.
  static Cell from_minimal_generators(std::size_t ambient_dim,
                                      const std::vector<RationalVector>& vertices,
                                      const std::vector<LatticeVector>& rays,
                                      const std::vector<LatticeVector>& lineality = {});
  static Cell from_constraints(std::size_t ambient_dim, const std::vector<Constraint>& inequalities,
                               const std::vector<Constraint>& equations = {});

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  /// True when the cell is a cone with apex at the origin.
  bool is_cone() const;
  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }

  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& lineality() const { return lineality_; }
  /// Irredundant facet inequalities.
  const std::vector<Constraint>& facets() const;
  /// Equations of the affine hull.
  const std::vector<Constraint>& equations() const;

  bool contains(const RationalVector& p) const;
  bool contains(const Cell& other) const;
  bool contains_in_relative_interior(const RationalVector& p) const;
  RationalVector relative_interior_point() const;

  /// Integer vectors spanning the direction space of the affine hull.
  std::vector<LatticeVector> direction_generators() const;
  /// Z-basis of the lattice of integer points in the direction space.
  std::vector<LatticeVector> lattice_basis() const;

  /// Faces of codimension one, in the order of facets().
  const std::vector<Cell>& facet_cells() const;
  /// All faces of the given dimension.
  std::vector<Cell> faces(int face_dim) const;
  /// The smallest face containing p (p must lie in the cell).
  Cell smallest_face_containing(const RationalVector& p) const;

  bool operator==(const Cell& other) const;

private:
  void canonicalize();
  void compute_facets() const;

  struct HDescription {
    std::vector<Constraint> facets;
    std::vector<Constraint> equations;
  };

  std::size_t ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<RationalVector> vertices_;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> lineality_;
  mutable std::shared_ptr<const HDescription> hdesc_;
  mutable std::shared_ptr<const std::vector<Cell>> facet_cells_;
};

bool operator<(const Cell& a, const Cell& b);

/// The cone generated by the given vectors.
Cell cone_from_generators(std::size_t ambient_dim, const std::vector<LatticeVector>& generators);

Cell intersect_cells(const Cell& a, const Cell& b);
/// Cheap test: false if a ∩ b certainly has smaller dimension than a
/// (some facet or equation of b cuts a only along its boundary).
bool may_fill(const Cell& a, const Cell& b);

/// Cartesian product a × b.
Cell product_cell(const Cell& a, const Cell& b);

/// True iff face is a (possibly improper) face of cell.
bool is_face(const Cell& face, const Cell& cell);

/// The cone generated by cell − p, for p in the cell.
Cell tangent_cone(const Cell& cell, const RationalVector& p);

/// A primitive normal vector of sigma relative to its facet tau: an integer
/// vector pointing into sigma whose class generates the quotient of the
/// lattices of sigma and tau.
LatticeVector primitive_normal(const Cell& sigma, const Cell& tau);

/// A polyhedral complex given by its maximal cells.
class Complex {
public:
  Complex() = default;
  Complex(std::size_t ambient_dim, std::vector<Cell> maximal_cells, bool complete = false);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Cell>& maximal_cells() const { return maximal_; }
  /// Declared to cover the whole ambient space.
  bool is_complete() const { return complete_; }
  std::vector<Cell> cells_of_dim(int dim) const;
  std::vector<Cell> all_cells() const;
  /// Rays of a pointed fan (primitive generators, sorted).
  std::vector<LatticeVector> rays() const;
  bool support_contains(const RationalVector& p) const;

private:
  std::size_t ambient_dim_ = 0;
  std::vector<Cell> maximal_;
  bool complete_ = false;
};

/// Pieces of cell cut out by the maximal cells of the carrier, or nullopt if
/// the carrier does not cover the cell.
std::optional<std::vector<Cell>> subdivide_cell(const Cell& cell, const Complex& carrier);

struct WeightedCell {
  Cell cell;
  Integer weight;
  bool operator==(const WeightedCell&) const = default;
};

/// Weighted pure-dimensional polyhedral complex. The empty cycle is a value
/// like any other.
class Cycle {
public:
  Cycle() = default;
  /// The empty cycle.
  Cycle(std::size_t ambient_dim, int dim);

  /// Cells must already form a polyhedral complex. Identical cells are
  /// merged, zero weights dropped, cells sorted.
  static Cycle from_cells(std::size_t ambient_dim, int dim, std::vector<WeightedCell> cells);
  /// Cells may overlap arbitrarily; they are subdivided until they form a
  /// complex and the weights of coinciding pieces are summed.
  static Cycle assemble(std::size_t ambient_dim, int dim, std::vector<WeightedCell> cells);

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  bool empty() const { return cells_.empty(); }
  const std::vector<WeightedCell>& cells() const { return cells_; }
  Complex complex() const;

  Cycle scaled(const Integer& factor) const;
  Cycle operator-() const { return scaled(Integer(-1)); }
  Cycle operator+(const Cycle& other) const;
  Cycle operator-(const Cycle& other) const;

  bool operator==(const Cycle&) const = default;

private:
  std::size_t ambient_dim_ = 0;
  int dim_ = 0;
  std::vector<WeightedCell> cells_;
};

/// A codimension-one cell together with the maximal cells containing it.
struct Ridge {
  Cell face;
  std::vector<std::size_t> cells;  // indices into Cycle::cells()
};

std::vector<Ridge> ridges(const Cycle& X);

struct BalanceReport {
  bool balanced = true;
  std::optional<Cell> witness;
  LatticeVector residual;
};

BalanceReport is_balanced(const Cycle& X);

Cycle cross(const Cycle& X, const Cycle& Y);

/// Star of X at a point: the fan of cones generated by sigma − p over the
/// cells sigma containing p, with inherited weights.
Cycle star(const Cycle& X, const RationalVector& p);
/// As above, validating that p lies in the relative interior of tau.
Cycle star(const Cycle& X, const Cell& tau, const RationalVector& p);

/// Stellar subdivision of a fan cycle with pointed cells along the ray
/// through r.
Cycle stellar_subdivide(const Cycle& X, const LatticeVector& r);

/// Subdivides X so that every cell lies in a cell of the carrier.
Cycle common_refinement(const Cycle& X, const Complex& carrier);

bool cycles_equal(const Cycle& X, const Cycle& Y);

bool support_contains(const Cycle& X, const RationalVector& p);

/// True iff the support of X lies in the support of the ambient complex.
bool support_within(const Cycle& X, const Complex& ambient);

Integer degree(const Cycle& X);

/// The whole space R^n as a one-cell cycle with weight 1.
Cycle whole_space(std::size_t n);

/// The origin of R^n with the given weight.
Cycle origin_cycle(std::size_t n, const Integer& weight = 1);

struct ZeroCycleSummary {
  std::vector<RationalVector> points;
  std::vector<Integer> weights;
};

ZeroCycleSummary zero_cycle_summary(const Cycle& X);

}  // namespace tropical
