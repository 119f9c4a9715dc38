#include <algorithm>
#include <deque>
#include <map>

#include "tropical/polyhedra.hpp"

namespace tropical {

namespace {

// Pieces of cell obtained by cutting it with every hyperplane of other that
// passes through its relative interior.
std::vector<Cell> split_by(const Cell& cell, const Cell& other) {
  std::vector<Constraint> hyperplanes = other.facets();
  hyperplanes.insert(hyperplanes.end(), other.equations().begin(), other.equations().end());
  std::vector<Cell> pieces{cell};
  for (const auto& h : hyperplanes) {
    std::vector<Cell> next;
    for (const auto& piece : pieces) {
      bool below = false, above = false;
      for (const auto& v : piece.vertices()) {
        Rational val = dot(v, h.normal);
        if (val < h.offset) below = true;
        if (val > h.offset) above = true;
      }
      for (const auto& r : piece.rays()) {
        Integer val = dot(r, h.normal);
        if (val < 0) below = true;
        if (val > 0) above = true;
      }
      for (const auto& l : piece.lineality()) {
        if (dot(l, h.normal) != 0) below = above = true;
      }
      if (!(below && above)) {
        next.push_back(piece);
        continue;
      }
      LatticeVector flipped = negate(h.normal);
      next.push_back(intersect_cells(piece, Cell::from_constraints(piece.ambient_dim(), {h})));
      next.push_back(
          intersect_cells(piece, Cell::from_constraints(piece.ambient_dim(), {{flipped, -h.offset}})));
    }
    pieces = std::move(next);
  }
  return pieces;
}

bool compatible(const Cell& a, const Cell& b) {
  if (a == b) return true;
  Cell meet = intersect_cells(a, b);
  if (meet.is_empty()) return true;
  return is_face(meet, a) && is_face(meet, b);
}

void check_cells(std::size_t ambient_dim, int dim, const std::vector<WeightedCell>& cells) {
  for (const auto& wc : cells) {
    if (wc.cell.ambient_dim() != ambient_dim) throw ValidationError("cell lives in the wrong space");
    if (wc.cell.dim() != dim) throw ValidationError("cell has wrong dimension");
  }
}

}  // namespace

std::optional<std::vector<Cell>> subdivide_cell(const Cell& sigma, const Complex& carrier) {
  for (const auto& rho : carrier.maximal_cells())
    if (rho.contains(sigma)) return std::vector<Cell>{sigma};
  std::vector<Cell> pieces;
  for (const auto& rho : carrier.maximal_cells()) {
    if (!may_fill(sigma, rho)) continue;
    Cell piece = intersect_cells(sigma, rho);
    if (piece.dim() == sigma.dim()) pieces.push_back(std::move(piece));
  }
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  if (pieces.empty()) return std::nullopt;
  if (carrier.is_complete()) return pieces;
  std::map<Cell, int> interior_facets;
  for (const auto& piece : pieces)
    for (const auto& f : piece.facet_cells())
      if (sigma.contains_in_relative_interior(f.relative_interior_point())) ++interior_facets[f];
  for (const auto& [facet, count] : interior_facets)
    if (count < 2) return std::nullopt;
  return pieces;
}

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(std::size_t ambient_dim, std::vector<Cell> maximal_cells, bool complete)
    : ambient_dim_(ambient_dim), maximal_(std::move(maximal_cells)), complete_(complete) {
  for (const auto& c : maximal_)
    if (c.ambient_dim() != ambient_dim_) throw ValidationError("cell lives in the wrong space");
  std::sort(maximal_.begin(), maximal_.end());
  maximal_.erase(std::unique(maximal_.begin(), maximal_.end()), maximal_.end());
}

std::vector<Cell> Complex::cells_of_dim(int dim) const {
  std::vector<Cell> out;
  for (const auto& c : maximal_) {
    auto f = c.faces(dim);
    out.insert(out.end(), f.begin(), f.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Cell> Complex::all_cells() const {
  int top = -1;
  for (const auto& c : maximal_) top = std::max(top, c.dim());
  std::vector<Cell> out;
  for (int k = 0; k <= top; ++k) {
    auto layer = cells_of_dim(k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<LatticeVector> Complex::rays() const {
  std::vector<LatticeVector> out;
  for (const auto& c : maximal_) out.insert(out.end(), c.rays().begin(), c.rays().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Complex::support_contains(const RationalVector& p) const {
  if (complete_) return true;
  return std::any_of(maximal_.begin(), maximal_.end(), [&](const Cell& c) { return c.contains(p); });
}

// ---------------------------------------------------------------------------
// Cycle

Cycle::Cycle(std::size_t ambient_dim, int dim) : ambient_dim_(ambient_dim), dim_(dim) {}

Cycle Cycle::from_cells(std::size_t ambient_dim, int dim, std::vector<WeightedCell> cells) {
  check_cells(ambient_dim, dim, cells);
  std::sort(cells.begin(), cells.end(),
            [](const WeightedCell& a, const WeightedCell& b) { return a.cell < b.cell; });
  Cycle out(ambient_dim, dim);
  for (auto& wc : cells) {
    if (!out.cells_.empty() && out.cells_.back().cell == wc.cell) {
      out.cells_.back().weight += wc.weight;
    } else {
      out.cells_.push_back(std::move(wc));
    }
  }
  std::erase_if(out.cells_, [](const WeightedCell& wc) { return wc.weight == 0; });
  return out;
}

Cycle Cycle::assemble(std::size_t ambient_dim, int dim, std::vector<WeightedCell> cells) {
  check_cells(ambient_dim, dim, cells);
  // Merge exact duplicates first; they are by far the most common overlap.
  Cycle merged = from_cells(ambient_dim, dim, std::move(cells));
  std::deque<WeightedCell> queue(merged.cells_.begin(), merged.cells_.end());
  std::vector<WeightedCell> settled;
  while (!queue.empty()) {
    WeightedCell current = std::move(queue.front());
    queue.pop_front();
    bool placed = true;
    for (std::size_t i = 0; i < settled.size(); ++i) {
      if (compatible(current.cell, settled[i].cell)) continue;
      auto current_pieces = split_by(current.cell, settled[i].cell);
      auto settled_pieces = split_by(settled[i].cell, current.cell);
      if (current_pieces.size() == 1 && settled_pieces.size() == 1)
        throw VerificationError("overlapping cells could not be subdivided");
      for (auto& p : settled_pieces) queue.push_back({std::move(p), settled[i].weight});
      for (auto& p : current_pieces) queue.push_back({std::move(p), current.weight});
      settled.erase(settled.begin() + static_cast<std::ptrdiff_t>(i));
      placed = false;
      break;
    }
    if (placed) settled.push_back(std::move(current));
  }
  return from_cells(ambient_dim, dim, std::move(settled));
}

Complex Cycle::complex() const {
  std::vector<Cell> cells;
  for (const auto& wc : cells_) cells.push_back(wc.cell);
  return Complex(ambient_dim_, std::move(cells));
}

Cycle Cycle::scaled(const Integer& factor) const {
  if (factor == 0) return Cycle(ambient_dim_, dim_);
  Cycle out = *this;
  for (auto& wc : out.cells_) wc.weight *= factor;
  return out;
}

Cycle Cycle::operator+(const Cycle& other) const {
  if (ambient_dim_ != other.ambient_dim_) throw ValidationError("cycles live in different spaces");
  if (other.empty()) return *this;
  if (empty()) return other;
  if (dim_ != other.dim_) throw ValidationError("cannot add cycles of different dimensions");
  std::vector<WeightedCell> all = cells_;
  all.insert(all.end(), other.cells_.begin(), other.cells_.end());
  return assemble(ambient_dim_, dim_, std::move(all));
}

Cycle Cycle::operator-(const Cycle& other) const { return *this + (-other); }

// ---------------------------------------------------------------------------
// Structural operations

std::vector<Ridge> ridges(const Cycle& X) {
  std::map<Cell, std::vector<std::size_t>> adjacency;
  for (std::size_t i = 0; i < X.cells().size(); ++i)
    for (const auto& f : X.cells()[i].cell.facet_cells()) adjacency[f].push_back(i);
  std::vector<Ridge> out;
  for (auto& [face, cells] : adjacency) out.push_back({face, std::move(cells)});
  return out;
}

BalanceReport is_balanced(const Cycle& X) {
  BalanceReport report;
  for (const auto& ridge : ridges(X)) {
    LatticeVector sum = zero_lattice_vector(X.ambient_dim());
    for (std::size_t i : ridge.cells) {
      const auto& wc = X.cells()[i];
      sum = add(sum, scale(wc.weight, primitive_normal(wc.cell, ridge.face)));
    }
    auto span = ridge.face.direction_generators();
    std::size_t base = rank(span, X.ambient_dim());
    span.push_back(sum);
    if (rank(span, X.ambient_dim()) != base) {
      report.balanced = false;
      report.witness = ridge.face;
      report.residual = sum;
      return report;
    }
  }
  return report;
}

Cycle cross(const Cycle& X, const Cycle& Y) {
  const std::size_t ambient = X.ambient_dim() + Y.ambient_dim();
  const int dim = X.dim() + Y.dim();
  std::vector<WeightedCell> cells;
  for (const auto& a : X.cells())
    for (const auto& b : Y.cells()) cells.push_back({product_cell(a.cell, b.cell), a.weight * b.weight});
  return Cycle::from_cells(ambient, dim, std::move(cells));
}

Cycle star(const Cycle& X, const RationalVector& p) {
  if (p.size() != X.ambient_dim()) throw ValidationError("point has wrong dimension");
  std::vector<WeightedCell> cells;
  for (const auto& wc : X.cells())
    if (wc.cell.contains(p)) cells.push_back({tangent_cone(wc.cell, p), wc.weight});
  return Cycle::from_cells(X.ambient_dim(), X.dim(), std::move(cells));
}

Cycle star(const Cycle& X, const Cell& tau, const RationalVector& p) {
  if (!tau.contains_in_relative_interior(p))
    throw ValidationError("point does not lie in the relative interior of the cell");
  return star(X, p);
}

Cycle stellar_subdivide(const Cycle& X, const LatticeVector& r) {
  if (r.size() != X.ambient_dim()) throw ValidationError("ray has wrong dimension");
  if (is_zero(r)) throw ValidationError("cannot subdivide along the zero vector");
  const RationalVector point = to_rational(r);
  if (!support_contains(X, point)) throw ValidationError("ray does not lie in the support of the cycle");
  const LatticeVector ray = primitive_vector(r);
  std::vector<WeightedCell> cells;
  for (const auto& wc : X.cells()) {
    const Cell& sigma = wc.cell;
    if (!sigma.contains(point)) {
      cells.push_back(wc);
      continue;
    }
    if (!sigma.is_cone() || !sigma.lineality().empty())
      throw ValidationError("stellar subdivision needs pointed cones");
    Cell carrier = sigma.smallest_face_containing(point);
    if (carrier.dim() == 1) {
      cells.push_back(wc);
      continue;
    }
    for (const auto& f : sigma.facet_cells()) {
      if (f.contains(point)) continue;
      std::vector<LatticeVector> gens = f.rays();
      gens.push_back(ray);
      cells.push_back({Cell::from_minimal_generators(X.ambient_dim(), {RationalVector(X.ambient_dim(), Rational(0))},
                                                     gens),
                       wc.weight});
    }
  }
  return Cycle::from_cells(X.ambient_dim(), X.dim(), std::move(cells));
}

Cycle common_refinement(const Cycle& X, const Complex& carrier) {
  if (carrier.ambient_dim() != X.ambient_dim()) throw ValidationError("carrier lives in a different space");
  std::vector<WeightedCell> cells;
  for (const auto& wc : X.cells()) {
    auto pieces = subdivide_cell(wc.cell, carrier);
    if (!pieces) throw ValidationError("carrier does not cover cycle");
    for (auto& p : *pieces) cells.push_back({std::move(p), wc.weight});
  }
  return Cycle::from_cells(X.ambient_dim(), X.dim(), std::move(cells));
}

namespace {

// Every cell of X is covered by cells of Y carrying the same weight.
bool covered_with_weights(const Cycle& X, const Cycle& Y) {
  for (const auto& wc : X.cells()) {
    const Cell& sigma = wc.cell;
    std::vector<Cell> pieces;
    bool whole = false;
    for (const auto& other : Y.cells()) {
      if (!may_fill(sigma, other.cell)) continue;
      Cell meet = intersect_cells(sigma, other.cell);
      if (meet.is_empty() || meet.dim() != sigma.dim()) continue;
      if (other.weight != wc.weight) return false;
      if (meet == sigma) whole = true;
      pieces.push_back(std::move(meet));
    }
    if (whole) continue;
    if (pieces.empty()) return false;
    std::map<Cell, int> interior_facets;
    for (const auto& piece : pieces)
      for (const auto& f : piece.facet_cells())
        if (sigma.contains_in_relative_interior(f.relative_interior_point())) ++interior_facets[f];
    for (const auto& [facet, count] : interior_facets)
      if (count < 2) return false;
  }
  return true;
}

}  // namespace

bool cycles_equal(const Cycle& X, const Cycle& Y) {
  if (X.ambient_dim() != Y.ambient_dim()) return false;
  if (X.empty() && Y.empty()) return true;
  if (X.empty() != Y.empty()) return false;
  if (X.dim() != Y.dim()) return false;
  if (X == Y) return true;
  return covered_with_weights(X, Y) && covered_with_weights(Y, X);
}

bool support_contains(const Cycle& X, const RationalVector& p) {
  return std::any_of(X.cells().begin(), X.cells().end(),
                     [&](const WeightedCell& wc) { return wc.cell.contains(p); });
}

bool support_within(const Cycle& X, const Complex& ambient) {
  if (ambient.is_complete()) return true;
  for (const auto& wc : X.cells())
    if (!subdivide_cell(wc.cell, ambient)) return false;
  return true;
}

Integer degree(const Cycle& X) {
  if (X.empty()) return 0;
  if (X.dim() != 0) throw ValidationError("degree is only defined for zero-dimensional cycles");
  Integer total = 0;
  for (const auto& wc : X.cells()) total += wc.weight;
  return total;
}

Cycle whole_space(std::size_t n) {
  std::vector<LatticeVector> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vector(n, i));
  Cell cell = Cell::from_minimal_generators(n, {RationalVector(n, Rational(0))}, {}, basis);
  return Cycle::from_cells(n, static_cast<int>(n), {{cell, 1}});
}

Cycle origin_cycle(std::size_t n, const Integer& weight) {
  return Cycle::from_cells(n, 0, {{Cell::point(RationalVector(n, Rational(0))), weight}});
}

ZeroCycleSummary zero_cycle_summary(const Cycle& X) {
  if (!X.empty() && X.dim() != 0) throw ValidationError("cycle is not zero-dimensional");
  ZeroCycleSummary out;
  for (const auto& wc : X.cells()) {
    out.points.push_back(wc.cell.vertices().front());
    out.weights.push_back(wc.weight);
  }
  return out;
}

}  // namespace tropical
