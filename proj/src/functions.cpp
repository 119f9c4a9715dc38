#include "tropical/functions.hpp"

#include <algorithm>
#include <map>

namespace tropical {

namespace {

AffineForm zero_form(std::size_t n) { return {RationalVector(n, Rational(0)), 0}; }

AffineForm add_forms(const AffineForm& a, const AffineForm& b) {
  return {add(a.linear, b.linear), a.constant + b.constant};
}

bool forms_agree_on(const AffineForm& a, const AffineForm& b, const Cell& cell) {
  for (const auto& v : cell.vertices())
    if (a(v) != b(v)) return false;
  for (const auto& r : cell.rays())
    if (dot(a.linear, r) != dot(b.linear, r)) return false;
  for (const auto& l : cell.lineality())
    if (dot(a.linear, l) != dot(b.linear, l)) return false;
  return true;
}

PLFunction function_from_map(std::size_t ambient_dim, const std::map<Cell, AffineForm>& pieces,
                             bool complete) {
  std::vector<Cell> cells;
  std::vector<AffineForm> forms;
  for (const auto& [cell, form] : pieces) {
    cells.push_back(cell);
    forms.push_back(form);
  }
  return PLFunction(Complex(ambient_dim, std::move(cells), complete), std::move(forms));
}

// The covector in the span of the generators taking the given values on them.
RationalVector covector_with_values(const std::vector<LatticeVector>& gens, const RationalVector& values,
                                    std::size_t n) {
  const std::size_t k = gens.size();
  RationalMatrix gram(k, RationalVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(gens[i], gens[j]);
  auto sol = solve_rational(gram, k, values);
  if (!sol) throw ValidationError("generators are linearly dependent");
  RationalVector c(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) c[j] += sol->particular[i] * gens[i][j];
  return c;
}

void require_simplicial(const Cell& cell) {
  if (!cell.is_cone() || !cell.lineality().empty() ||
      static_cast<int>(cell.rays().size()) != cell.dim())
    throw ValidationError("ray functions need a simplicial carrier");
}

Constraint pull_back_constraint(const Morphism& f, const Constraint& c) {
  LatticeVector normal = f.matrix.transpose() * c.normal;
  return {normal, c.offset - dot(c.normal, f.translation)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphism

Morphism::Morphism(IntMatrix m) : matrix(std::move(m)), translation(matrix.rows(), Integer(0)) {}

Morphism::Morphism(IntMatrix m, LatticeVector t) : matrix(std::move(m)), translation(std::move(t)) {
  if (translation.size() != matrix.rows()) throw ValidationError("translation has wrong dimension");
}

RationalVector Morphism::operator()(const RationalVector& p) const {
  return add(matrix * p, to_rational(translation));
}

Morphism Morphism::after(const Morphism& inner) const {
  if (inner.target_dim() != source_dim()) throw ValidationError("morphisms cannot be composed");
  return Morphism(matrix * inner.matrix, add(matrix * inner.translation, translation));
}

Morphism Morphism::identity(std::size_t n) { return Morphism(IntMatrix::identity(n)); }

Morphism Morphism::diagonal(std::size_t n) {
  IntMatrix m(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
    m(n + i, i) = 1;
  }
  return Morphism(m);
}

Morphism Morphism::coordinate_projection(std::size_t n, std::size_t begin, std::size_t count) {
  if (begin + count > n) throw ValidationError("projection out of range");
  IntMatrix m(count, n);
  for (std::size_t i = 0; i < count; ++i) m(i, begin + i) = 1;
  return Morphism(m);
}

// ---------------------------------------------------------------------------
// PLFunction

PLFunction::PLFunction(Complex carrier, std::vector<AffineForm> forms)
    : carrier_(std::move(carrier)), forms_(std::move(forms)) {
  if (forms_.size() != carrier_.maximal_cells().size())
    throw ValidationError("need exactly one form per carrier cell");
  for (const auto& f : forms_)
    if (f.linear.size() != carrier_.ambient_dim()) throw ValidationError("form has wrong dimension");
  std::map<Cell, std::size_t> first_owner;
  const auto& cells = carrier_.maximal_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (const auto& facet : cells[i].facet_cells()) {
      auto [it, inserted] = first_owner.emplace(facet, i);
      if (!inserted && !forms_agree_on(forms_[it->second], forms_[i], facet))
        throw ValidationError("function is not continuous");
    }
  }
}

PLFunction PLFunction::zero(const Complex& carrier) {
  return linear(carrier, zero_form(carrier.ambient_dim()));
}

PLFunction PLFunction::linear(const Complex& carrier, const AffineForm& form) {
  return PLFunction(carrier, std::vector<AffineForm>(carrier.maximal_cells().size(), form));
}

const AffineForm& PLFunction::form_on(const Cell& cell) const {
  const auto& cells = carrier_.maximal_cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].contains(cell)) return forms_[i];
  throw ValidationError("cell is not contained in a cell of the carrier");
}

Rational PLFunction::operator()(const RationalVector& p) const {
  const auto& cells = carrier_.maximal_cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].contains(p)) return forms_[i](p);
  throw ValidationError("point outside the carrier");
}

// ---------------------------------------------------------------------------
// Constructions

PLFunction ray_function(const Complex& fan, const LatticeVector& ray) {
  return ray_combination(fan, {{Integer(1), ray}});
}

PLFunction ray_combination(const Complex& fan,
                           const std::vector<std::pair<Integer, LatticeVector>>& terms) {
  const std::size_t n = fan.ambient_dim();
  const auto fan_rays = fan.rays();
  std::vector<std::pair<Integer, LatticeVector>> normalized;
  for (const auto& [c, r] : terms) {
    if (r.size() != n) throw ValidationError("ray has wrong dimension");
    LatticeVector p = primitive_vector(r);
    if (!std::binary_search(fan_rays.begin(), fan_rays.end(), p))
      throw ValidationError("not a ray of the carrier");
    normalized.emplace_back(c, p);
  }
  std::vector<AffineForm> forms;
  for (const auto& cell : fan.maximal_cells()) {
    require_simplicial(cell);
    RationalVector values(cell.rays().size(), Rational(0));
    for (std::size_t i = 0; i < cell.rays().size(); ++i)
      for (const auto& [c, r] : normalized)
        if (r == cell.rays()[i]) values[i] += c;
    forms.push_back({covector_with_values(cell.rays(), values, n), 0});
  }
  return PLFunction(fan, std::move(forms));
}

PLFunction max_function(const Complex& carrier, const std::vector<AffineForm>& candidates) {
  std::vector<AffineForm> forms;
  for (const auto& cell : carrier.maximal_cells()) {
    std::optional<std::size_t> winner;
    for (std::size_t i = 0; i < candidates.size() && !winner; ++i) {
      const auto& a = candidates[i];
      bool dominates = true;
      for (std::size_t j = 0; j < candidates.size() && dominates; ++j) {
        const auto& b = candidates[j];
        for (const auto& v : cell.vertices())
          if (a(v) < b(v)) dominates = false;
        for (const auto& r : cell.rays())
          if (dot(a.linear, r) < dot(b.linear, r)) dominates = false;
        for (const auto& l : cell.lineality())
          if (dot(a.linear, l) != dot(b.linear, l)) dominates = false;
      }
      if (dominates) winner = i;
    }
    if (!winner) throw ValidationError("function not linear on carrier");
    forms.push_back(candidates[*winner]);
  }
  return PLFunction(carrier, std::move(forms));
}

PLFunction max_poly_function(std::size_t n, const Complex& carrier) {
  if (carrier.ambient_dim() != n) throw ValidationError("carrier lives in a different space");
  std::vector<AffineForm> candidates{zero_form(n)};
  for (std::size_t i = 0; i < n; ++i) candidates.push_back({to_rational(unit_vector(n, i)), 0});
  return max_function(carrier, candidates);
}

PLFunction add_functions(const PLFunction& a, const PLFunction& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ValidationError("functions live in different spaces");
  const auto& ca = a.carrier().maximal_cells();
  const auto& cb = b.carrier().maximal_cells();
  if (ca == cb) {
    std::vector<AffineForm> forms;
    for (std::size_t i = 0; i < ca.size(); ++i) forms.push_back(add_forms(a.forms()[i], b.forms()[i]));
    return PLFunction(a.carrier(), std::move(forms));
  }
  std::map<Cell, AffineForm> pieces;
  int top = -1;
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) {
      Cell meet = intersect_cells(ca[i], cb[j]);
      if (meet.is_empty() || meet.dim() < top) continue;
      if (meet.dim() > top) {
        pieces.clear();
        top = meet.dim();
      }
      pieces.emplace(meet, add_forms(a.forms()[i], b.forms()[j]));
    }
  return function_from_map(a.ambient_dim(), pieces,
                           a.carrier().is_complete() && b.carrier().is_complete());
}

PLFunction scale_function(const Integer& c, const PLFunction& f) {
  std::vector<AffineForm> forms;
  for (const auto& form : f.forms()) forms.push_back({scale(Rational(c), form.linear), c * form.constant});
  return PLFunction(f.carrier(), std::move(forms));
}

PLFunction pullback_function(const Morphism& f, const PLFunction& phi) {
  const std::size_t m = f.source_dim();
  std::vector<LatticeVector> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(unit_vector(m, i));
  Cell everything = Cell::from_minimal_generators(m, {RationalVector(m, Rational(0))}, {}, basis);
  return pullback_function(f, phi, Complex(m, {everything}, true));
}

PLFunction pullback_function(const Morphism& f, const PLFunction& phi, const Complex& source_carrier) {
  if (f.target_dim() != phi.ambient_dim()) throw ValidationError("morphism target does not match function");
  if (f.source_dim() != source_carrier.ambient_dim())
    throw ValidationError("morphism source does not match carrier");
  const std::size_t m = f.source_dim();
  IntMatrix transpose = f.matrix.transpose();
  std::map<Cell, AffineForm> preimages;
  const auto& cells = phi.carrier().maximal_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<Constraint> ineqs, eqs;
    for (const auto& c : cells[i].facets()) ineqs.push_back(pull_back_constraint(f, c));
    for (const auto& c : cells[i].equations()) eqs.push_back(pull_back_constraint(f, c));
    Cell pre = Cell::from_constraints(m, ineqs, eqs);
    if (pre.is_empty()) continue;
    const AffineForm& form = phi.forms()[i];
    AffineForm pulled{transpose * form.linear, dot(form.linear, f.translation) + form.constant};
    preimages.emplace(pre, pulled);
  }
  std::vector<Cell> pre_cells;
  for (const auto& [cell, form] : preimages) pre_cells.push_back(cell);
  Complex pre_complex(m, pre_cells, phi.carrier().is_complete());

  std::map<Cell, AffineForm> pieces;
  for (const auto& source : source_carrier.maximal_cells()) {
    auto parts = subdivide_cell(source, pre_complex);
    if (!parts) throw ValidationError("image escapes carrier");
    for (const auto& part : *parts) {
      for (const auto& [cell, form] : preimages)
        if (cell.contains(part)) {
          pieces.emplace(part, form);
          break;
        }
    }
  }
  return function_from_map(m, pieces, source_carrier.is_complete() && phi.carrier().is_complete());
}

PLFunction star_function(const PLFunction& phi, const RationalVector& p) {
  std::map<Cell, AffineForm> pieces;
  const auto& cells = phi.carrier().maximal_cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].contains(p)) continue;
    pieces.emplace(tangent_cone(cells[i], p), AffineForm{phi.forms()[i].linear, 0});
  }
  if (pieces.empty()) throw ValidationError("point outside the carrier");
  return function_from_map(phi.ambient_dim(), pieces, phi.carrier().is_complete());
}

// ---------------------------------------------------------------------------
// Divisors

Cycle divisor(const PLFunction& phi, const Cycle& X) {
  if (phi.ambient_dim() != X.ambient_dim()) throw ValidationError("function and cycle live in different spaces");
  if (X.empty() || X.dim() <= 0) return Cycle(X.ambient_dim(), X.dim() - 1);
  Cycle refined = common_refinement(X, phi.carrier());
  std::vector<const AffineForm*> forms;
  for (const auto& wc : refined.cells()) forms.push_back(&phi.form_on(wc.cell));

  std::vector<WeightedCell> out;
  for (const auto& ridge : ridges(refined)) {
    LatticeVector normal_sum = zero_lattice_vector(X.ambient_dim());
    Rational value_sum = 0;
    for (std::size_t i : ridge.cells) {
      const auto& wc = refined.cells()[i];
      LatticeVector u = primitive_normal(wc.cell, ridge.face);
      value_sum += wc.weight * dot(forms[i]->linear, u);
      normal_sum = add(normal_sum, scale(wc.weight, u));
    }
    auto span = ridge.face.direction_generators();
    const std::size_t base = rank(span, X.ambient_dim());
    span.push_back(normal_sum);
    if (rank(span, X.ambient_dim()) != base) throw ValidationError("cycle is not balanced");
    Rational weight = value_sum - dot(forms[ridge.cells.front()]->linear, normal_sum);
    if (weight.get_den() != 1) throw ValidationError("divisor weight is not integral");
    if (weight != 0) out.push_back({ridge.face, weight.get_num()});
  }
  return Cycle::from_cells(X.ambient_dim(), X.dim() - 1, std::move(out));
}

bool is_unimodular(const Complex& fan) {
  for (const auto& cell : fan.maximal_cells()) {
    if (!cell.is_cone()) return false;
    std::vector<LatticeVector> gens = cell.rays();
    gens.insert(gens.end(), cell.lineality().begin(), cell.lineality().end());
    if (gens.empty()) continue;
    if (rank(gens, fan.ambient_dim()) != gens.size()) return false;
    if (lattice_index(gens, saturated_basis(gens, fan.ambient_dim())) != 1) return false;
  }
  return true;
}

std::size_t CartierExpression::degree() const {
  if (terms.empty()) return 0;
  const std::size_t d = terms.front().factors.size();
  for (const auto& t : terms)
    if (t.factors.size() != d) throw ValidationError("expression is not homogeneous");
  return d;
}

Cycle apply_product(const std::vector<PLFunction>& factors, const Cycle& X) {
  Cycle current = X;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    current = divisor(*it, current);
    if (current.empty()) {
      const int dim = X.dim() - static_cast<int>(factors.size());
      return Cycle(X.ambient_dim(), dim);
    }
  }
  return current;
}

Cycle apply_expression(const CartierExpression& P, const Cycle& X) {
  const int dim = X.dim() - static_cast<int>(P.degree());
  std::vector<WeightedCell> all;
  for (const auto& term : P.terms) {
    if (term.coefficient == 0) continue;
    Cycle part = apply_product(term.factors, X);
    for (const auto& wc : part.cells()) all.push_back({wc.cell, term.coefficient * wc.weight});
  }
  return Cycle::assemble(X.ambient_dim(), dim, std::move(all));
}

}  // namespace tropical
