// Piecewise affine functions on polyhedral complexes and their divisors.

#pragma once

#include <vector>

#include "tropical/polyhedra.hpp"

namespace tropical {

/// x -> linear · x + constant.
struct AffineForm {
  RationalVector linear;
  Rational constant;

  Rational operator()(const RationalVector& p) const { return dot(linear, p) + constant; }
  bool operator==(const AffineForm&) const = default;
};

/// Integer-affine map x -> matrix · x + translation.
struct Morphism {
  IntMatrix matrix;
  LatticeVector translation;

  Morphism() = default;
  explicit Morphism(IntMatrix m);
  Morphism(IntMatrix m, LatticeVector t);

  std::size_t source_dim() const { return matrix.cols(); }
  std::size_t target_dim() const { return matrix.rows(); }
  bool is_linear() const { return is_zero(translation); }
  RationalVector operator()(const RationalVector& p) const;
  /// Composition: (this ∘ inner)(x) = this(inner(x)).
  Morphism after(const Morphism& inner) const;

  static Morphism identity(std::size_t n);
  /// x -> (x, x).
  static Morphism diagonal(std::size_t n);
  /// Keeps the coordinates [begin, begin + count) of R^n.
  static Morphism coordinate_projection(std::size_t n, std::size_t begin, std::size_t count);
};

/// A function given by one affine form per maximal cell of its carrier.
class PLFunction {
public:
  PLFunction() = default;
  /// forms[i] belongs to carrier.maximal_cells()[i]; continuity across
  /// shared facets is checked.
  PLFunction(Complex carrier, std::vector<AffineForm> forms);

  static PLFunction zero(const Complex& carrier);
  static PLFunction linear(const Complex& carrier, const AffineForm& form);

  const Complex& carrier() const { return carrier_; }
  const std::vector<AffineForm>& forms() const { return forms_; }
  std::size_t ambient_dim() const { return carrier_.ambient_dim(); }

  /// Form of a carrier cell containing the given cell.
  const AffineForm& form_on(const Cell& cell) const;
  Rational operator()(const RationalVector& p) const;

private:
  Complex carrier_;
  std::vector<AffineForm> forms_;
};

/// On a simplicial fan: 1 on the primitive generator of ray, 0 on all other
/// rays, linear on every cone.
PLFunction ray_function(const Complex& fan, const LatticeVector& ray);

/// Sum of coefficient · ray_function(fan, ray), computed cone by cone.
PLFunction ray_combination(const Complex& fan,
                           const std::vector<std::pair<Integer, LatticeVector>>& terms);

/// Pointwise maximum of the candidate forms; each carrier cell must have a
/// candidate dominating all others on it.
PLFunction max_function(const Complex& carrier, const std::vector<AffineForm>& candidates);

/// max{0, x_1, ..., x_n} on the given carrier.
PLFunction max_poly_function(std::size_t n, const Complex& carrier);

PLFunction add_functions(const PLFunction& a, const PLFunction& b);
PLFunction scale_function(const Integer& c, const PLFunction& f);

/// phi ∘ f on a subdivision of the source carrier (the whole source space
/// if none is given).
PLFunction pullback_function(const Morphism& f, const PLFunction& phi);
PLFunction pullback_function(const Morphism& f, const PLFunction& phi, const Complex& source_carrier);

/// The induced linear function on the star fan at p.
PLFunction star_function(const PLFunction& phi, const RationalVector& p);

/// Divisor of phi on X: a cycle of one dimension less on the codimension
/// one cells of X.
Cycle divisor(const PLFunction& phi, const Cycle& X);

/// Every maximal cone is generated by part of a lattice basis.
bool is_unimodular(const Complex& fan);

/// Formal sum of products of functions.
struct CartierTerm {
  Integer coefficient;
  std::vector<PLFunction> factors;
};

struct CartierExpression {
  std::vector<CartierTerm> terms;

  std::size_t degree() const;
};

Cycle apply_expression(const CartierExpression& P, const Cycle& X);

/// Product of functions applied to X (factors applied from the last).
Cycle apply_product(const std::vector<PLFunction>& factors, const Cycle& X);

}  // namespace tropical
