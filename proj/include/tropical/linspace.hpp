// Tropical linear spaces, the refinement of their squares, and Cartier
// divisor representations of their diagonals.

#pragma once

#include <string>
#include <vector>

#include "tropical/functions.hpp"

namespace tropical {

/// Rays of the refined product fan in R^n × R^n. With -e_0 = (1, ..., 1):
/// first(i) = (-e_i | 0), second(i) = (0 | -e_i), both(i) = (-e_i | -e_i).
struct RaySymbol {
  enum class Kind { first, second, both };
  Kind kind;
  std::size_t index;

  LatticeVector vector(std::size_t n) const;
  /// T1..Tn, A (= first 0), B (= second 0), B1..Bn, D (= both 0), D1..Dn.
  std::string name() const;
  static RaySymbol parse(const std::string& name);

  auto operator<=>(const RaySymbol&) const = default;
};

RaySymbol T(std::size_t i);
RaySymbol A();
RaySymbol B();
RaySymbol Bi(std::size_t i);
RaySymbol D(std::size_t i = 0);

/// Integer combination of ray functions.
using SymbolCombination = std::vector<std::pair<Integer, RaySymbol>>;

std::string to_string(const SymbolCombination& h);

/// Sums of products of functions whose sum, applied to ambient × ambient,
/// yields the diagonal of the ambient cycle.
struct DiagonalRepresentation {
  Cycle ambient;
  std::vector<CartierTerm> tuples;
  /// Symbolic form of each tuple's factors (empty if not built from rays).
  std::vector<std::vector<SymbolCombination>> symbolic;

  std::size_t codim() const;
  CartierExpression expression() const { return {tuples}; }
};

/// Applies the representation's sum of products to a cycle of ambient × ambient.
Cycle apply_representation(const DiagonalRepresentation& rep, const Cycle& Z);

/// Throws VerificationError unless the representation reproduces the diagonal.
void verify_representation(const DiagonalRepresentation& rep);

/// The fan of cones on subsets of {-e_0, ..., -e_n} of size at most k.
Cycle build_lnk(std::size_t n, std::size_t k);

/// Refinement of the square of build_lnk(n, k) containing the diagonal as
/// a subfan. Complete for k = n.
Complex build_fnk(std::size_t n, std::size_t k);

/// The maximal cones of build_fnk as sets of ray symbols.
std::vector<std::vector<RaySymbol>> fnk_cone_symbols(std::size_t n, std::size_t k);

/// The fan of build_fnk(n, n) as a cycle with all weights one.
Cycle fnn_cycle(std::size_t n);

PLFunction symbol_function(std::size_t n, const SymbolCombination& h);

/// prod_{i=1..n} (T_i + B) · (A + D)^k as functions on the complete refinement.
CartierExpression diagonal_divisors_rn(std::size_t n, std::size_t k);

/// Tuples of combinations of ray functions cutting out the diagonal of
/// build_lnk(n, n - k) from its square. Verified before returning.
DiagonalRepresentation rewrite_diagonal(std::size_t n, std::size_t k);

/// The representation restricted to the star of build_lnk(n, k) at a
/// relative interior point of tau. Verified before returning.
DiagonalRepresentation star_diagonal(std::size_t n, std::size_t k, const Cell& tau);

struct RelationParameters {
  char which = 'a';              // 'a', 'b' or 'c'
  std::size_t k = 0;             // C lies in build_lnk(n, n - k)
  std::size_t r = 0;             // (b), (c)
  std::size_t s = 0;             // (c)
  std::vector<RaySymbol> vs;     // distinct, from T_1..T_n and D
};

/// True iff the selected product applied to C × R^n is zero.
bool relations_check(const Cycle& C, const RelationParameters& params);

/// All parameter choices of the given kind for which C is admissible.
std::vector<RelationParameters> admissible_relations(const Cycle& C, char which);

}  // namespace tropical
