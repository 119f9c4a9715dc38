// Exact integer/rational arithmetic and lattice linear algebra.
//
// Everything here is arbitrary precision (GMP). Rationals are kept in
// canonical form so that structural equality is value equality.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropical {

using Integer = mpz_class;
using Rational = mpq_class;
using LatticeVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Input rejected by a precondition or schema check.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal self-check failed (a computed identity did not hold).
class VerificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// Vector helpers.
LatticeVector zero_lattice_vector(std::size_t dim);
LatticeVector unit_vector(std::size_t dim, std::size_t index);
bool is_zero(const LatticeVector& v);
bool is_zero(const RationalVector& v);
Integer content(const LatticeVector& v);  // gcd of |entries|, 0 for the zero vector
Integer dot(const LatticeVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const LatticeVector& b);
RationalVector to_rational(const LatticeVector& v);
LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector subtract(const LatticeVector& a, const LatticeVector& b);
LatticeVector scale(const Integer& c, const LatticeVector& v);
LatticeVector negate(const LatticeVector& v);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector subtract(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rational& c, const RationalVector& v);

/// Divides out the content. Throws ValidationError for the zero vector.
LatticeVector primitive_vector(const LatticeVector& v);

/// Smallest positive integer multiple of a rational vector that is
/// integral, divided by its content. Zero maps to zero.
LatticeVector primitive_integer_multiple(const RationalVector& v);

/// Dense integer matrix, row major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  std::vector<LatticeVector> row_list() const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  LatticeVector operator*(const LatticeVector& v) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const IntMatrix& other) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteForm {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, H = U * M
  std::size_t rank = 0;
};

/// Row Hermite normal form: upper echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& M);

Integer determinant(const IntMatrix& M);

/// Z-basis of { x in Z^cols : M x = 0 }.
std::vector<LatticeVector> integer_kernel(const IntMatrix& M);

/// Z-basis of span_Q(generators) ∩ Z^dim.
std::vector<LatticeVector> saturated_basis(const std::vector<LatticeVector>& generators,
                                           std::size_t dim);

/// Index of the lattice spanned by `sub` inside the lattice spanned by
/// `lattice`. Both must be independent and span the same rational space,
/// and `sub` must lie in the lattice.
Integer lattice_index(const std::vector<LatticeVector>& sub,
                      const std::vector<LatticeVector>& lattice);

// Rational linear algebra.
using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
  RationalMatrix rows;               // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelon rref(RationalMatrix M, std::size_t cols);
std::size_t rank(const std::vector<LatticeVector>& vectors, std::size_t dim);
std::size_t rank(const RationalMatrix& vectors, std::size_t dim);
RationalMatrix to_rational(const std::vector<LatticeVector>& rows);

/// Rational basis of { x : M x = 0 }.
RationalMatrix rational_kernel(const RationalMatrix& M, std::size_t cols);

struct LinearSolution {
  RationalVector particular;
  RationalMatrix kernel;
};

/// Solves M x = b exactly. Returns nullopt if the system is inconsistent.
std::optional<LinearSolution> solve_rational(const RationalMatrix& M, std::size_t cols,
                                             const RationalVector& b);
std::optional<LinearSolution> solve_rational(const IntMatrix& M, const RationalVector& b);

/// Coordinates of v in terms of independent `basis` vectors, if v lies in
/// their span.
std::optional<RationalVector> coordinates_in(const std::vector<LatticeVector>& basis,
                                             const RationalVector& v);

/// Returns (g, x) with sum x_i a_i = g = gcd(a).
std::pair<Integer, LatticeVector> extended_gcd(const LatticeVector& a);

}  // namespace tropical
