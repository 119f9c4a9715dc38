#include "tropical/exactmath.hpp"

#include <algorithm>
#include <utility>

namespace tropical {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer parse_integer(const std::string& text) {
  Integer value;
  std::string trimmed = text;
  if (!trimmed.empty() && trimmed.front() == '+') trimmed.erase(0, 1);
  if (trimmed.empty() || value.set_str(trimmed, 10) != 0)
    throw ValidationError("malformed integer '" + text + "'");
  return value;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

LatticeVector zero_lattice_vector(std::size_t dim) { return LatticeVector(dim, Integer(0)); }

LatticeVector unit_vector(std::size_t dim, std::size_t index) {
  LatticeVector v(dim, Integer(0));
  v.at(index) = 1;
  return v;
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const LatticeVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticeVector subtract(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

LatticeVector scale(const Integer& c, const LatticeVector& v) {
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

LatticeVector negate(const LatticeVector& v) { return scale(Integer(-1), v); }

RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector subtract(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalVector scale(const Rational& c, const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

LatticeVector primitive_vector(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw ValidationError("zero vector has no primitive representative");
  if (g == 1) return v;
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

LatticeVector primitive_integer_multiple(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * l;
    out[i] = scaled.get_num();
  }
  if (is_zero(out)) return out;
  return primitive_vector(out);
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("matrix row has wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  return LatticeVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<LatticeVector> IntMatrix::row_list() const {
  std::vector<LatticeVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw ValidationError("matrix shape mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    }
  return out;
}

LatticeVector IntMatrix::operator*(const LatticeVector& v) const {
  if (v.size() != cols_) throw ValidationError("matrix/vector shape mismatch");
  LatticeVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RationalVector IntMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw ValidationError("matrix/vector shape mismatch");
  RationalVector out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

void combine_rows(IntMatrix& m, std::size_t r1, std::size_t r2, const Integer& a, const Integer& b,
                  const Integer& c, const Integer& d) {
  // [r1; r2] <- [[a, b], [c, d]] * [r1; r2]
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(r1, j);
    Integer y = m(r2, j);
    m(r1, j) = a * x + b * y;
    m(r2, j) = c * x + d * y;
  }
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= q * m(source, j);
}

}  // namespace

HermiteForm hnf(const IntMatrix& M) {
  HermiteForm out{M, IntMatrix::identity(M.rows()), 0};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (std::size_t i = r + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0) continue;
      Integer a = H(r, c);
      Integer b = H(i, c);
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer bg = b / g;
      Integer ag = a / g;
      // det [[x, y], [-b/g, a/g]] = (x a + y b) / g = 1
      combine_rows(H, r, i, x, y, -bg, ag);
      combine_rows(U, r, i, x, y, -bg, ag);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    const Integer pivot = H(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), pivot.get_mpz_t());
      add_row_multiple(H, i, r, q);
      add_row_multiple(U, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw ValidationError("determinant of non-square matrix");
  const std::size_t n = M.rows();
  std::vector<RationalVector> a(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M(i, j);
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det.get_num();
}

std::vector<LatticeVector> integer_kernel(const IntMatrix& M) {
  // H = U M^T; zero rows of H give rows of U with M u = 0.
  HermiteForm hf = hnf(M.transpose());
  std::vector<LatticeVector> basis;
  for (std::size_t i = hf.rank; i < hf.U.rows(); ++i) basis.push_back(hf.U.row(i));
  if (basis.empty()) return basis;
  // Canonical representative of the kernel lattice.
  HermiteForm reduced = hnf(IntMatrix::from_rows(basis, M.cols()));
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < reduced.rank; ++i) out.push_back(reduced.H.row(i));
  return out;
}

std::vector<LatticeVector> saturated_basis(const std::vector<LatticeVector>& generators,
                                           std::size_t dim) {
  std::vector<LatticeVector> nonzero;
  for (const auto& g : generators)
    if (!is_zero(g)) nonzero.push_back(g);
  if (nonzero.empty()) return {};
  auto orth = integer_kernel(IntMatrix::from_rows(nonzero, dim));
  if (orth.empty()) {
    std::vector<LatticeVector> all;
    for (std::size_t i = 0; i < dim; ++i) all.push_back(unit_vector(dim, i));
    return all;
  }
  return integer_kernel(IntMatrix::from_rows(orth, dim));
}

Integer lattice_index(const std::vector<LatticeVector>& sub, const std::vector<LatticeVector>& lattice) {
  if (sub.empty() && lattice.empty()) return 1;
  if (sub.empty() || lattice.empty()) throw ValidationError("sublattice span mismatch");
  const std::size_t dim = lattice.front().size();
  const std::size_t r = lattice.size();
  if (rank(lattice, dim) != r || rank(sub, dim) != sub.size())
    throw ValidationError("lattice generators are linearly dependent");
  if (sub.size() != r) throw ValidationError("sublattice span mismatch");
  std::vector<LatticeVector> both = lattice;
  both.insert(both.end(), sub.begin(), sub.end());
  if (rank(both, dim) != r) throw ValidationError("sublattice span mismatch");
  for (const auto& s : sub) {
    auto coords = coordinates_in(lattice, to_rational(s));
    for (const auto& c : *coords)
      if (c.get_den() != 1) throw ValidationError("vector does not lie in the lattice");
  }
  // Ratio of maximal minors on the pivot columns of the lattice's HNF.
  HermiteForm hf = hnf(IntMatrix::from_rows(lattice, dim));
  std::vector<std::size_t> pivots;
  Integer pivot_product = 1;
  for (std::size_t i = 0; i < hf.rank; ++i) {
    std::size_t c = 0;
    while (hf.H(i, c) == 0) ++c;
    pivots.push_back(c);
    pivot_product *= hf.H(i, c);
  }
  IntMatrix minor(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) minor(i, j) = sub[i][pivots[j]];
  Integer d = abs(determinant(minor));
  return d / pivot_product;
}

// ---------------------------------------------------------------------------
// Rational linear algebra

RowEchelon rref(RationalMatrix M, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[r]);
    Rational inv = 1 / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (std::size_t j = 0; j < M[i].size(); ++j) M[i][j] -= f * M[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  M.resize(r);
  out.rows = std::move(M);
  return out;
}

RationalMatrix to_rational(const std::vector<LatticeVector>& rows) {
  RationalMatrix out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_rational(r));
  return out;
}

std::size_t rank(const RationalMatrix& vectors, std::size_t dim) { return rref(vectors, dim).rows.size(); }

std::size_t rank(const std::vector<LatticeVector>& vectors, std::size_t dim) {
  return rank(to_rational(vectors), dim);
}

RationalMatrix rational_kernel(const RationalMatrix& M, std::size_t cols) {
  RowEchelon e = rref(M, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LinearSolution> solve_rational(const RationalMatrix& M, std::size_t cols,
                                             const RationalVector& b) {
  if (b.size() != M.size()) throw ValidationError("right-hand side has wrong length");
  RationalMatrix augmented = M;
  for (std::size_t i = 0; i < augmented.size(); ++i) {
    if (augmented[i].size() != cols) throw ValidationError("matrix row has wrong length");
    augmented[i].push_back(b[i]);
  }
  RowEchelon e = rref(augmented, cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) sol.particular[e.pivots[i]] = e.rows[i][cols];
  sol.kernel = rational_kernel(M, cols);
  return sol;
}

std::optional<LinearSolution> solve_rational(const IntMatrix& M, const RationalVector& b) {
  RationalMatrix rows;
  for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(to_rational(M.row(i)));
  return solve_rational(rows, M.cols(), b);
}

std::optional<RationalVector> coordinates_in(const std::vector<LatticeVector>& basis,
                                             const RationalVector& v) {
  if (basis.empty()) {
    if (is_zero(v)) return RationalVector{};
    return std::nullopt;
  }
  const std::size_t dim = v.size();
  const std::size_t k = basis.size();
  RationalMatrix M(dim, RationalVector(k));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < k; ++j) M[i][j] = basis[j][i];
  auto sol = solve_rational(M, k, v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

std::pair<Integer, LatticeVector> extended_gcd(const LatticeVector& a) {
  Integer g = 0;
  LatticeVector x(a.size(), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Integer ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) x[j] *= s;
    x[i] = t;
    g = ng;
  }
  return {g, x};
}

}  // namespace tropical
