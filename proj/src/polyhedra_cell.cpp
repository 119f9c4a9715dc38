#include <algorithm>
#include <cstdint>
#include <map>

#include "tropical/polyhedra.hpp"

namespace tropical {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if ((a[w] & ~b[w]) != 0) return false;
  return true;
}

Bits bit_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = a[w] & b[w];
  return out;
}

int sign(const Integer& x) { return sgn(x); }

struct DDRay {
  LatticeVector v;
  Bits zeros;
};

// Removes the lineality direction l0 (with a · l0 = s != 0) from the lineality
// basis, making every remaining generator orthogonal to a.
void eliminate_lineality(std::vector<LatticeVector>& lin, std::size_t idx, const LatticeVector& a) {
  const LatticeVector l0 = lin[idx];
  const Integer s = dot(a, l0);
  std::vector<LatticeVector> next;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (i == idx) continue;
    Integer al = dot(a, lin[i]);
    if (al == 0) {
      next.push_back(lin[i]);
    } else {
      next.push_back(primitive_vector(subtract(scale(s, lin[i]), scale(al, l0))));
    }
  }
  lin = std::move(next);
}

std::optional<std::size_t> find_nonorthogonal(const std::vector<LatticeVector>& lin,
                                              const LatticeVector& a) {
  for (std::size_t i = 0; i < lin.size(); ++i)
    if (dot(a, lin[i]) != 0) return i;
  return std::nullopt;
}

RationalVector reduce_modulo(const RowEchelon& basis, RationalVector v) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    Rational c = v[basis.pivots[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * basis.rows[i][j];
  }
  return v;
}

LatticeVector integer_scaled(const RationalVector& v, Integer& den) {
  den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * den;
    out[i] = s.get_num();
  }
  return out;
}

Constraint primitive_constraint(const LatticeVector& normal, const Integer& offset) {
  LatticeVector all = normal;
  all.push_back(offset);
  Integer g = content(all);
  Constraint c{normal, offset};
  if (g > 1) {
    for (auto& x : c.normal) x /= g;
    c.offset /= g;
  }
  return c;
}

}  // namespace

ConeGenerators double_description(std::size_t dim, const std::vector<LatticeVector>& equations,
                                  const std::vector<LatticeVector>& inequalities) {
  std::vector<LatticeVector> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));

  for (const auto& a : equations) {
    if (auto idx = find_nonorthogonal(lin, a)) eliminate_lineality(lin, *idx, a);
  }

  const std::size_t words = inequalities.size() / 64 + 1;
  std::vector<DDRay> rays;
  for (std::size_t j = 0; j < inequalities.size(); ++j) {
    const LatticeVector& a = inequalities[j];
    if (auto idx = find_nonorthogonal(lin, a)) {
      const LatticeVector l0 = lin[*idx];
      const Integer s = dot(a, l0);
      const Integer abs_s = abs(s);
      for (auto& r : rays) {
        Integer ar = dot(a, r.v);
        if (ar != 0) {
          LatticeVector shifted = scale(abs_s, r.v);
          LatticeVector corr = scale(ar * sign(s), l0);
          r.v = primitive_vector(subtract(shifted, corr));
        }
        set_bit(r.zeros, j);
      }
      DDRay fresh{s > 0 ? negate(l0) : l0, Bits(words, 0)};
      for (std::size_t i = 0; i < j; ++i) set_bit(fresh.zeros, i);
      rays.push_back(std::move(fresh));
      eliminate_lineality(lin, *idx, a);
      continue;
    }

    std::vector<Integer> values(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      values[i] = dot(a, rays[i].v);
      if (values[i] > 0) pos.push_back(i);
      if (values[i] < 0) neg.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (values[i] == 0) set_bit(rays[i].zeros, j);
      continue;
    }
    std::vector<DDRay> next;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bits common = bit_and(rays[p].zeros, rays[q].zeros);
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (is_subset(common, rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        LatticeVector w = subtract(scale(values[p], rays[q].v), scale(values[q], rays[p].v));
        DDRay fresh{primitive_vector(w), common};
        set_bit(fresh.zeros, j);
        next.push_back(std::move(fresh));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (values[i] > 0) continue;
      if (values[i] == 0) set_bit(rays[i].zeros, j);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

// ---------------------------------------------------------------------------
// Cell

Cell Cell::empty(std::size_t ambient_dim) {
  Cell c;
  c.ambient_dim_ = ambient_dim;
  c.dim_ = -1;
  return c;
}

Cell Cell::point(const RationalVector& p) { return from_minimal_generators(p.size(), {p}, {}, {}); }

Cell Cell::from_minimal_generators(std::size_t ambient_dim, const std::vector<RationalVector>& vertices,
                                   const std::vector<LatticeVector>& rays,
                                   const std::vector<LatticeVector>& lineality) {
  if (vertices.empty()) {
    if (!rays.empty() || !lineality.empty())
      throw ValidationError("a nonempty cell needs at least one vertex");
    return empty(ambient_dim);
  }
  Cell c;
  c.ambient_dim_ = ambient_dim;
  c.vertices_ = vertices;
  c.rays_ = rays;
  c.lineality_ = lineality;
  for (const auto& v : c.vertices_)
    if (v.size() != ambient_dim) throw ValidationError("vertex has wrong dimension");
  for (const auto& r : c.rays_)
    if (r.size() != ambient_dim) throw ValidationError("ray has wrong dimension");
  for (const auto& l : c.lineality_)
    if (l.size() != ambient_dim) throw ValidationError("lineality vector has wrong dimension");
  c.canonicalize();
  c.dim_ = static_cast<int>(rank(c.direction_generators(), ambient_dim));
  return c;
}

Cell Cell::from_generators(std::size_t ambient_dim, const std::vector<RationalVector>& vertices,
                           const std::vector<LatticeVector>& rays,
                           const std::vector<LatticeVector>& lineality) {
  Cell loose = from_minimal_generators(ambient_dim, vertices, rays, lineality);
  if (loose.is_empty()) return loose;
  return from_constraints(ambient_dim, loose.facets(), loose.equations());
}

Cell Cell::from_constraints(std::size_t ambient_dim, const std::vector<Constraint>& inequalities,
                            const std::vector<Constraint>& equations) {
  auto homogenize = [&](const Constraint& c) {
    if (c.normal.size() != ambient_dim) throw ValidationError("constraint has wrong dimension");
    LatticeVector h = c.normal;
    h.push_back(-c.offset);
    return h;
  };
  std::vector<LatticeVector> eqs, ineqs;
  for (const auto& e : equations) eqs.push_back(homogenize(e));
  for (const auto& i : inequalities) ineqs.push_back(homogenize(i));
  LatticeVector t_nonneg(ambient_dim + 1, Integer(0));
  t_nonneg[ambient_dim] = -1;
  ineqs.push_back(t_nonneg);

  ConeGenerators g = double_description(ambient_dim + 1, eqs, ineqs);
  std::vector<RationalVector> vertices;
  std::vector<LatticeVector> rays, lineality;
  for (const auto& r : g.rays) {
    const Integer& t = r[ambient_dim];
    if (t > 0) {
      RationalVector v(ambient_dim);
      for (std::size_t i = 0; i < ambient_dim; ++i) v[i] = make_rational(r[i], t);
      vertices.push_back(std::move(v));
    } else {
      rays.emplace_back(r.begin(), r.end() - 1);
    }
  }
  for (const auto& l : g.lineality) lineality.emplace_back(l.begin(), l.end() - 1);
  if (vertices.empty()) return empty(ambient_dim);
  return from_minimal_generators(ambient_dim, vertices, rays, lineality);
}

void Cell::canonicalize() {
  RowEchelon lin = rref(to_rational(lineality_), ambient_dim_);
  lineality_.clear();
  for (const auto& row : lin.rows) lineality_.push_back(primitive_integer_multiple(row));

  for (auto& v : vertices_) v = reduce_modulo(lin, v);
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

  std::vector<LatticeVector> reduced;
  for (const auto& r : rays_) {
    RationalVector rr = reduce_modulo(lin, to_rational(r));
    if (is_zero(rr)) continue;
    reduced.push_back(primitive_integer_multiple(rr));
  }
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  rays_ = std::move(reduced);
}

void Cell::compute_facets() const {
  if (dim_ < 0) {
    hdesc_ = std::make_shared<HDescription>();
    return;
  }
  const std::size_t d = ambient_dim_;
  std::vector<LatticeVector> eqs, ineqs;
  for (const auto& l : lineality_) {
    LatticeVector h = l;
    h.push_back(0);
    eqs.push_back(std::move(h));
  }
  for (const auto& v : vertices_) {
    Integer den;
    LatticeVector h = integer_scaled(v, den);
    h.push_back(-den);
    ineqs.push_back(std::move(h));
  }
  for (const auto& r : rays_) {
    LatticeVector h = r;
    h.push_back(0);
    ineqs.push_back(std::move(h));
  }
  ConeGenerators g = double_description(d + 1, eqs, ineqs);

  auto h = std::make_shared<HDescription>();
  std::vector<LatticeVector> eq_normals;
  for (const auto& l : g.lineality) {
    LatticeVector normal(l.begin(), l.end() - 1);
    eq_normals.push_back(normal);
    h->equations.push_back(primitive_constraint(normal, l.back()));
  }
  const std::size_t eq_rank = eq_normals.size();
  for (const auto& r : g.rays) {
    LatticeVector normal(r.begin(), r.end() - 1);
    auto with = eq_normals;
    with.push_back(normal);
    if (rank(with, d) == eq_rank) continue;  // 0 <= 1 modulo the equations
    h->facets.push_back(primitive_constraint(normal, r.back()));
  }
  hdesc_ = std::move(h);
}

const std::vector<Constraint>& Cell::facets() const {
  if (!hdesc_) compute_facets();
  return hdesc_->facets;
}

const std::vector<Constraint>& Cell::equations() const {
  if (!hdesc_) compute_facets();
  return hdesc_->equations;
}

bool Cell::is_cone() const {
  return vertices_.size() == 1 && is_zero(vertices_.front());
}

bool Cell::contains(const RationalVector& p) const {
  if (is_empty()) return false;
  for (const auto& e : equations())
    if (dot(p, e.normal) != e.offset) return false;
  for (const auto& f : facets())
    if (dot(p, f.normal) > f.offset) return false;
  return true;
}

bool Cell::contains_in_relative_interior(const RationalVector& p) const {
  if (!contains(p)) return false;
  for (const auto& f : facets())
    if (dot(p, f.normal) == f.offset) return false;
  return true;
}

bool Cell::contains(const Cell& other) const {
  if (other.is_empty()) return true;
  if (is_empty()) return false;
  for (const auto& v : other.vertices_)
    if (!contains(v)) return false;
  for (const auto& r : other.rays_) {
    for (const auto& e : equations())
      if (dot(r, e.normal) != 0) return false;
    for (const auto& f : facets())
      if (dot(r, f.normal) > 0) return false;
  }
  for (const auto& l : other.lineality_) {
    for (const auto& e : equations())
      if (dot(l, e.normal) != 0) return false;
    for (const auto& f : facets())
      if (dot(l, f.normal) != 0) return false;
  }
  return true;
}

RationalVector Cell::relative_interior_point() const {
  if (is_empty()) throw ValidationError("empty cell has no interior point");
  RationalVector p(ambient_dim_, Rational(0));
  for (const auto& v : vertices_) p = add(p, v);
  p = scale(make_rational(1, Integer(static_cast<unsigned long>(vertices_.size()))), p);
  for (const auto& r : rays_) p = add(p, to_rational(r));
  return p;
}

std::vector<LatticeVector> Cell::direction_generators() const {
  std::vector<LatticeVector> out;
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    out.push_back(primitive_integer_multiple(subtract(vertices_[i], vertices_[0])));
  out.insert(out.end(), rays_.begin(), rays_.end());
  out.insert(out.end(), lineality_.begin(), lineality_.end());
  return out;
}

std::vector<LatticeVector> Cell::lattice_basis() const {
  return saturated_basis(direction_generators(), ambient_dim_);
}

const std::vector<Cell>& Cell::facet_cells() const {
  if (facet_cells_) return *facet_cells_;
  auto cells = std::make_shared<std::vector<Cell>>();
  for (const auto& f : facets()) {
    std::vector<RationalVector> vs;
    std::vector<LatticeVector> rs;
    for (const auto& v : vertices_)
      if (dot(v, f.normal) == f.offset) vs.push_back(v);
    for (const auto& r : rays_)
      if (dot(r, f.normal) == 0) rs.push_back(r);
    cells->push_back(from_minimal_generators(ambient_dim_, vs, rs, lineality_));
  }
  facet_cells_ = cells;
  return *facet_cells_;
}

std::vector<Cell> Cell::faces(int face_dim) const {
  if (face_dim > dim_ || face_dim < 0) return {};
  if (face_dim == dim_) return {*this};
  std::vector<Cell> out;
  for (const auto& f : facet_cells()) {
    auto sub = f.faces(face_dim);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cell Cell::smallest_face_containing(const RationalVector& p) const {
  std::vector<const Constraint*> tight;
  for (const auto& f : facets())
    if (dot(p, f.normal) == f.offset) tight.push_back(&f);
  if (tight.empty()) return *this;
  std::vector<RationalVector> vs;
  std::vector<LatticeVector> rs;
  for (const auto& v : vertices_) {
    bool ok = std::all_of(tight.begin(), tight.end(),
                          [&](const Constraint* f) { return dot(v, f->normal) == f->offset; });
    if (ok) vs.push_back(v);
  }
  for (const auto& r : rays_) {
    bool ok = std::all_of(tight.begin(), tight.end(),
                          [&](const Constraint* f) { return dot(r, f->normal) == 0; });
    if (ok) rs.push_back(r);
  }
  return from_minimal_generators(ambient_dim_, vs, rs, lineality_);
}

bool Cell::operator==(const Cell& other) const {
  return ambient_dim_ == other.ambient_dim_ && dim_ == other.dim_ && vertices_ == other.vertices_ &&
         rays_ == other.rays_ && lineality_ == other.lineality_;
}

bool operator<(const Cell& a, const Cell& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.vertices() != b.vertices()) return a.vertices() < b.vertices();
  if (a.rays() != b.rays()) return a.rays() < b.rays();
  return a.lineality() < b.lineality();
}

Cell cone_from_generators(std::size_t ambient_dim, const std::vector<LatticeVector>& generators) {
  std::vector<LatticeVector> nonzero;
  for (const auto& g : generators)
    if (!is_zero(g)) nonzero.push_back(g);
  return Cell::from_generators(ambient_dim, {RationalVector(ambient_dim, Rational(0))}, nonzero);
}

namespace {

// Signs of normal · x - offset over a: {some negative, some positive}.
std::pair<bool, bool> side_signs(const Cell& a, const Constraint& h) {
  bool below = false, above = false;
  for (const auto& v : a.vertices()) {
    int c = cmp(dot(v, h.normal), h.offset);
    below |= c < 0;
    above |= c > 0;
  }
  for (const auto& r : a.rays()) {
    int c = sgn(dot(r, h.normal));
    below |= c < 0;
    above |= c > 0;
  }
  for (const auto& l : a.lineality())
    if (sgn(dot(l, h.normal)) != 0) below = above = true;
  return {below, above};
}

}  // namespace

bool may_fill(const Cell& a, const Cell& b) {
  if (a.is_empty() || b.is_empty()) return false;
  for (const auto& h : b.equations()) {
    auto [below, above] = side_signs(a, h);
    if (below || above) return false;
  }
  for (const auto& h : b.facets()) {
    auto [below, above] = side_signs(a, h);
    if (above && !below) return false;
  }
  return true;
}

Cell intersect_cells(const Cell& a, const Cell& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ValidationError("cells live in different spaces");
  if (a.is_empty() || b.is_empty()) return Cell::empty(a.ambient_dim());
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  std::vector<Constraint> ineqs = a.facets();
  ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
  std::vector<Constraint> eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return Cell::from_constraints(a.ambient_dim(), ineqs, eqs);
}

Cell product_cell(const Cell& a, const Cell& b) {
  const std::size_t da = a.ambient_dim();
  const std::size_t db = b.ambient_dim();
  if (a.is_empty() || b.is_empty()) return Cell::empty(da + db);
  std::vector<RationalVector> vs;
  for (const auto& v : a.vertices())
    for (const auto& w : b.vertices()) {
      RationalVector p = v;
      p.insert(p.end(), w.begin(), w.end());
      vs.push_back(std::move(p));
    }
  auto embed = [&](const LatticeVector& v, bool first) {
    LatticeVector out(da + db, Integer(0));
    for (std::size_t i = 0; i < v.size(); ++i) out[first ? i : da + i] = v[i];
    return out;
  };
  std::vector<LatticeVector> rs, ls;
  for (const auto& r : a.rays()) rs.push_back(embed(r, true));
  for (const auto& r : b.rays()) rs.push_back(embed(r, false));
  for (const auto& l : a.lineality()) ls.push_back(embed(l, true));
  for (const auto& l : b.lineality()) ls.push_back(embed(l, false));
  return Cell::from_minimal_generators(da + db, vs, rs, ls);
}

bool is_face(const Cell& face, const Cell& cell) {
  if (face.is_empty()) return true;
  if (!cell.contains(face)) return false;
  return cell.smallest_face_containing(face.relative_interior_point()) == face;
}

Cell tangent_cone(const Cell& cell, const RationalVector& p) {
  if (!cell.contains(p)) throw ValidationError("point does not lie in the cell");
  std::vector<LatticeVector> rays = cell.rays();
  for (const auto& v : cell.vertices()) {
    RationalVector d = subtract(v, p);
    if (!is_zero(d)) rays.push_back(primitive_integer_multiple(d));
  }
  return Cell::from_generators(cell.ambient_dim(), {RationalVector(cell.ambient_dim(), Rational(0))},
                               rays, cell.lineality());
}

LatticeVector primitive_normal(const Cell& sigma, const Cell& tau) {
  if (tau.dim() + 1 != sigma.dim()) throw ValidationError("normal vector needs a facet");
  const auto sigma_basis = sigma.lattice_basis();
  const auto tau_basis = tau.lattice_basis();
  const std::size_t k = sigma_basis.size();
  std::vector<LatticeVector> coords;
  for (const auto& b : tau_basis) {
    auto c = coordinates_in(sigma_basis, to_rational(b));
    if (!c) throw ValidationError("face does not lie in the span of the cell");
    LatticeVector row;
    for (const auto& x : *c) {
      if (x.get_den() != 1) throw VerificationError("face lattice not contained in cell lattice");
      row.push_back(x.get_num());
    }
    coords.push_back(std::move(row));
  }
  LatticeVector w;
  if (coords.empty()) {
    w = LatticeVector{Integer(1)};
  } else {
    auto kernel = integer_kernel(IntMatrix::from_rows(coords, k));
    if (kernel.size() != 1) throw VerificationError("face lattice has wrong rank");
    w = kernel.front();
  }
  auto [g, x] = extended_gcd(w);
  if (g != 1) throw VerificationError("face lattice is not saturated");
  auto direction = coordinates_in(sigma_basis, subtract(sigma.relative_interior_point(),
                                                        tau.relative_interior_point()));
  if (!direction) throw VerificationError("cell direction outside its lattice span");
  Rational side = dot(*direction, w);
  if (side == 0) throw VerificationError("face is not a facet");
  LatticeVector u(sigma.ambient_dim(), Integer(0));
  for (std::size_t i = 0; i < k; ++i) u = add(u, scale(x[i], sigma_basis[i]));
  return side > 0 ? u : negate(u);
}

}  // namespace tropical
