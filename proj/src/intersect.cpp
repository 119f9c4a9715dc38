#include "tropical/intersect.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace tropical {

namespace {

std::mutex context_mutex;

// (x1, x2, y1, y2) -> (x_part, y_part) for the factor occupying
// coordinates [begin, begin + size) of R^total.
Morphism factor_projection(std::size_t total, std::size_t begin, std::size_t size) {
  IntMatrix m(2 * size, 2 * total);
  for (std::size_t i = 0; i < size; ++i) {
    m(i, begin + i) = 1;
    m(size + i, total + begin + i) = 1;
  }
  return Morphism(m);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::size_t parse_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("malformed ambient: expected a nonnegative integer, got '" + s + "'");
  return std::stoul(s);
}

AmbientContext parse_factor(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "lnk") {
    const auto nk = split(parts[1], ',');
    if (nk.size() != 2) throw ValidationError("malformed ambient '" + spec + "'");
    return lnk_context(parse_size(nk[0]), parse_size(nk[1]));
  }
  if (parts.size() == 3 && parts[0] == "star") {
    const auto nk = split(parts[1], ',');
    if (nk.size() != 2) throw ValidationError("malformed ambient '" + spec + "'");
    RationalVector p;
    for (const auto& x : split(parts[2], ',')) p.push_back(parse_rational(x));
    return star_context(parse_size(nk[0]), parse_size(nk[1]), p);
  }
  throw ValidationError("malformed ambient '" + spec + "'");
}

}  // namespace

AmbientContext lnk_context(std::size_t n, std::size_t m) {
  if (m > n) throw ValidationError("k must not exceed n");
  static std::map<std::pair<std::size_t, std::size_t>, AmbientContext> cache;
  {
    std::lock_guard lock(context_mutex);
    if (auto it = cache.find({n, m}); it != cache.end()) return it->second;
  }
  AmbientContext ctx;
  ctx.rep = rewrite_diagonal(n, n - m);
  ctx.ambient = ctx.rep.ambient;
  std::lock_guard lock(context_mutex);
  cache.emplace(std::pair{n, m}, ctx);
  return ctx;
}

AmbientContext star_context(std::size_t n, std::size_t m, const RationalVector& p) {
  if (p.size() != n) throw ValidationError("point has wrong dimension");
  Cycle L = build_lnk(n, m);
  for (const auto& wc : L.cells()) {
    if (!wc.cell.contains(p)) continue;
    AmbientContext ctx;
    ctx.rep = star_diagonal(n, m, wc.cell.smallest_face_containing(p));
    ctx.ambient = ctx.rep.ambient;
    return ctx;
  }
  throw ValidationError("point is not in the linear space");
}

AmbientContext product_context(const AmbientContext& a, const AmbientContext& b, bool verify) {
  const std::size_t na = a.ambient_dim(), nb = b.ambient_dim(), total = na + nb;
  const Morphism to_a = factor_projection(total, 0, na);
  const Morphism to_b = factor_projection(total, na, nb);

  auto pull_all = [](const Morphism& f, const DiagonalRepresentation& rep) {
    std::vector<CartierTerm> out;
    for (const auto& term : rep.tuples) {
      CartierTerm pulled{term.coefficient, {}};
      for (const auto& phi : term.factors) pulled.factors.push_back(pullback_function(f, phi));
      out.push_back(std::move(pulled));
    }
    return out;
  };
  const auto from_a = pull_all(to_a, a.rep);
  const auto from_b = pull_all(to_b, b.rep);

  AmbientContext ctx;
  ctx.ambient = cross(a.ambient, b.ambient);
  ctx.rep.ambient = ctx.ambient;
  for (const auto& ta : from_a)
    for (const auto& tb : from_b) {
      CartierTerm term{ta.coefficient * tb.coefficient, ta.factors};
      term.factors.insert(term.factors.end(), tb.factors.begin(), tb.factors.end());
      ctx.rep.tuples.push_back(std::move(term));
    }
  if (verify) verify_representation(ctx.rep);
  return ctx;
}

AmbientContext parse_ambient(const std::string& spec, bool verify) {
  const std::string prefix = "product:";
  if (spec.rfind(prefix, 0) != 0) {
    AmbientContext ctx = parse_factor(spec);
    if (verify) verify_representation(ctx.rep);
    return ctx;
  }
  const auto factors = split(spec.substr(prefix.size()), ';');
  if (factors.size() < 2) throw ValidationError("a product ambient needs at least two factors");
  AmbientContext ctx = parse_factor(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i)
    ctx = product_context(ctx, parse_factor(factors[i]), verify && i + 1 == factors.size());
  return ctx;
}

Cycle intersect_cycles(const Cycle& D1, const Cycle& D2, const AmbientContext& ctx) {
  const std::size_t n = ctx.ambient_dim();
  if (D1.ambient_dim() != n || D2.ambient_dim() != n)
    throw ValidationError("cycle lives in a different space than the ambient");
  const Complex ambient = ctx.ambient.complex();
  for (const Cycle* D : {&D1, &D2})
    if (!support_within(*D, ambient)) throw ValidationError("cycle is not contained in the ambient");
  const int expected = D1.dim() + D2.dim() - ctx.dim();
  if (D1.empty() || D2.empty() || expected < 0) return Cycle(n, expected);
  Cycle Z = apply_representation(ctx.rep, cross(D1, D2));
  if (Z.empty()) return Cycle(n, expected);
  return pushforward(Morphism::coordinate_projection(2 * n, 0, n), Z);
}

void check_maps_into(const Morphism& f, const Cycle& X, const Cycle& Y) {
  if (f.source_dim() != X.ambient_dim() || f.target_dim() != Y.ambient_dim())
    throw ValidationError("morphism dimensions do not match source and target");
  const Complex target = Y.complex();
  for (const auto& wc : X.cells()) {
    std::vector<RationalVector> vertices;
    for (const auto& v : wc.cell.vertices()) vertices.push_back(f(v));
    std::vector<LatticeVector> rays, lineality;
    for (const auto& r : wc.cell.rays()) rays.push_back(f.matrix * r);
    for (const auto& l : wc.cell.lineality()) lineality.push_back(f.matrix * l);
    Cell image = Cell::from_generators(f.target_dim(), vertices, rays, lineality);
    if (!subdivide_cell(image, target)) throw ValidationError("morphism does not map the source into the target");
  }
}

Cycle pullback_cycle(const Morphism& f, const Cycle& X, const Cycle& C, const AmbientContext& ctx) {
  const std::size_t m = X.ambient_dim();
  if (f.source_dim() != m || f.target_dim() != C.ambient_dim() || ctx.ambient_dim() != m + C.ambient_dim())
    throw ValidationError("morphism dimensions do not match source and target");
  Cycle gamma = graph(f, X);
  Cycle meet = intersect_cycles(gamma, cross(X, C), ctx);
  if (meet.empty()) return Cycle(m, meet.dim());
  return pushforward(Morphism::coordinate_projection(m + C.ambient_dim(), 0, m), meet);
}

}  // namespace tropical
