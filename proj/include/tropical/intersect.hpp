// Intersection products of subcycles of linear spaces, their products and
// stars, and pull-backs of cycles along morphisms.

#pragma once

#include "tropical/linspace.hpp"
#include "tropical/pushforward.hpp"

namespace tropical {

/// An ambient cycle together with a representation of its diagonal.
struct AmbientContext {
  Cycle ambient;
  DiagonalRepresentation rep;

  std::size_t ambient_dim() const { return ambient.ambient_dim(); }
  int dim() const { return ambient.dim(); }
};

/// The linear space build_lnk(n, m). Cached; verified once.
AmbientContext lnk_context(std::size_t n, std::size_t m);

/// The star of build_lnk(n, m) at p.
AmbientContext star_context(std::size_t n, std::size_t m, const RationalVector& p);

/// The product of two ambients. The representation combines the factor
/// representations pulled back along the coordinate projections; it is
/// checked against the diagonal only when verify is set.
AmbientContext product_context(const AmbientContext& a, const AmbientContext& b, bool verify = false);

/// Parses "lnk:n,m", "star:n,m:x1,...,xn" and "product:A;B;..." of those.
AmbientContext parse_ambient(const std::string& spec, bool verify = false);

/// D1 · D2: first-factor push-forward of the representation applied to
/// D1 × D2. Empty of dimension dim D1 + dim D2 - dim ambient when that is
/// negative.
Cycle intersect_cycles(const Cycle& D1, const Cycle& D2, const AmbientContext& ctx);

/// f^*C = π_*(Γ_f · (X × C)), with ctx the ambient of X × Y.
Cycle pullback_cycle(const Morphism& f, const Cycle& X, const Cycle& C, const AmbientContext& ctx);

/// Throws ValidationError unless f maps |X| into |Y|.
void check_maps_into(const Morphism& f, const Cycle& X, const Cycle& Y);

}  // namespace tropical
