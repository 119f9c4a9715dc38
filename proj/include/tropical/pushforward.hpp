// Push-forward of cycles along integer-affine maps.

#pragma once

#include "tropical/functions.hpp"

namespace tropical {

/// Image cycle: cells whose dimension survives are mapped and weighted by
/// the index of the image lattice in the lattice of the image cell.
Cycle pushforward(const Morphism& f, const Cycle& X);

/// Push-forward along x -> (x, x).
Cycle diagonal_cycle(const Cycle& C);

/// Push-forward along x -> (x, f(x)).
Cycle graph(const Morphism& f, const Cycle& X);

/// x -> (x, f(x)).
Morphism graph_map(const Morphism& f);

}  // namespace tropical
