#include "tropical/pushforward.hpp"

namespace tropical {

Cycle pushforward(const Morphism& f, const Cycle& X) {
  if (f.source_dim() != X.ambient_dim()) throw ValidationError("morphism source does not match cycle");
  const std::size_t target = f.target_dim();
  std::vector<WeightedCell> images;
  for (const auto& wc : X.cells()) {
    const Cell& sigma = wc.cell;
    std::vector<RationalVector> vertices;
    for (const auto& v : sigma.vertices()) vertices.push_back(f(v));
    std::vector<LatticeVector> rays, lineality;
    for (const auto& r : sigma.rays())
      if (auto image = f.matrix * r; !is_zero(image)) rays.push_back(image);
    for (const auto& l : sigma.lineality())
      if (auto image = f.matrix * l; !is_zero(image)) lineality.push_back(image);
    Cell image = Cell::from_generators(target, vertices, rays, lineality);
    if (image.dim() != sigma.dim()) continue;
    std::vector<LatticeVector> mapped;
    for (const auto& b : sigma.lattice_basis()) mapped.push_back(f.matrix * b);
    Integer index = lattice_index(mapped, image.lattice_basis());
    images.push_back({image, wc.weight * index});
  }
  return Cycle::assemble(target, X.dim(), std::move(images));
}

Cycle diagonal_cycle(const Cycle& C) { return pushforward(Morphism::diagonal(C.ambient_dim()), C); }

Morphism graph_map(const Morphism& f) {
  const std::size_t m = f.source_dim();
  const std::size_t n = f.target_dim();
  IntMatrix matrix(m + n, m);
  LatticeVector translation(m + n, Integer(0));
  for (std::size_t i = 0; i < m; ++i) matrix(i, i) = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) matrix(m + i, j) = f.matrix(i, j);
    translation[m + i] = f.translation[i];
  }
  return Morphism(matrix, translation);
}

Cycle graph(const Morphism& f, const Cycle& X) { return pushforward(graph_map(f), X); }

}  // namespace tropical
