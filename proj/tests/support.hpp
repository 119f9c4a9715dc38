// Small helpers shared by the test binaries.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "tropical/polyhedra.hpp"

namespace testing_support {

using namespace tropical;

inline LatticeVector lv(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RationalVector origin(std::size_t n) { return RationalVector(n, Rational(0)); }

// -e_i for i = 1..n and -e_0 = (1,...,1).
inline LatticeVector minus_e(std::size_t n, std::size_t i) {
  if (i == 0) return LatticeVector(n, Integer(1));
  LatticeVector v(n, Integer(0));
  v[i - 1] = -1;
  return v;
}

inline Cell simplicial_cone(std::size_t n, const std::vector<LatticeVector>& gens) {
  return Cell::from_minimal_generators(n, {origin(n)}, gens);
}

// Direct enumeration of the k-dimensional cones on subsets of {-e_0..-e_n}.
inline Cycle linear_space_by_enumeration(std::size_t n, std::size_t k) {
  std::vector<WeightedCell> cells;
  std::vector<int> pick(n + 1, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i <= n; ++i)
      if (pick[i]) gens.push_back(minus_e(n, i));
    cells.push_back({simplicial_cone(n, gens), 1});
  } while (std::next_permutation(pick.begin(), pick.end()));
  return Cycle::from_cells(n, static_cast<int>(k), std::move(cells));
}

}  // namespace testing_support
