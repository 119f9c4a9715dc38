#include <random>

#include "doctest.h"
#include "samples.hpp"

using namespace tropical;
using namespace testing_support;

TEST_CASE("ray functions take value one on their ray") {
  Complex fan = refined_plane().complex();
  CHECK(fan.maximal_cells().size() == 8);
  PLFunction top = ray_function(fan, lv({1, 1, 1}));
  PLFunction split = ray_function(fan, lv({-1, -1, 0}));
  CHECK(top(rv({0, 1, 1})) == 1);
  CHECK(top(rv({2, 2, 2})) == 2);
  CHECK(top(rv({-1, 0, 0})) == 0);
  // (-2,-3,0) = 2(-1,-1,0) + (0,-1,0)
  CHECK(split(rv({-2, -3, 0})) == 2);
  CHECK(split(rv({0, 1, 1})) == 0);

  PLFunction psi = plane_psi();
  CHECK(psi(rv({-2, -3, 0})) == -2);
  CHECK(psi(rv({2, 2, -1})) == 0);
  CHECK(psi(rv({0, 1, 1})) == 1);
  CHECK(psi(rv({0, 0, 0})) == 0);

  CHECK_THROWS_AS(ray_function(fan, lv({1, 0, 0})), ValidationError);
}

TEST_CASE("max polynomial function values") {
  PLFunction m = max_poly_function(2, build_lnk(2, 2).complex());
  CHECK(m(rv({-5, -7})) == 0);
  CHECK(m(rv({3, 1})) == 3);
  CHECK(m(rv({1, 4})) == 4);
  CHECK_THROWS_AS(max_poly_function(2, whole_space(2).complex()), ValidationError);
}

TEST_CASE("powers of the max function cut out linear spaces") {
  for (std::size_t n = 1; n <= 3; ++n) {
    PLFunction m = max_poly_function(n, build_lnk(n, n).complex());
    Cycle X = whole_space(n);
    for (std::size_t k = n; k-- > 0;) {
      X = divisor(m, X);
      CHECK(is_balanced(X).balanced);
      CHECK(cycles_equal(X, linear_space_by_enumeration(n, k)));
    }
  }
}

TEST_CASE("divisors of globally affine functions vanish") {
  Complex fan = build_lnk(3, 3).complex();
  PLFunction affine = PLFunction::linear(fan, {rv({2, -1, 5}), Rational(3)});
  CHECK(divisor(affine, build_lnk(3, 2)).empty());
  CHECK(divisor(affine, whole_space(3)).empty());
  CHECK(divisor(affine, build_lnk(3, 2)).dim() == 1);
}

TEST_CASE("psi cuts the line through (1,1,0) out of the plane") {
  // By hand: psi has weight 1 at the rays +-(1,1,0) of the refined plane and
  // weight 0 at -e0, ..., -e3.
  Cycle C = divisor(plane_psi(), build_lnk(3, 2));
  CHECK(is_balanced(C).balanced);
  CHECK(cycles_equal(C, line_through(lv({1, 1, 0}))));
}

TEST_CASE("divisors commute and ignore refinement") {
  Complex fan = fnn_cycle(2).complex();
  std::vector<LatticeVector> rays = fan.rays();
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<Integer, LatticeVector>> ta, tb;
    for (int i = 0; i < 3; ++i) {
      ta.emplace_back(coeff(rng), rays[pick(rng)]);
      tb.emplace_back(coeff(rng), rays[pick(rng)]);
    }
    PLFunction f = ray_combination(fan, ta), g = ray_combination(fan, tb);
    Cycle X = whole_space(4);
    Cycle fg = divisor(f, divisor(g, X));
    Cycle gf = divisor(g, divisor(f, X));
    CHECK(is_balanced(fg).balanced);
    CHECK(cycles_equal(fg, gf));
    Cycle refined = fnn_cycle(2);
    CHECK(cycles_equal(divisor(f, refined), divisor(f, X)));
  }
}

TEST_CASE("sums and multiples of functions") {
  Complex fan = refined_plane().complex();
  PLFunction a = ray_function(fan, lv({1, 1, 1}));
  PLFunction b = max_poly_function(3, build_lnk(3, 3).complex());
  PLFunction s = add_functions(a, scale_function(-3, b));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    RationalVector p = rv({coord(rng), coord(rng), coord(rng)});
    if (!fan.support_contains(p)) continue;
    CHECK(s(p) == a(p) - 3 * b(p));
  }
  Cycle X = build_lnk(3, 2);
  CHECK(cycles_equal(divisor(s, X), divisor(a, X) - divisor(b, X).scaled(3)));
}

TEST_CASE("pullback of a function agrees pointwise") {
  PLFunction m = max_poly_function(2, build_lnk(2, 2).complex());
  IntMatrix mat(2, 3);
  mat(0, 0) = 1;
  mat(0, 1) = -2;
  mat(1, 1) = 1;
  mat(1, 2) = 3;
  Morphism f(mat, lv({1, -1}));
  PLFunction pulled = pullback_function(f, m);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coord(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    RationalVector p = rv({coord(rng), coord(rng), coord(rng)});
    CHECK(pulled(p) == m(f(p)));
  }
}

TEST_CASE("star of a function is its local linear part") {
  PLFunction psi = plane_psi();
  RationalVector p = rv({2, 2, 0});
  PLFunction local = star_function(psi, p);
  for (const auto& q : {rv({0, 0, 1}), rv({0, 0, -1}), rv({1, 1, 0}), rv({-1, -1, 0})})
    CHECK(local(q) == psi(add(p, q)) - psi(p));
}

TEST_CASE("vanishing weights on the complete refinement") {
  for (std::size_t n : {2u, 3u}) {
    Complex fan = build_fnk(n, n);
    std::vector<LatticeVector> rays = fan.rays();
    std::mt19937 rng(static_cast<unsigned>(n));
    std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
    for (std::size_t r = 1; r <= 2; ++r) {
      for (int trial = 0; trial < (n == 2 ? 6 : 2); ++trial) {
        std::vector<LatticeVector> chosen;
        std::vector<PLFunction> hs;
        for (std::size_t i = 0; i < r; ++i) {
          chosen.push_back(rays[pick(rng)]);
          hs.push_back(ray_function(fan, chosen.back()));
        }
        Cycle Z = apply_product(hs, whole_space(2 * n));
        CHECK(is_balanced(Z).balanced);
        for (const Cell& tau : fan.cells_of_dim(static_cast<int>(2 * n - r))) {
          bool killed = true;
          for (const Cell& sigma : fan.maximal_cells()) {
            if (!sigma.contains(tau)) continue;
            bool some_zero = false;
            for (const auto& ray : chosen)
              if (std::find(sigma.rays().begin(), sigma.rays().end(), ray) == sigma.rays().end())
                some_zero = true;
            if (!some_zero) killed = false;
          }
          if (killed) CHECK_FALSE(support_contains(Z, tau.relative_interior_point()));
        }
      }
    }
  }
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(build_lnk(3, 2).complex()));
  Cell wide = simplicial_cone(2, {lv({1, 0}), lv({1, 2})});
  CHECK_FALSE(is_unimodular(Complex(2, {wide})));
}
