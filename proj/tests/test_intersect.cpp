#include <random>

#include "doctest.h"
#include "samples.hpp"

using namespace tropical;
using namespace testing_support;

TEST_CASE("push-forward examples") {
  Cycle R1 = whole_space(1);
  CHECK(cycles_equal(pushforward(Morphism::identity(3), build_lnk(3, 2)), build_lnk(3, 2)));
  CHECK(cycles_equal(diagonal_cycle(R1), fan_curve(2, {{lv({1, 1}), 1}, {lv({-1, -1}), 1}})));
  Cycle diag = diagonal_cycle(whole_space(2));
  CHECK(cycles_equal(pushforward(Morphism::coordinate_projection(4, 0, 2), diag), whole_space(2)));
  CHECK(cycles_equal(pushforward(Morphism(matrix(1, 1, {2})), R1), R1.scaled(2)));
  CHECK(pushforward(Morphism(matrix(1, 2, {1, 1})), fan_curve(2, {{lv({1, -1}), 1}, {lv({-1, 1}), 1}})).empty());

  Cycle plane_diag = diagonal_cycle(build_lnk(3, 2));
  CHECK(plane_diag.dim() == 2);
  std::vector<LatticeVector> rays;
  for (const auto& wc : plane_diag.cells()) {
    CHECK(wc.weight == 1);
    rays.insert(rays.end(), wc.cell.rays().begin(), wc.cell.rays().end());
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  std::vector<LatticeVector> expected;
  for (std::size_t i = 0; i <= 3; ++i) {
    LatticeVector e = minus_e(3, i), ee = e;
    ee.insert(ee.end(), e.begin(), e.end());
    expected.push_back(ee);
  }
  std::sort(expected.begin(), expected.end());
  CHECK(rays == expected);

  Cycle p = point_cycle(rv({1, -2}), 4);
  CHECK(degree(diagonal_cycle(p)) == 4);
  CHECK(cycles_equal(graph(Morphism::identity(3), build_lnk(3, 1)), diagonal_cycle(build_lnk(3, 1))));
}

TEST_CASE("graph of a projection") {
  // X = R x L^2_1, p(x, y) = y; the graph is R x diagonal of L^2_1.
  Cycle line = build_lnk(2, 1);
  Cycle X = cross(whole_space(1), line);
  Morphism p(matrix(2, 3, {0, 1, 0, 0, 0, 1}));
  Cycle expected = cross(whole_space(1), diagonal_cycle(line));
  CHECK(graph(p, X).dim() == X.dim());
  CHECK(cycles_equal(graph(p, X), expected));
}

TEST_CASE("closing example on the plane") {
  AmbientContext plane = lnk_context(3, 2);
  Cycle C = curve_c(), D = curve_d();
  CHECK(is_balanced(D).balanced);
  Cycle CD = intersect_cycles(C, D, plane);
  CHECK(CD.dim() == 0);
  CHECK(degree(CD) == -1);
  CHECK(cycles_equal(CD, origin_cycle(3, -1)));
  CHECK(cycles_equal(intersect_cycles(D, C, plane), CD));
}

TEST_CASE("unit law") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      AmbientContext ctx = lnk_context(n, m);
      std::vector<Cycle> samples{ctx.ambient, origin_cycle(n, 2)};
      if (m >= 2) samples.push_back(build_lnk(n, 1));
      if (n == 3 && m == 2) {
        samples.push_back(curve_c());
        samples.push_back(curve_d());
      }
      PLFunction mx = max_poly_function(n, build_lnk(n, n).complex());
      samples.push_back(divisor(mx, ctx.ambient));
      for (const auto& D : samples) {
        if (D.empty()) continue;
        CHECK(cycles_equal(intersect_cycles(ctx.ambient, D, ctx), D));
        CHECK(cycles_equal(intersect_cycles(D, ctx.ambient, ctx), D));
      }
    }
  AmbientContext line = lnk_context(2, 1);
  Cycle weighted_point = point_cycle(rv({-3, 0}), 5);
  CHECK(cycles_equal(intersect_cycles(line.ambient, weighted_point, line), weighted_point));
}

TEST_CASE("negative expected dimension and support checks") {
  AmbientContext plane = lnk_context(3, 2);
  Cycle Z = intersect_cycles(origin_cycle(3), curve_c(), plane);
  CHECK(Z.empty());
  Cycle off = fan_curve(3, {{lv({1, 0, 0}), 1}, {lv({-1, 0, 0}), 1}});
  CHECK_THROWS_AS(intersect_cycles(off, curve_c(), plane), ValidationError);
}

TEST_CASE("algebraic laws on random pools") {
  std::mt19937 rng(2024);
  int instances = 0;

  AmbientContext plane = lnk_context(3, 2);
  auto pool = plane_pool(rng);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto dot = [&](const Cycle& a, const Cycle& b) { return intersect_cycles(a, b, plane); };

  for (int trial = 0; trial < 16; ++trial) {
    const Cycle& a = pool[pick(rng)];
    const Cycle& b = pool[pick(rng)];
    CHECK(cycles_equal(dot(a, b), dot(b, a)));
    ++instances;
  }
  for (int trial = 0; trial < 8; ++trial) {
    const Cycle& a = pool[pick(rng)];
    const Cycle& b = pool[pick(rng)];
    const Cycle& c = pool[pick(rng)];
    Cycle left = dot(dot(a, b), c), right = dot(a, dot(b, c));
    CHECK(cycles_equal(left, right));
    ++instances;
  }
  for (int trial = 0; trial < 8; ++trial) {
    const Cycle& a = pool[pick(rng)];
    const Cycle& e = pool[pick(rng)];
    for (const auto& a2 : pool) {
      if (a2.dim() != a.dim()) continue;
      Cycle sum = a + a2;
      CHECK(cycles_equal(dot(sum, e), dot(a, e) + dot(a2, e)));
      ++instances;
      break;
    }
  }
  Complex fan = plane.ambient.complex();
  for (int trial = 0; trial < 8; ++trial) {
    PLFunction phi = ray_function(fan, minus_e(3, trial % 4));
    const Cycle& a = pool[pick(rng)];
    const Cycle& b = pool[pick(rng)];
    Cycle left = dot(divisor(phi, a), b);
    Cycle right = divisor(phi, dot(a, b));
    CHECK(is_balanced(divisor(phi, a)).balanced);
    CHECK(cycles_equal(left, right));
    ++instances;
  }

  AmbientContext line = lnk_context(2, 1);
  auto lpool = line_pool();
  std::uniform_int_distribution<std::size_t> lpick(0, lpool.size() - 1);
  auto ldot = [&](const Cycle& a, const Cycle& b) { return intersect_cycles(a, b, line); };
  for (int trial = 0; trial < 10; ++trial) {
    const Cycle& a = lpool[lpick(rng)];
    const Cycle& b = lpool[lpick(rng)];
    const Cycle& c = lpool[lpick(rng)];
    CHECK(cycles_equal(ldot(a, b), ldot(b, a)));
    CHECK(cycles_equal(ldot(ldot(a, b), c), ldot(a, ldot(b, c))));
    if (a.dim() == b.dim()) CHECK(cycles_equal(ldot(a + b, c), ldot(a, c) + ldot(b, c)));
    ++instances;
  }
  CHECK(instances >= 50);
}

TEST_CASE("representations give the same products") {
  AmbientContext plane = lnk_context(3, 2);
  AmbientContext permuted = plane;
  for (auto& term : permuted.rep.tuples) std::reverse(term.factors.begin(), term.factors.end());
  AmbientContext shifted = lnk_context(3, 1);
  {
    auto& h = shifted.rep.tuples.front().factors.front();
    RationalVector linear(6, Rational(0));
    linear[0] = 3;
    linear[4] = -1;
    h = add_functions(h, PLFunction::linear(h.carrier(), {linear, Rational(0)}));
  }
  verify_representation(shifted.rep);
  AmbientContext original = lnk_context(3, 1);
  CHECK(cycles_equal(intersect_cycles(curve_c(), curve_d(), plane),
                     intersect_cycles(curve_c(), curve_d(), permuted)));
  Cycle ray_pair = build_lnk(3, 1);
  CHECK(cycles_equal(intersect_cycles(ray_pair, origin_cycle(3), original),
                     intersect_cycles(ray_pair, origin_cycle(3), shifted)));
}

TEST_CASE("product ambients") {
  AmbientContext square = product_context(lnk_context(1, 1), lnk_context(1, 1), true);
  CHECK(cycles_equal(square.ambient, whole_space(2)));
  AmbientContext mixed = product_context(lnk_context(1, 1), lnk_context(2, 1), true);
  CHECK(mixed.ambient.dim() == 2);
  Cycle X = mixed.ambient;
  Cycle fibre = cross(origin_cycle(1), build_lnk(2, 1));
  Cycle slice = cross(whole_space(1), origin_cycle(2));
  CHECK(cycles_equal(intersect_cycles(fibre, slice, mixed), origin_cycle(3)));
  CHECK(cycles_equal(intersect_cycles(X, fibre, mixed), fibre));
  AmbientContext parsed = parse_ambient("product:lnk:1,1;lnk:2,1");
  CHECK(parsed.ambient == mixed.ambient);
  CHECK_THROWS_AS(parse_ambient("lnk:3"), ValidationError);
  CHECK_THROWS_AS(parse_ambient("cube:3,2"), ValidationError);
}

TEST_CASE("pull-backs along projections") {
  // X = R x L^2_1, Y = L^2_1, p(x, y) = y.
  AmbientContext R = lnk_context(1, 1), line = lnk_context(2, 1);
  AmbientContext source = product_context(R, line);
  AmbientContext both = product_context(source, line);
  Cycle X = source.ambient, Y = line.ambient;
  Morphism p(matrix(2, 3, {0, 1, 0, 0, 0, 1}));
  check_maps_into(p, X, Y);

  // f^*Y = X
  CHECK(cycles_equal(pullback_cycle(p, X, Y, both), X));
  // p^*E = R x E
  for (const Cycle& E : {origin_cycle(2, 2), point_cycle(rv({-1, 0}))})
    CHECK(cycles_equal(pullback_cycle(p, X, E, both), cross(whole_space(1), E)));

  // divisors: C = phi · Y  =>  p^*C = p^*phi · X
  PLFunction phi = ray_function(Y.complex(), lv({1, 1}));
  Cycle C = divisor(phi, Y);
  CHECK(cycles_equal(C, origin_cycle(2)));
  PLFunction pulled = pullback_function(p, phi, X.complex());
  CHECK(cycles_equal(pullback_cycle(p, X, C, both), divisor(pulled, X)));

  // projection formula: C · p_*D = p_*(p^*C · D)
  Cycle D = pushforward(Morphism(matrix(3, 2, {1, 0, 1, 0, 0, 1})), Y);
  CHECK(support_within(D, X.complex()));
  for (const Cycle& target : {origin_cycle(2), Y, point_cycle(rv({0, -2}), 3)}) {
    Cycle left = intersect_cycles(target, pushforward(p, D), line);
    Cycle right = pushforward(p, intersect_cycles(pullback_cycle(p, X, target, both), D, source));
    CHECK(cycles_equal(left, right));
  }
}

TEST_CASE("pull-backs: identity, composition and products") {
  AmbientContext line = lnk_context(2, 1);
  AmbientContext line_square = product_context(line, line);
  Cycle Y = line.ambient;
  for (const Cycle& C : {Y, origin_cycle(2, 2), point_cycle(rv({2, 2}))})
    CHECK(cycles_equal(pullback_cycle(Morphism::identity(2), Y, C, line_square), C));

  // f: R^2 -> R^2 and g: R^2 -> R^2 linear; (g∘f)^* = f^* g^*.
  AmbientContext plane = lnk_context(2, 2);
  AmbientContext plane_square = product_context(plane, plane);
  Cycle P = plane.ambient;
  Morphism f(matrix(2, 2, {2, 0, 1, 1}));
  Morphism g(matrix(2, 2, {1, 1, 0, 1}));
  Cycle L = build_lnk(2, 1);
  Cycle flipped = fan_curve(2, {{lv({1, 0}), 1}, {lv({0, 1}), 1}, {lv({-1, -1}), 1}});
  CHECK(cycles_equal(pullback_cycle(g.after(f), P, L, plane_square),
                     pullback_cycle(f, P, pullback_cycle(g, P, L, plane_square), plane_square)));

  // f^*(C · C') = f^*C · f^*C'
  // Displacing by (1,2): the pairs ((-1,0),(-1,-1)) and ((1,1),(1,0)) meet,
  // each with determinant 1.
  Cycle meet = intersect_cycles(L, flipped, plane);
  CHECK(degree(meet) == 2);
  Cycle left = pullback_cycle(f, P, meet, plane_square);
  Cycle right = intersect_cycles(pullback_cycle(f, P, L, plane_square),
                                 pullback_cycle(f, P, flipped, plane_square), plane);
  CHECK(cycles_equal(left, right));
  CHECK(degree(left) == 4);

  // f^*Y = X for a map into the plane
  CHECK(cycles_equal(pullback_cycle(f, P, P, plane_square), P));
}

TEST_CASE("pull-back along the inclusion of a star") {
  const RationalVector p = rv({-1, 0, 0});
  AmbientContext small = star_context(3, 1, p);
  AmbientContext big = star_context(3, 2, p);
  AmbientContext both = product_context(small, big);
  Cycle C = small.ambient;
  CHECK(C.dim() == 1);
  Morphism inclusion = Morphism::identity(3);
  check_maps_into(inclusion, C, big.ambient);
  Cycle E = fan_curve(3, {{lv({0, 1, 1}), 1}, {lv({0, -1, 0}), 1}, {lv({0, 0, -1}), 1}});
  CHECK(support_within(E, big.ambient.complex()));
  Cycle pulled = pullback_cycle(inclusion, C, E, both);
  CHECK(cycles_equal(pulled, intersect_cycles(C, E, big)));
  CHECK(cycles_equal(pullback_cycle(inclusion, C, big.ambient, both), C));
  CHECK_THROWS_AS(check_maps_into(inclusion, big.ambient, C), ValidationError);
}
