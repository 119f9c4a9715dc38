#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "tropical/io.hpp"

using namespace testing_support;

namespace {

const std::filesystem::path data_dir = TROPICAL_DATA_DIR;

std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "tropical_test_io";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string error_of(auto&& action) {
  try {
    action();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

void check_cycle_round_trip(const Cycle& X) {
  const std::string text = dump(cycle_to_json(X));
  const Cycle back = cycle_from_json(Json::parse(text));
  CHECK(back == X);
  CHECK(dump(cycle_to_json(back)) == text);
}

void check_function_round_trip(const PLFunction& f) {
  const std::string text = dump(function_to_json(f));
  const PLFunction back = function_from_json(Json::parse(text));
  CHECK(back.carrier().maximal_cells() == f.carrier().maximal_cells());
  CHECK(back.carrier().is_complete() == f.carrier().is_complete());
  CHECK(back.forms() == f.forms());
  CHECK(dump(function_to_json(back)) == text);
}

std::vector<Cycle> cycle_corpus() {
  std::vector<Cycle> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k <= n; ++k) out.push_back(build_lnk(n, k));
  out.push_back(fnn_cycle(2));
  out.push_back(diagonal_cycle(build_lnk(3, 2)));
  out.push_back(whole_space(2));
  out.push_back(origin_cycle(3, -4));
  out.push_back(Cycle(3, 1));
  out.push_back(Cycle(2, -1));
  out.push_back(divisor(max_poly_function(3, build_lnk(3, 3).complex()), build_lnk(3, 2)));
  Cell segment = Cell::from_generators(2, {rv({0, 0}), {Rational(1, 2), Rational(3, 2)}}, {});
  Cell ray = Cell::from_generators(2, {rv({-1, 0})}, {lv({0, 1})});
  Cell band = Cell::from_generators(3, {rv({0, 0, 0}), rv({1, 0, 0})}, {lv({0, 1, 0})}, {lv({0, 0, 1})});
  out.push_back(Cycle::from_cells(2, 1, {{segment, 3}, {ray, -2}}));
  out.push_back(Cycle::from_cells(3, 3, {{band, 7}}));
  return out;
}

}  // namespace

TEST_CASE("cycles round trip through the interchange format") {
  for (const Cycle& X : cycle_corpus()) check_cycle_round_trip(X);
}

TEST_CASE("functions round trip through the interchange format") {
  check_function_round_trip(max_poly_function(2, build_lnk(2, 2).complex()));
  check_function_round_trip(symbol_function(2, {{1, T(1)}, {1, B()}}));
  check_function_round_trip(symbol_function(3, {{1, T(1)}, {1, T(2)}, {1, T(3)}, {1, B()}, {-2, A()}, {-2, D()}}));
  Complex plane = build_lnk(3, 2).complex();
  check_function_round_trip(PLFunction::linear(plane, {{Rational(1, 2), 0, -3}, Rational(5, 3)}));
  check_function_round_trip(ray_function(plane, lv({1, 1, 1})));
}

TEST_CASE("morphisms and representations round trip") {
  IntMatrix m(2, 3);
  m(0, 1) = 1;
  m(1, 0) = -2;
  m(1, 2) = 5;
  Morphism f(m, lv({3, -1}));
  Morphism back = morphism_from_json(Json::parse(dump(morphism_to_json(f))));
  CHECK(back.matrix == f.matrix);
  CHECK(back.translation == f.translation);

  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 2}, {3, 1}}) {
    DiagonalRepresentation rep = rewrite_diagonal(n, k);
    const std::string text = dump(representation_to_json(rep, n, k, "fnn:" + std::to_string(n)));
    DiagonalRepresentation parsed = representation_from_json(Json::parse(text));
    CHECK(parsed.symbolic == rep.symbolic);
    CHECK(parsed.ambient == rep.ambient);
    CHECK_NOTHROW(verify_representation(parsed));
    CHECK(dump(representation_to_json(parsed, n, k, "fnn:" + std::to_string(n))) == text);
  }
}

TEST_CASE("symbolic combinations parse back") {
  for (const std::string s : {"T1+T2+T3+B-2A-2D", "-A", "3B2-D1+12T3", "0"})
    CHECK(to_string(parse_combination(s)) == s);
  for (const std::string s : {"", "T1T2", "+", "2", "T0", "X1", "A+-B"})
    CHECK_THROWS_AS(parse_combination(s), ValidationError);
}

TEST_CASE("data files round trip") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(data_dir)) {
    if (entry.path().extension() != ".json") continue;
    const std::string path = entry.path().string();
    const Json j = read_json_file(path);
    const std::string type = j.at("type").get<std::string>();
    CAPTURE(path);
    if (type == "cycle") {
      Cycle X = read_cycle(path);
      check_cycle_round_trip(X);
      CHECK(dump(cycle_to_json(X)) == dump(j));
    } else if (type == "complex") {
      Complex C = complex_from_json(j);
      CHECK(complex_from_json(Json::parse(dump(complex_to_json(C)))).maximal_cells() == C.maximal_cells());
    } else if (type == "function") {
      check_function_round_trip(read_function(path));
    }
    ++count;
  }
  CHECK(count >= 5);
}

TEST_CASE("overlapping input cells are subdivided") {
  // [0,2] and [1,3] overlap in [1,2], which gets weight 2.
  const Json j = Json::parse(R"({"type": "cycle", "ambient_dim": 1, "dim": 1,
    "vertices": [["0"], ["1"], ["2"], ["3"]], "rays": [],
    "cells": [{"vertices": [0, 2], "weight": "1"}, {"vertices": [1, 3], "weight": "1"}]})");
  auto seg = [](long a, long b) { return Cell::from_generators(1, {rv({a}), rv({b})}, {}); };
  Cycle expected = Cycle::from_cells(1, 1, {{seg(0, 1), 1}, {seg(1, 2), 2}, {seg(2, 3), 1}});
  CHECK(cycle_from_json(j) == expected);
}

TEST_CASE("malformed files report their location") {
  auto broken = scratch_file("broken.json", "{\n  \"type\": \"cycle\",\n  \"ambient_dim\": ,\n}\n");
  CHECK(error_of([&] { read_cycle(broken.string()); }).find("broken.json:3:") != std::string::npos);

  auto wrong = scratch_file("wrong.json", R"({"type": "cycle", "ambient_dim": 2, "dim": 0,
    "vertices": [["0", "0"]], "rays": [], "cells": [{"vertices": [4], "weight": "1"}]})");
  std::string message = error_of([&] { read_cycle(wrong.string()); });
  CHECK(message.find("wrong.json") != std::string::npos);
  CHECK(message.find("/cells/0/vertices/0") != std::string::npos);

  auto missing = Json::parse(R"({"type": "cycle", "ambient_dim": 2, "vertices": [], "rays": []})");
  CHECK(error_of([&] { cycle_from_json(missing); }).find("missing field 'cells'") != std::string::npos);
  auto mixed = Json::parse(R"({"type": "cycle", "ambient_dim": 1, "dim": 1,
    "vertices": [["0"]], "rays": [], "cells": [{"vertices": [0], "weight": "1"}]})");
  CHECK(error_of([&] { cycle_from_json(mixed); }).find("/cells/0") != std::string::npos);
  auto fractional = Json::parse(R"({"type": "cycle", "ambient_dim": 1, "dim": 0,
    "vertices": [["0"]], "rays": [], "cells": [{"vertices": [0], "weight": "1/2"}]})");
  CHECK(error_of([&] { cycle_from_json(fractional); }).find("/cells/0/weight") != std::string::npos);

  auto gap = Json::parse(R"({"type": "function", "carrier": {"type": "complex", "ambient_dim": 1,
    "vertices": [["0"]], "rays": [["1"], ["-1"]], "cells": [{"vertices": [0], "rays": [0]},
    {"vertices": [0], "rays": [1]}]}, "pieces": [{"cell": 0, "linear": ["1"], "constant": "0"}]})");
  CHECK(error_of([&] { function_from_json(gap); }).find("no piece for cell 1") != std::string::npos);
  auto jump = gap;
  jump["pieces"].push_back({{"cell", 1}, {"linear", {"1"}}, {"constant", "1"}});
  CHECK_THROWS_AS(function_from_json(jump), ValidationError);
  CHECK_THROWS_AS(read_cycle("/nonexistent/file.json"), ValidationError);
}
