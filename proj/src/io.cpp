#include "tropical/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace tropical {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& message) {
  throw ValidationError((at.empty() ? "/" : at) + ": " + message);
}

const Json& field(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) fail(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(at, "missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& obj, const std::string& key, const std::string& at) {
  const Json& value = field(obj, key, at);
  if (!value.is_array()) fail(at + "/" + key, "expected an array");
  return value;
}

void expect_type(const Json& j, const std::string& type) {
  const Json& t = field(j, "type", "");
  if (!t.is_string() || t.get<std::string>() != type) fail("/type", "expected \"" + type + "\"");
}

std::size_t size_value(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned()) fail(at, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Rational rational_value(const Json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) fail(at, "expected a number as a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    fail(at, "malformed number '" + j.get<std::string>() + "'");
  }
}

Integer integer_value(const Json& j, const std::string& at) {
  Rational q = rational_value(j, at);
  if (q.get_den() != 1) fail(at, "expected an integer");
  return q.get_num();
}

RationalVector rational_vector(const Json& j, std::size_t dim, const std::string& at) {
  if (!j.is_array() || j.size() != dim) fail(at, "expected a vector of length " + std::to_string(dim));
  RationalVector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(rational_value(j[i], at + "/" + std::to_string(i)));
  return v;
}

LatticeVector lattice_vector(const Json& j, std::size_t dim, const std::string& at) {
  if (!j.is_array() || j.size() != dim) fail(at, "expected a vector of length " + std::to_string(dim));
  LatticeVector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(integer_value(j[i], at + "/" + std::to_string(i)));
  return v;
}

Json to_json(const Integer& x) { return to_string(x); }
Json to_json(const Rational& x) { return to_string(x); }

template <class Vector>
Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class Vector>
std::size_t index_of(const std::vector<Vector>& sorted, const Vector& v) {
  return std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
}

template <class Vector>
void sort_unique(std::vector<Vector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Shared layout of cycles and complexes.
Json cells_json(std::size_t ambient_dim, const std::vector<const Cell*>& cells,
                const std::vector<const Integer*>& weights) {
  std::vector<RationalVector> vertices;
  std::vector<LatticeVector> rays, lineality;
  for (const Cell* c : cells) {
    vertices.insert(vertices.end(), c->vertices().begin(), c->vertices().end());
    rays.insert(rays.end(), c->rays().begin(), c->rays().end());
    lineality.insert(lineality.end(), c->lineality().begin(), c->lineality().end());
  }
  sort_unique(vertices);
  sort_unique(rays);
  sort_unique(lineality);

  Json out;
  out["ambient_dim"] = ambient_dim;
  Json jv = Json::array(), jr = Json::array(), jl = Json::array();
  for (const auto& v : vertices) jv.push_back(vector_json(v));
  for (const auto& r : rays) jr.push_back(vector_json(r));
  for (const auto& l : lineality) jl.push_back(vector_json(l));
  out["vertices"] = jv;
  out["rays"] = jr;
  out["lineality"] = jl;
  Json jc = Json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = *cells[i];
    Json cell;
    Json iv = Json::array(), ir = Json::array(), il = Json::array();
    for (const auto& v : c.vertices()) iv.push_back(index_of(vertices, v));
    for (const auto& r : c.rays()) ir.push_back(index_of(rays, r));
    for (const auto& l : c.lineality()) il.push_back(index_of(lineality, l));
    cell["vertices"] = iv;
    cell["rays"] = ir;
    cell["lineality"] = il;
    if (!weights.empty()) cell["weight"] = to_json(*weights[i]);
    jc.push_back(cell);
  }
  out["cells"] = jc;
  return out;
}

struct ParsedCells {
  std::size_t ambient_dim = 0;
  std::vector<Cell> cells;
  std::vector<Integer> weights;
};

ParsedCells parse_cells(const Json& j, bool weighted) {
  ParsedCells out;
  out.ambient_dim = size_value(field(j, "ambient_dim", ""), "/ambient_dim");
  const std::size_t n = out.ambient_dim;
  std::vector<RationalVector> vertices;
  std::vector<LatticeVector> rays, lineality;
  const Json& jv = array_field(j, "vertices", "");
  for (std::size_t i = 0; i < jv.size(); ++i) vertices.push_back(rational_vector(jv[i], n, "/vertices/" + std::to_string(i)));
  const Json& jr = array_field(j, "rays", "");
  for (std::size_t i = 0; i < jr.size(); ++i) rays.push_back(lattice_vector(jr[i], n, "/rays/" + std::to_string(i)));
  if (j.contains("lineality")) {
    const Json& jl = array_field(j, "lineality", "");
    for (std::size_t i = 0; i < jl.size(); ++i) lineality.push_back(lattice_vector(jl[i], n, "/lineality/" + std::to_string(i)));
  }

  auto pick = [](const Json& cell, const std::string& key, const std::string& at, const auto& pool) {
    std::vector<std::decay_t<decltype(pool[0])>> out;
    if (!cell.contains(key)) return out;
    const Json& idx = array_field(cell, key, at);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const std::string where = at + "/" + key + "/" + std::to_string(i);
      std::size_t k = size_value(idx[i], where);
      if (k >= pool.size()) fail(where, "index out of range");
      out.push_back(pool[k]);
    }
    return out;
  };

  const Json& jc = array_field(j, "cells", "");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string at = "/cells/" + std::to_string(i);
    auto cv = pick(jc[i], "vertices", at, vertices);
    auto cr = pick(jc[i], "rays", at, rays);
    auto cl = pick(jc[i], "lineality", at, lineality);
    if (cv.empty()) fail(at, "a cell needs at least one vertex");
    out.cells.push_back(Cell::from_generators(n, cv, cr, cl));
    if (weighted) out.weights.push_back(integer_value(field(jc[i], "weight", at), at + "/weight"));
  }
  return out;
}

// True iff every pair of cells meets in a common face.
bool forms_complex(const std::vector<Cell>& cells) {
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      Cell meet = intersect_cells(cells[a], cells[b]);
      if (meet.is_empty()) continue;
      if (!is_face(meet, cells[a]) || !is_face(meet, cells[b])) return false;
    }
  return true;
}

Complex parse_carrier(const Json& j, const std::string& base_dir, const std::string& at) {
  if (j.is_string()) {
    std::filesystem::path path = j.get<std::string>();
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    const Json target = read_json_file(path.string());
    try {
      const std::string type = target.value("type", "");
      if (type == "cycle") return cycle_from_json(target).complex();
      return complex_from_json(target);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  try {
    const std::string type = j.is_object() ? j.value("type", "") : "";
    if (type == "cycle") return cycle_from_json(j).complex();
    return complex_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(at + e.what());
  }
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <class F>
auto with_file_context(const std::string& path, F&& parse) {
  try {
    return parse();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace

Json cycle_to_json(const Cycle& X) {
  std::vector<const Cell*> cells;
  std::vector<const Integer*> weights;
  for (const auto& wc : X.cells()) {
    cells.push_back(&wc.cell);
    weights.push_back(&wc.weight);
  }
  Json body = cells_json(X.ambient_dim(), cells, weights);
  Json out;
  out["type"] = "cycle";
  out["ambient_dim"] = body["ambient_dim"];
  out["dim"] = X.dim();
  for (const char* key : {"vertices", "rays", "lineality", "cells"}) out[key] = body[key];
  return out;
}

Cycle cycle_from_json(const Json& j) {
  expect_type(j, "cycle");
  ParsedCells parsed = parse_cells(j, true);
  int dim;
  if (j.contains("dim")) {
    const Json& jd = j["dim"];
    if (!jd.is_number_integer()) fail("/dim", "expected an integer");
    dim = jd.get<int>();
  } else if (!parsed.cells.empty()) {
    dim = parsed.cells.front().dim();
  } else {
    fail("", "an empty cycle needs a 'dim' field");
  }
  std::vector<WeightedCell> cells;
  for (std::size_t i = 0; i < parsed.cells.size(); ++i) {
    if (parsed.cells[i].dim() != dim)
      fail("/cells/" + std::to_string(i), "cell has dimension " + std::to_string(parsed.cells[i].dim()) +
                                              ", expected " + std::to_string(dim));
    cells.push_back({parsed.cells[i], parsed.weights[i]});
  }
  if (forms_complex(parsed.cells)) return Cycle::from_cells(parsed.ambient_dim, dim, std::move(cells));
  return Cycle::assemble(parsed.ambient_dim, dim, std::move(cells));
}

Json complex_to_json(const Complex& C) {
  std::vector<const Cell*> cells;
  for (const auto& c : C.maximal_cells()) cells.push_back(&c);
  Json body = cells_json(C.ambient_dim(), cells, {});
  Json out;
  out["type"] = "complex";
  out["ambient_dim"] = body["ambient_dim"];
  out["complete"] = C.is_complete();
  for (const char* key : {"vertices", "rays", "lineality", "cells"}) out[key] = body[key];
  return out;
}

Complex complex_from_json(const Json& j) {
  expect_type(j, "complex");
  ParsedCells parsed = parse_cells(j, false);
  bool complete = false;
  if (j.contains("complete")) {
    if (!j["complete"].is_boolean()) fail("/complete", "expected a boolean");
    complete = j["complete"].get<bool>();
  }
  if (!forms_complex(parsed.cells)) fail("/cells", "cells do not form a polyhedral complex");
  return Complex(parsed.ambient_dim, std::move(parsed.cells), complete);
}

Json function_to_json(const PLFunction& f) {
  Json out;
  out["type"] = "function";
  out["carrier"] = complex_to_json(f.carrier());
  Json pieces = Json::array();
  for (std::size_t i = 0; i < f.forms().size(); ++i) {
    Json piece;
    piece["cell"] = i;
    piece["linear"] = vector_json(f.forms()[i].linear);
    piece["constant"] = to_json(f.forms()[i].constant);
    pieces.push_back(piece);
  }
  out["pieces"] = pieces;
  return out;
}

PLFunction function_from_json(const Json& j, const std::string& base_dir) {
  expect_type(j, "function");
  Complex carrier = parse_carrier(field(j, "carrier", ""), base_dir, "/carrier");
  const std::size_t n = carrier.ambient_dim(), count = carrier.maximal_cells().size();
  std::vector<std::optional<AffineForm>> forms(count);
  const Json& pieces = array_field(j, "pieces", "");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string at = "/pieces/" + std::to_string(i);
    const std::size_t cell = size_value(field(pieces[i], "cell", at), at + "/cell");
    if (cell >= count) fail(at + "/cell", "index out of range");
    if (forms[cell]) fail(at + "/cell", "cell " + std::to_string(cell) + " has two pieces");
    AffineForm form;
    form.linear = rational_vector(field(pieces[i], "linear", at), n, at + "/linear");
    form.constant = pieces[i].contains("constant") ? rational_value(pieces[i]["constant"], at + "/constant") : Rational(0);
    forms[cell] = form;
  }
  std::vector<AffineForm> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (!forms[i]) fail("/pieces", "no piece for cell " + std::to_string(i));
    out.push_back(*forms[i]);
  }
  try {
    return PLFunction(std::move(carrier), std::move(out));
  } catch (const ValidationError& e) {
    fail("/pieces", e.what());
  }
}

Json morphism_to_json(const Morphism& f) {
  Json out;
  out["type"] = "morphism";
  out["source_dim"] = f.source_dim();
  out["target_dim"] = f.target_dim();
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.target_dim(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.source_dim(); ++c) row.push_back(to_json(f.matrix(r, c)));
    rows.push_back(row);
  }
  out["matrix"] = rows;
  out["translation"] = vector_json(f.translation);
  return out;
}

Morphism morphism_from_json(const Json& j) {
  expect_type(j, "morphism");
  const std::size_t m = size_value(field(j, "source_dim", ""), "/source_dim");
  const std::size_t n = size_value(field(j, "target_dim", ""), "/target_dim");
  const Json& rows = array_field(j, "matrix", "");
  if (rows.size() != n) fail("/matrix", "expected " + std::to_string(n) + " rows");
  IntMatrix M(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    LatticeVector row = lattice_vector(rows[r], m, "/matrix/" + std::to_string(r));
    for (std::size_t c = 0; c < m; ++c) M(r, c) = row[c];
  }
  LatticeVector t = j.contains("translation") ? lattice_vector(j["translation"], n, "/translation")
                                              : zero_lattice_vector(n);
  return Morphism(M, t);
}

SymbolCombination parse_combination(const std::string& text) {
  SymbolCombination out;
  if (text == "0") return out;
  std::size_t i = 0;
  auto malformed = [&] { return ValidationError("malformed combination '" + text + "'"); };
  if (text.empty()) throw malformed();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!out.empty()) {
      throw malformed();
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    Integer c = start == i ? Integer(1) : Integer(text.substr(start, i - start));
    start = i;
    if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) throw malformed();
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back({sign * c, RaySymbol::parse(text.substr(start, i - start))});
  }
  return out;
}

Json representation_to_json(const DiagonalRepresentation& rep, std::size_t n, std::size_t k,
                            const std::string& carrier_ref) {
  if (rep.symbolic.size() != rep.tuples.size())
    throw ValidationError("representation has no symbolic form");
  Json out;
  out["type"] = "diagonal_representation";
  out["n"] = n;
  out["k"] = k;
  out["ambient"] = "lnk:" + std::to_string(n) + "," + std::to_string(n - k);
  out["carrier"] = carrier_ref;
  Json tuples = Json::array();
  for (std::size_t i = 0; i < rep.tuples.size(); ++i) {
    Json t;
    t["coefficient"] = to_json(rep.tuples[i].coefficient);
    Json factors = Json::array();
    for (const auto& h : rep.symbolic[i]) factors.push_back(to_string(h));
    t["factors"] = factors;
    tuples.push_back(t);
  }
  out["tuples"] = tuples;
  return out;
}

DiagonalRepresentation representation_from_json(const Json& j) {
  expect_type(j, "diagonal_representation");
  const std::size_t n = size_value(field(j, "n", ""), "/n");
  const std::size_t k = size_value(field(j, "k", ""), "/k");
  if (k > n) fail("/k", "k must not exceed n");
  DiagonalRepresentation rep;
  rep.ambient = build_lnk(n, n - k);
  const Json& tuples = array_field(j, "tuples", "");
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const std::string at = "/tuples/" + std::to_string(i);
    CartierTerm term{integer_value(field(tuples[i], "coefficient", at), at + "/coefficient"), {}};
    std::vector<SymbolCombination> symbolic;
    const Json& factors = array_field(tuples[i], "factors", at);
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const std::string where = at + "/factors/" + std::to_string(f);
      if (!factors[f].is_string()) fail(where, "expected a string");
      SymbolCombination h;
      try {
        h = parse_combination(factors[f].get<std::string>());
        for (const auto& [c, s] : h)
          if (s.index > n) throw ValidationError("symbol " + s.name() + " out of range");
      } catch (const ValidationError& e) {
        fail(where, e.what());
      }
      term.factors.push_back(symbol_function(n, h));
      symbolic.push_back(std::move(h));
    }
    rep.tuples.push_back(std::move(term));
    rep.symbolic.push_back(std::move(symbolic));
  }
  return rep;
}

Json zero_cycle_to_json(const Cycle& X) {
  if (!X.empty() && X.dim() != 0) throw ValidationError("degree is defined for 0-cycles only");
  Json out;
  out["type"] = "zero_cycle";
  out["ambient_dim"] = X.ambient_dim();
  out["degree"] = to_json(degree(X));
  Json points = Json::array();
  if (!X.empty()) {
    const ZeroCycleSummary summary = zero_cycle_summary(X);
    for (std::size_t i = 0; i < summary.points.size(); ++i) {
      Json p;
      p["point"] = vector_json(summary.points[i]);
      p["weight"] = to_json(summary.weights[i]);
      points.push_back(p);
    }
  }
  out["points"] = points;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string message = e.what();
    if (auto pos = message.find("parse error"); pos != std::string::npos) message = message.substr(pos);
    throw ValidationError(path + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + message);
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open file for writing");
  out << text;
}

Cycle read_cycle(const std::string& path) {
  const Json j = read_json_file(path);
  return with_file_context(path, [&] { return cycle_from_json(j); });
}

PLFunction read_function(const std::string& path) {
  const Json j = read_json_file(path);
  const std::string base = std::filesystem::path(path).parent_path().string();
  return with_file_context(path, [&] { return function_from_json(j, base.empty() ? "." : base); });
}

Morphism read_morphism(const std::string& path) {
  const Json j = read_json_file(path);
  return with_file_context(path, [&] { return morphism_from_json(j); });
}

}  // namespace tropical
