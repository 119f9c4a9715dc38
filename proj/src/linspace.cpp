#include "tropical/linspace.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>

#include "tropical/pushforward.hpp"

namespace tropical {

namespace {

LatticeVector minus_e(std::size_t n, std::size_t i) {
  if (i == 0) return LatticeVector(n, Integer(1));
  LatticeVector v(n, Integer(0));
  v.at(i - 1) = -1;
  return v;
}

int display_rank(const RaySymbol& s) {
  switch (s.kind) {
    case RaySymbol::Kind::first: return s.index == 0 ? 2 : 0;
    case RaySymbol::Kind::second: return 1;
    case RaySymbol::Kind::both: return 3;
  }
  return 4;
}

bool display_less(const RaySymbol& a, const RaySymbol& b) {
  int ra = display_rank(a), rb = display_rank(b);
  if (ra != rb) return ra < rb;
  return a.index < b.index;
}

SymbolCombination normalize_combination(const SymbolCombination& h) {
  std::map<RaySymbol, Integer> sums;
  for (const auto& [c, s] : h) sums[s] += c;
  SymbolCombination out;
  for (const auto& [s, c] : sums)
    if (c != 0) out.emplace_back(c, s);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return display_less(x.second, y.second); });
  return out;
}

Cell simplicial(std::size_t n, const std::vector<LatticeVector>& gens) {
  return Cell::from_minimal_generators(n, {RationalVector(n, Rational(0))}, gens);
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t universe, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size > universe) return out;
  std::vector<int> pick(universe, 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(size), pick.end(), 1);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < universe; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::mutex cache_mutex;

// Monomial T_S · B^b · D^d · M^w with M = A + D.
struct Monomial {
  std::uint32_t tops = 0;
  unsigned b = 0;
  unsigned d = 0;
  unsigned w = 0;

  unsigned top_count() const { return static_cast<unsigned>(std::popcount(tops)); }
  auto key() const { return std::tuple(d + w, tops, b, d, w); }
  bool operator<(const Monomial& o) const { return key() < o.key(); }
};

using Polynomial = std::map<Monomial, Integer>;

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

class Rewriter {
public:
  Rewriter(std::size_t n, std::size_t k) : n_(n), k_(k), cones_(fnk_cone_symbols(n, n)) {}

  Polynomial run() {
    Polynomial remainder;
    for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
      Monomial m;
      m.tops = mask;
      m.b = static_cast<unsigned>(n_) - m.top_count();
      add_term(remainder, m, 1);
    }
    Polynomial result;
    while (!remainder.empty()) {
      auto [m, alpha] = *remainder.begin();
      remainder.erase(remainder.begin());
      if (m.b < k_) throw VerificationError("diagonal rewriting got stuck");
      Monomial head = m;
      head.b -= static_cast<unsigned>(k_);
      result[head] += alpha;
      for (unsigned j = 1; j <= k_; ++j) {
        Monomial correction = m;
        correction.b -= j;
        correction.d += j;
        add_term(remainder, correction, -alpha * binomial(static_cast<unsigned>(k_), j));
      }
    }
    std::erase_if(result, [](const auto& entry) { return entry.second == 0; });
    return result;
  }

private:
  void add_term(Polynomial& p, Monomial m, const Integer& c) {
    // A · B vanishes, so with B present D^d may be replaced by (A + D)^d.
    if (m.b > 0 && m.d > 0) {
      m.w += m.d;
      m.d = 0;
    }
    if (vanishes(m)) return;
    auto& slot = p[m];
    slot += c;
    if (slot == 0) p.erase(m);
  }

  bool vanishes(const Monomial& m) const {
    const long level = static_cast<long>(n_) - static_cast<long>(k_) - static_cast<long>(m.w);
    if (level < 0) return true;
    const long degree = m.top_count() + m.b + m.d;
    if (degree > level + static_cast<long>(n_)) return true;
    const long first_rays = m.top_count() + (m.d > 0 ? 1 : 0);
    if (first_rays > level) return true;
    std::vector<RaySymbol> rays;
    for (std::size_t i = 1; i <= n_; ++i)
      if (m.tops & (1u << (i - 1))) rays.push_back(T(i));
    if (m.b > 0) rays.push_back(B());
    if (m.d > 0) rays.push_back(D());
    for (const auto& cone : cones_) {
      bool all = std::all_of(rays.begin(), rays.end(), [&](const RaySymbol& r) {
        return std::find(cone.begin(), cone.end(), r) != cone.end();
      });
      if (all) return false;
    }
    return true;
  }

  std::size_t n_, k_;
  std::vector<std::vector<RaySymbol>> cones_;
};

// Factor identifiers for grouping: 1..n are T_i, n+1 is B, n+2 is A + D.
SymbolCombination factor_combination(std::size_t n, std::size_t id) {
  if (id <= n) return {{Integer(1), T(id)}};
  if (id == n + 1) return {{Integer(1), B()}};
  return {{Integer(1), A()}, {Integer(1), D()}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Symbols

LatticeVector RaySymbol::vector(std::size_t n) const {
  if (index > n) throw ValidationError("ray symbol index out of range");
  LatticeVector e = minus_e(n, index);
  LatticeVector out(2 * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (kind != Kind::second) out[i] = e[i];
    if (kind != Kind::first) out[n + i] = e[i];
  }
  return out;
}

std::string RaySymbol::name() const {
  std::string suffix = index == 0 ? "" : std::to_string(index);
  switch (kind) {
    case Kind::first: return index == 0 ? "A" : "T" + suffix;
    case Kind::second: return "B" + suffix;
    case Kind::both: return "D" + suffix;
  }
  return "?";
}

RaySymbol RaySymbol::parse(const std::string& name) {
  if (name.empty()) throw ValidationError("empty ray symbol");
  std::size_t index = 0;
  if (name.size() > 1) {
    const std::string digits = name.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ValidationError("malformed ray symbol '" + name + "'");
    index = std::stoul(digits);
    if (index == 0) throw ValidationError("malformed ray symbol '" + name + "'");
  }
  switch (name[0]) {
    case 'A':
      if (name.size() != 1) break;
      return A();
    case 'T':
      if (index == 0) break;
      return T(index);
    case 'B': return {Kind::second, index};
    case 'D': return {Kind::both, index};
    default: break;
  }
  throw ValidationError("malformed ray symbol '" + name + "'");
}

RaySymbol T(std::size_t i) { return {RaySymbol::Kind::first, i}; }
RaySymbol A() { return {RaySymbol::Kind::first, 0}; }
RaySymbol B() { return {RaySymbol::Kind::second, 0}; }
RaySymbol Bi(std::size_t i) { return {RaySymbol::Kind::second, i}; }
RaySymbol D(std::size_t i) { return {RaySymbol::Kind::both, i}; }

std::string to_string(const SymbolCombination& h) {
  std::string out;
  for (const auto& [c, s] : h) {
    if (c == 0) continue;
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    Integer a = abs(c);
    if (a != 1) out += a.get_str();
    out += s.name();
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Fans

Cycle build_lnk(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("k must not exceed n");
  std::vector<WeightedCell> cells;
  for (const auto& subset : subsets_of_size(n + 1, k)) {
    std::vector<LatticeVector> gens;
    for (std::size_t i : subset) gens.push_back(minus_e(n, i));
    cells.push_back({simplicial(n, gens), 1});
  }
  return Cycle::from_cells(n, static_cast<int>(k), std::move(cells));
}

std::vector<std::vector<RaySymbol>> fnk_cone_symbols(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("k must not exceed n");
  std::vector<std::set<RaySymbol>> pending;
  for (const auto& I : subsets_of_size(n + 1, k))
    for (const auto& J : subsets_of_size(n + 1, k)) {
      std::set<RaySymbol> cone;
      for (std::size_t i : I) cone.insert({RaySymbol::Kind::first, i});
      for (std::size_t j : J) cone.insert({RaySymbol::Kind::second, j});
      pending.push_back(std::move(cone));
    }
  std::set<std::vector<RaySymbol>> done;
  while (!pending.empty()) {
    std::set<RaySymbol> cone = std::move(pending.back());
    pending.pop_back();
    std::optional<std::size_t> split;
    for (std::size_t i = 0; i <= n && !split; ++i)
      if (cone.count({RaySymbol::Kind::first, i}) && cone.count({RaySymbol::Kind::second, i})) split = i;
    if (!split) {
      done.insert(std::vector<RaySymbol>(cone.begin(), cone.end()));
      continue;
    }
    std::set<RaySymbol> rest = cone;
    rest.erase({RaySymbol::Kind::first, *split});
    rest.erase({RaySymbol::Kind::second, *split});
    rest.insert(D(*split));
    std::set<RaySymbol> left = rest, right = rest;
    left.insert({RaySymbol::Kind::first, *split});
    right.insert({RaySymbol::Kind::second, *split});
    pending.push_back(std::move(left));
    pending.push_back(std::move(right));
  }
  return {done.begin(), done.end()};
}

Complex build_fnk(std::size_t n, std::size_t k) {
  static std::map<std::pair<std::size_t, std::size_t>, Complex> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find({n, k}); it != cache.end()) return it->second;
  }
  std::vector<Cell> cells;
  for (const auto& cone : fnk_cone_symbols(n, k)) {
    std::vector<LatticeVector> gens;
    for (const auto& s : cone) gens.push_back(s.vector(n));
    cells.push_back(simplicial(2 * n, gens));
  }
  Complex fan(2 * n, std::move(cells), k == n);
  std::lock_guard lock(cache_mutex);
  cache.emplace(std::pair{n, k}, fan);
  return fan;
}

Cycle fnn_cycle(std::size_t n) {
  const Complex fan = build_fnk(n, n);
  std::vector<WeightedCell> cells;
  for (const auto& c : fan.maximal_cells()) cells.push_back({c, 1});
  return Cycle::from_cells(2 * n, static_cast<int>(2 * n), std::move(cells));
}

PLFunction symbol_function(std::size_t n, const SymbolCombination& h) {
  static std::map<std::pair<std::size_t, std::string>, PLFunction> cache;
  const SymbolCombination normalized = normalize_combination(h);
  const auto key = std::pair{n, to_string(normalized)};
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<std::pair<Integer, LatticeVector>> terms;
  for (const auto& [c, s] : normalized) terms.emplace_back(c, s.vector(n));
  PLFunction f = ray_combination(build_fnk(n, n), terms);
  std::lock_guard lock(cache_mutex);
  cache.emplace(key, f);
  return f;
}

// ---------------------------------------------------------------------------
// Diagonal representations

std::size_t DiagonalRepresentation::codim() const {
  return tuples.empty() ? 0 : tuples.front().factors.size();
}

Cycle apply_representation(const DiagonalRepresentation& rep, const Cycle& Z) {
  return apply_expression(rep.expression(), Z);
}

void verify_representation(const DiagonalRepresentation& rep) {
  Cycle square = cross(rep.ambient, rep.ambient);
  Cycle produced = apply_representation(rep, square);
  if (!cycles_equal(produced, diagonal_cycle(rep.ambient)))
    throw VerificationError("representation does not reproduce the diagonal");
}

CartierExpression diagonal_divisors_rn(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("k must not exceed n");
  CartierTerm term{1, {}};
  for (std::size_t i = 1; i <= n; ++i) term.factors.push_back(symbol_function(n, {{1, T(i)}, {1, B()}}));
  PLFunction max_first = symbol_function(n, {{1, A()}, {1, D()}});
  for (std::size_t j = 0; j < k; ++j) term.factors.push_back(max_first);
  return {{term}};
}

DiagonalRepresentation rewrite_diagonal(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("k must not exceed n");
  DiagonalRepresentation rep;
  rep.ambient = build_lnk(n, n - k);
  if (k == 0) {
    CartierTerm term{1, {}};
    std::vector<SymbolCombination> symbolic;
    for (std::size_t i = 1; i <= n; ++i) {
      SymbolCombination h{{1, T(i)}, {1, B()}};
      term.factors.push_back(symbol_function(n, h));
      symbolic.push_back(h);
    }
    rep.tuples.push_back(std::move(term));
    rep.symbolic.push_back(std::move(symbolic));
    verify_representation(rep);
    return rep;
  }

  Polynomial h = Rewriter(n, k).run();
  // Group monomials sharing all factors but the first.
  std::map<std::vector<std::size_t>, std::map<std::size_t, Integer>> groups;
  std::map<std::vector<std::size_t>, Integer> constants;
  for (const auto& [m, alpha] : h) {
    std::vector<std::size_t> factors;
    for (std::size_t i = 1; i <= n; ++i)
      if (m.tops & (1u << (i - 1))) factors.push_back(i);
    factors.insert(factors.end(), m.b, n + 1);
    factors.insert(factors.end(), m.w, n + 2);
    if (m.d != 0) throw VerificationError("unexpected bare diagonal power in rewritten form");
    if (factors.empty()) {
      constants[{}] += alpha;
      continue;
    }
    std::vector<std::size_t> tail(factors.begin() + 1, factors.end());
    groups[tail][factors.front()] += alpha;
  }
  for (const auto& [key, gamma] : constants) {
    if (gamma == 0) continue;
    rep.tuples.push_back({gamma, {}});
    rep.symbolic.push_back({});
  }
  for (const auto& [tail, heads] : groups) {
    SymbolCombination head;
    for (const auto& [id, alpha] : heads)
      for (const auto& [c, s] : factor_combination(n, id)) head.emplace_back(alpha * c, s);
    head = normalize_combination(head);
    if (head.empty()) continue;
    std::vector<SymbolCombination> symbolic{head};
    for (std::size_t id : tail) symbolic.push_back(normalize_combination(factor_combination(n, id)));
    CartierTerm term{1, {}};
    for (const auto& f : symbolic) term.factors.push_back(symbol_function(n, f));
    rep.tuples.push_back(std::move(term));
    rep.symbolic.push_back(std::move(symbolic));
  }
  verify_representation(rep);
  return rep;
}

DiagonalRepresentation star_diagonal(std::size_t n, std::size_t k, const Cell& tau) {
  Cycle L = build_lnk(n, k);
  const auto cells = L.complex().all_cells();
  if (std::find(cells.begin(), cells.end(), tau) == cells.end())
    throw ValidationError("cell is not a cell of the linear space");
  const RationalVector x = tau.relative_interior_point();
  RationalVector xx = x;
  xx.insert(xx.end(), x.begin(), x.end());

  DiagonalRepresentation base = rewrite_diagonal(n, n - k);
  DiagonalRepresentation rep;
  rep.ambient = star(L, tau, x);
  rep.symbolic = base.symbolic;
  for (const auto& term : base.tuples) {
    CartierTerm local{term.coefficient, {}};
    for (const auto& f : term.factors) local.factors.push_back(star_function(f, xx));
    rep.tuples.push_back(std::move(local));
  }
  verify_representation(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Relations

bool relations_check(const Cycle& C, const RelationParameters& params) {
  const std::size_t n = C.ambient_dim();
  if (params.k > n) throw ValidationError("malformed relation parameters: k exceeds n");
  if (!C.empty() && !support_within(C, build_lnk(n, n - params.k).complex()))
    throw ValidationError("cycle is not contained in the linear space");
  std::set<RaySymbol> seen;
  for (const auto& v : params.vs) {
    bool allowed = (v.kind == RaySymbol::Kind::first && v.index >= 1 && v.index <= n) ||
                   (v.kind == RaySymbol::Kind::both && v.index == 0);
    if (!allowed || !seen.insert(v).second)
      throw ValidationError("malformed relation parameters: vectors must be distinct T_i or D");
  }
  const long base = static_cast<long>(n) - static_cast<long>(params.k);
  std::vector<PLFunction> factors;
  switch (params.which) {
    case 'a':
      factors = {symbol_function(n, {{1, A()}}), symbol_function(n, {{1, B()}})};
      break;
    case 'b':
      if (params.r == 0 || static_cast<long>(params.vs.size()) != base + static_cast<long>(params.r))
        throw ValidationError("malformed relation parameters for (b)");
      for (const auto& v : params.vs) factors.push_back(symbol_function(n, {{1, v}}));
      break;
    case 'c':
      if (params.r == 0 || params.s == 0 ||
          static_cast<long>(params.vs.size()) !=
              base - static_cast<long>(params.s) + static_cast<long>(params.r))
        throw ValidationError("malformed relation parameters for (c)");
      factors.push_back(symbol_function(n, {{1, B()}}));
      for (std::size_t i = 0; i < params.s; ++i) factors.push_back(symbol_function(n, {{1, D()}}));
      for (const auto& v : params.vs) factors.push_back(symbol_function(n, {{1, v}}));
      break;
    default:
      throw ValidationError("malformed relation parameters: unknown relation");
  }
  if (C.empty()) return true;
  return apply_product(factors, cross(C, whole_space(n))).empty();
}

std::vector<RelationParameters> admissible_relations(const Cycle& C, char which) {
  const std::size_t n = C.ambient_dim();
  std::vector<RaySymbol> pool;
  for (std::size_t i = 1; i <= n; ++i) pool.push_back(T(i));
  pool.push_back(D());
  std::vector<RelationParameters> out;
  for (std::size_t k = 0; k <= n; ++k) {
    if (!C.empty() && !support_within(C, build_lnk(n, n - k).complex())) continue;
    const long base = static_cast<long>(n - k);
    if (which == 'a') {
      out.push_back({'a', k, 0, 0, {}});
      continue;
    }
    for (std::size_t s = (which == 'c' ? 1 : 0); s <= (which == 'c' ? n : 0); ++s)
      for (std::size_t r = 1;; ++r) {
        const long count = base - static_cast<long>(s) + static_cast<long>(r);
        if (count > static_cast<long>(pool.size())) break;
        if (count < 0) continue;
        for (const auto& subset : subsets_of_size(pool.size(), static_cast<std::size_t>(count))) {
          RelationParameters p{which, k, r, s, {}};
          for (std::size_t i : subset) p.vs.push_back(pool[i]);
          out.push_back(std::move(p));
        }
      }
  }
  return out;
}

}  // namespace tropical
