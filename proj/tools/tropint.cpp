// tropint: command-line front end for the tropical intersection library.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "tropical/io.hpp"

using namespace tropical;

namespace {

struct Options {
  bool verify = false;
  bool quiet = false;
  std::string output;
  std::size_t n = 0, k = 0;
  std::string carrier_out;
  std::vector<std::string> inputs;
  std::string ambient, source, target;
};

void report(const Options& opt, const std::string& line) {
  if (!opt.quiet) std::cerr << line << "\n";
}

void emit(const Options& opt, const Json& j) {
  const std::string text = dump(j);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    write_text_file(opt.output, text);
  }
}

Complex read_carrier(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    if (j.is_object() && j.value("type", "") == "complex") return complex_from_json(j);
    return cycle_from_json(j).complex();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

template <class Vector>
Json rows_json(const std::vector<Vector>& rows) {
  Json out = Json::array();
  for (const auto& v : rows) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    out.push_back(row);
  }
  return out;
}

Json cell_json(const Cell& c) {
  Json out;
  out["vertices"] = rows_json(c.vertices());
  out["rays"] = rows_json(c.rays());
  out["lineality"] = rows_json(c.lineality());
  return out;
}

void verify_balanced(const Options& opt, const Cycle& X) {
  if (!opt.verify) return;
  if (!is_balanced(X).balanced) throw VerificationError("result is not balanced");
  report(opt, "verified: result is balanced");
}

void run_lnk(const Options& opt) {
  Cycle L = build_lnk(opt.n, opt.k);
  verify_balanced(opt, L);
  emit(opt, cycle_to_json(L));
}

void run_fnk(const Options& opt) {
  if (opt.k > opt.n) throw ValidationError("k must not exceed n");
  const Complex fan = build_fnk(opt.n, opt.k);
  std::vector<WeightedCell> cells;
  for (const auto& c : fan.maximal_cells()) cells.push_back({c, 1});
  Cycle F = Cycle::from_cells(2 * opt.n, static_cast<int>(2 * opt.k), std::move(cells));
  if (opt.verify) {
    Cycle L = build_lnk(opt.n, opt.k);
    if (!cycles_equal(F, cross(L, L))) throw VerificationError("refinement does not equal the square");
    report(opt, "verified: refinement equals the square of the linear space");
  }
  emit(opt, cycle_to_json(F));
}

void run_check_balanced(const Options& opt) {
  const BalanceReport r = is_balanced(read_cycle(opt.inputs.at(0)));
  Json out;
  out["type"] = "balance_report";
  out["balanced"] = r.balanced;
  if (!r.balanced) {
    if (r.witness) out["witness"] = cell_json(*r.witness);
    Json residual = Json::array();
    for (const auto& x : r.residual) residual.push_back(to_string(x));
    out["residual"] = residual;
  }
  report(opt, r.balanced ? "balanced" : "not balanced");
  emit(opt, out);
}

void run_divisor(const Options& opt) {
  const PLFunction phi = read_function(opt.inputs.at(0));
  const Cycle X = read_cycle(opt.inputs.at(1));
  Cycle Z = divisor(phi, X);
  verify_balanced(opt, Z);
  emit(opt, cycle_to_json(Z));
}

void run_diagonal_form(const Options& opt) {
  if (opt.k > opt.n) throw ValidationError("k must not exceed n");
  Json out;
  out["type"] = "diagonal_form";
  out["n"] = opt.n;
  out["k"] = opt.k;
  out["carrier"] = "fnn:" + std::to_string(opt.n);
  Json factors = Json::array();
  for (std::size_t i = 1; i <= opt.n; ++i) factors.push_back(to_string(SymbolCombination{{1, T(i)}, {1, B()}}));
  for (std::size_t j = 0; j < opt.k; ++j) factors.push_back(to_string(SymbolCombination{{1, A()}, {1, D()}}));
  out["factors"] = factors;
  if (opt.verify) {
    Cycle Z = apply_expression(diagonal_divisors_rn(opt.n, opt.k), fnn_cycle(opt.n));
    if (!cycles_equal(Z, diagonal_cycle(build_lnk(opt.n, opt.n - opt.k))))
      throw VerificationError("product form does not reproduce the diagonal");
    report(opt, "verified: product form reproduces the diagonal");
  }
  emit(opt, out);
}

void run_diagonal_rewrite(const Options& opt) {
  if (opt.k > opt.n) throw ValidationError("k must not exceed n");
  DiagonalRepresentation rep = rewrite_diagonal(opt.n, opt.k);
  if (opt.verify) verify_representation(rep);
  std::string carrier = "fnn:" + std::to_string(opt.n);
  if (!opt.carrier_out.empty()) {
    write_text_file(opt.carrier_out, dump(complex_to_json(build_fnk(opt.n, opt.n))));
    carrier = opt.carrier_out;
    if (!opt.output.empty()) {
      const auto base = std::filesystem::absolute(opt.output).parent_path();
      carrier = std::filesystem::relative(std::filesystem::absolute(opt.carrier_out), base).string();
    }
  }
  Json out = representation_to_json(rep, opt.n, opt.k, carrier);
  out["verified"] = true;
  report(opt, "verified: " + std::to_string(rep.tuples.size()) + " tuple(s) reproduce the diagonal of L^" +
                  std::to_string(opt.n) + "_" + std::to_string(opt.n - opt.k));
  emit(opt, out);
}

void run_intersect(const Options& opt) {
  const AmbientContext ctx = parse_ambient(opt.ambient, opt.verify);
  const Cycle D1 = read_cycle(opt.inputs.at(0));
  const Cycle D2 = read_cycle(opt.inputs.at(1));
  Cycle Z = intersect_cycles(D1, D2, ctx);
  verify_balanced(opt, Z);
  if (Z.dim() == 0) report(opt, "degree " + to_string(degree(Z)));
  emit(opt, cycle_to_json(Z));
}

void run_pushforward(const Options& opt) {
  const Morphism f = read_morphism(opt.inputs.at(0));
  const Cycle X = read_cycle(opt.inputs.at(1));
  if (f.source_dim() != X.ambient_dim()) throw ValidationError("morphism source does not match the cycle");
  Cycle Z = pushforward(f, X);
  verify_balanced(opt, Z);
  emit(opt, cycle_to_json(Z));
}

void run_pullback(const Options& opt) {
  const Morphism f = read_morphism(opt.inputs.at(0));
  const Cycle C = read_cycle(opt.inputs.at(1));
  const AmbientContext source = parse_ambient(opt.source, opt.verify);
  const AmbientContext target = parse_ambient(opt.target, opt.verify);
  check_maps_into(f, source.ambient, target.ambient);
  const AmbientContext ctx = product_context(source, target, opt.verify);
  Cycle Z = pullback_cycle(f, source.ambient, C, ctx);
  verify_balanced(opt, Z);
  emit(opt, cycle_to_json(Z));
}

void run_refine(const Options& opt) {
  const Cycle X = read_cycle(opt.inputs.at(0));
  const Complex carrier = read_carrier(opt.inputs.at(1));
  if (carrier.ambient_dim() != X.ambient_dim()) throw ValidationError("carrier lives in a different space");
  Cycle Z = common_refinement(X, carrier);
  if (opt.verify) {
    if (!cycles_equal(Z, X)) throw VerificationError("refinement changed the cycle");
    report(opt, "verified: refinement equals the input cycle");
  }
  emit(opt, cycle_to_json(Z));
}

void run_degree(const Options& opt) {
  const Json out = zero_cycle_to_json(read_cycle(opt.inputs.at(0)));
  report(opt, "degree " + out["degree"].get<std::string>());
  emit(opt, out);
}

void run_equal(const Options& opt) {
  const Cycle X = read_cycle(opt.inputs.at(0));
  const Cycle Y = read_cycle(opt.inputs.at(1));
  const bool same = X.ambient_dim() == Y.ambient_dim() && cycles_equal(X, Y);
  Json out;
  out["type"] = "equality";
  out["equal"] = same;
  report(opt, same ? "equal" : "not equal");
  emit(opt, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical intersection theory on tropical linear spaces"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options opt;
  app.add_flag("--verify", opt.verify, "Re-verify diagonal representations and check results");
  app.add_flag("--quiet", opt.quiet, "Suppress reports on stderr");
  app.add_option("-o,--output", opt.output, "Output file (default: stdout)");

  std::function<void(const Options&)> action;
  auto command = [&](const std::string& name, const std::string& help, void (*run)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&action, run] { action = run; });
    return sub;
  };
  auto nk = [&](CLI::App* sub) {
    sub->add_option("--n", opt.n, "Ambient dimension")->required();
    sub->add_option("--k", opt.k, "Dimension or codimension parameter")->required();
    return sub;
  };
  auto files = [&](CLI::App* sub, const std::vector<std::string>& names) {
    std::string help;
    for (const auto& name : names) help += (help.empty() ? "" : " ") + name;
    sub->add_option("inputs", opt.inputs, help)
        ->required()
        ->expected(static_cast<int>(names.size()))
        ->check(CLI::ExistingFile);
    return sub;
  };

  nk(command("lnk", "Emit the linear space L^n_k", run_lnk));
  nk(command("fnk", "Emit the refinement F^n_k of L^n_k x L^n_k", run_fnk));
  files(command("check-balanced", "Check the balancing condition", run_check_balanced), {"cycle"});
  files(command("divisor", "Divisor of a function on a cycle", run_divisor), {"function", "cycle"});
  nk(command("diagonal-form", "Product form of the diagonal of L^n_{n-k} in R^n", run_diagonal_form));
  CLI::App* rewrite = nk(command("diagonal-rewrite", "Cartier representation of the diagonal of L^n_{n-k}",
                                 run_diagonal_rewrite));
  rewrite->add_option("--carrier-out", opt.carrier_out, "Also write the carrier fan to this file");
  CLI::App* meet = files(command("intersect", "Intersection product of two subcycles", run_intersect),
                         {"D1", "D2"});
  meet->add_option("--ambient", opt.ambient, "lnk:n,k | star:n,k:x1,...,xn | product:A;B;...")->required();
  files(command("pushforward", "Push-forward along a morphism", run_pushforward), {"map", "cycle"});
  CLI::App* pull = files(command("pullback", "Pull-back along a morphism", run_pullback), {"map", "cycle"});
  pull->add_option("--source", opt.source, "Source ambient")->required();
  pull->add_option("--target", opt.target, "Target ambient")->required();
  files(command("refine", "Refine a cycle along a carrier", run_refine), {"cycle", "carrier"});
  files(command("degree", "Degree of a 0-cycle", run_degree), {"cycle"});
  files(command("equal", "Compare two cycles", run_equal), {"A", "B"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    action(opt);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
