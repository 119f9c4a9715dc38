// JSON interchange format for cycles, complexes, functions, morphisms and
// diagonal representations. Integers and rationals are written as strings.

#pragma once

#include <string>

#include "json.hpp"
#include "tropical/intersect.hpp"

namespace tropical {

using Json = nlohmann::ordered_json;

Json cycle_to_json(const Cycle& X);
Cycle cycle_from_json(const Json& j);

/// Complexes share the cycle layout without weights, plus a "complete" flag.
Json complex_to_json(const Complex& C);
Complex complex_from_json(const Json& j);

/// The carrier is embedded. When reading, "carrier" may instead be a path
/// to a cycle or complex file, resolved relative to base_dir.
Json function_to_json(const PLFunction& f);
PLFunction function_from_json(const Json& j, const std::string& base_dir = ".");

Json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const Json& j);

/// Bundle for rewrite_diagonal(n, k). Factors are symbolic combinations
/// such as "T1+T2-2A" of ray functions on the carrier, which is either the
/// shorthand "fnn:n" or a path to a complex file.
Json representation_to_json(const DiagonalRepresentation& rep, std::size_t n, std::size_t k,
                            const std::string& carrier_ref);
/// Rebuilds the functions from the symbolic factors.
DiagonalRepresentation representation_from_json(const Json& j);

SymbolCombination parse_combination(const std::string& text);

Json zero_cycle_to_json(const Cycle& X);

/// Pretty-printed with a trailing newline; byte-stable for equal input.
std::string dump(const Json& j);

/// Reads and parses a JSON file; errors carry the path and line.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Cycle read_cycle(const std::string& path);
PLFunction read_function(const std::string& path);
Morphism read_morphism(const std::string& path);

}  // namespace tropical
