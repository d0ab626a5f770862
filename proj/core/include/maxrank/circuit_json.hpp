#pragma once

#include <optional>
#include <string>
#include <variant>

#include "maxrank/circuit.hpp"

namespace maxrank {

using Circuit = std::variant<Formula, SigmaPiSigma, Abp>;

// Reads a circuit file: {"kind": "formula" | "sps" | "abp", ...}.
//
// formula: {"root": node} with node one of
//   {"op": "+"|"*", "l": node, "r": node}
//   {"var": "y1"}
//   {"const": 3}
//   {"upoly": {"var": "y1", "coeffs": [0, 1, 2]}}   (low degree first)
// sps:     {"gates": [[{"c": 0, "lin": {"y1": 1}}, ...], ...]}
// abp:     {"levels": [[0], [1, 2], [3]],
//           "edges": [{"from": 0, "to": 1, "w": {"c": 0, "lin": {...}}}, ...]}
//
// The optional "field" key names the modulus and wins over default_field;
// one of the two must be present. The optional "vars" key pins the variable
// universe and its order; without it names are interned in encounter order.
Circuit circuit_from_json(const std::string& text,
                          std::optional<Field> default_field = {});

std::string circuit_to_json(const Formula& f);
std::string circuit_to_json(const SigmaPiSigma& c);
std::string circuit_to_json(const Abp& a);
std::string circuit_to_json(const Circuit& c);

const char* circuit_kind(const Circuit& c);
const Field& circuit_field(const Circuit& c);
const UniversePtr& circuit_universe(const Circuit& c);
Polynomial circuit_expand(const Circuit& c, std::uint64_t budget = kDefaultTermBudget);

} // namespace maxrank
