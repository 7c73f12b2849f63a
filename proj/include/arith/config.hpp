#pragma once

#include "arith/classes.hpp"
#include "arith/lattice.hpp"
#include "arith/polynomial.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace arith {

// Builders for the JSON run-config vocabulary shared by the CLI and tests.
//
//   vector:    ["1", "1/2", "phi"]                      (rational strings)
//   sequence:  {"type":"geometric","C":"1/5","tau":"1"}
//              {"type":"table","values":["1","1/2",...]}
//   map:       {"d":1,"n":2,"l":2,"components":[[term,...],...]}
//              term = [coeff, e_1, ..., e_d], entries as strings or numbers

TargetVector parse_vector(const nlohmann::json& j);
DecreasingSequence parse_sequence(const nlohmann::json& j);
PolynomialMap parse_map(const nlohmann::json& j);

} // namespace arith
