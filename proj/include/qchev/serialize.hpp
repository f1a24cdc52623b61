#pragma once

// JSON interchange formats.

#include <json.hpp>
#include <string>
#include <vector>

#include "qchev/chevalley.hpp"

namespace qchev {

using json = nlohmann::json;

/// A module V named by its Cartan type and the highest weights of its summands.
struct VSpec {
  std::string cartan;
  std::vector<Weight> highest_weights;
};
/// Builds (and memoizes) ⊕ L_λ for the spec.
ModulePtr build_module(const VSpec& spec);
json vspec_to_json(const VSpec& spec);
VSpec vspec_from_json(const json& j);

json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j, int rank);
json vector_to_json(const SVector& v);
SVector vector_from_json(const json& j, std::size_t n);
json matrix_to_json(const SMatrix& m);

struct TorusFile {
  VSpec spec;
  TorusFunction f;
};
json torus_to_json(const TorusFunction& f, const VSpec& spec);
TorusFile torus_from_json(const json& j);

json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j, int rank, std::size_t v0_dim);

json report_to_json(const ConditionReport& r);
json intertwiner_to_json(const Intertwiner& phi);
json module_to_json(const WeightModule& m);

/// Parses text, mapping every JSON failure to ParseError.
json parse_json(const std::string& text);

}  // namespace qchev
