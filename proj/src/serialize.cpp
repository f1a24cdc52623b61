#include "qchev/serialize.hpp"

#include <map>
#include <mutex>

namespace qchev {

namespace {

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  throw ParseError("scalar must be a string or an integer");
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

ModulePtr build_module(const VSpec& spec) {
  static std::mutex m;
  static std::map<std::pair<std::string, std::vector<Weight>>, ModulePtr> cache;
  const auto key = std::make_pair(spec.cartan, spec.highest_weights);
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const CartanDatum dat = CartanDatum::from_name(spec.cartan);
  if (spec.highest_weights.empty()) throw ConfigError("module needs at least one highest weight");
  for (const Weight& w : spec.highest_weights)
    if (w.rank() != dat.rank()) throw ConfigError("highest weight " + w.to_string() + " has the wrong rank");
  auto V = std::make_shared<const WeightModule>(module_from_highest_weights(dat, spec.highest_weights));
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(key, std::move(V)).first->second;
}

json vspec_to_json(const VSpec& spec) {
  json hw = json::array();
  for (const Weight& w : spec.highest_weights) hw.push_back(weight_to_json(w));
  return {{"highest_weights", hw}};
}

VSpec vspec_from_json(const json& j) {
  VSpec s;
  const json& hw = member(j, "highest_weights");
  if (!hw.is_array() || hw.empty()) throw ParseError("highest_weights must be a nonempty array");
  for (const json& w : hw) s.highest_weights.push_back(weight_from_json(w, -1));
  return s;
}

json weight_to_json(const Weight& w) { return w.c; }

Weight weight_from_json(const json& j, int rank) {
  if (!j.is_array()) throw ParseError("weight must be an array of integers");
  Weight w;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw ParseError("weight must be an array of integers");
    w.c.push_back(x.get<int>());
  }
  if (rank >= 0 && w.rank() != rank) throw ParseError("weight " + w.to_string() + " has the wrong rank");
  return w;
}

json vector_to_json(const SVector& v) {
  json a = json::array();
  for (const Scalar& x : v) a.push_back(x.to_string());
  return a;
}

SVector vector_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("expected " + std::to_string(n) + " scalars");
  SVector v;
  for (const json& x : j) v.push_back(scalar_from_json(x));
  return v;
}

json matrix_to_json(const SMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
  return rows;
}

json torus_to_json(const TorusFunction& f, const VSpec& spec) {
  json terms = json::array();
  for (const auto& [w, v] : f.terms()) terms.push_back({{"weight", weight_to_json(w)}, {"coeffs", vector_to_json(v)}});
  return {{"cartan", spec.cartan}, {"module_V", vspec_to_json(spec)}, {"terms", terms}};
}

TorusFile torus_from_json(const json& j) {
  const json& c = member(j, "cartan");
  if (!c.is_string()) throw ParseError("cartan must be a string");
  VSpec spec = vspec_from_json(member(j, "module_V"));
  spec.cartan = c.get<std::string>();
  ModulePtr V;
  try {
    V = build_module(spec);
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
  TorusFile out{spec, TorusFunction(V)};
  const json& terms = member(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be an array");
  for (const json& t : terms)
    out.f.add_term(weight_from_json(member(t, "weight"), V->datum().rank()), vector_from_json(member(t, "coeffs"), V->dim()));
  return out;
}

json decomposition_to_json(const Decomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back({{"mu", weight_to_json(t.mu)}, {"v", vector_to_json(t.v)}});
  return {{"terms", terms}};
}

Decomposition decomposition_from_json(const json& j, int rank, std::size_t v0_dim) {
  Decomposition d;
  const json& terms = member(j, "terms");
  if (!terms.is_array()) throw ParseError("terms must be an array");
  for (const json& t : terms) d.terms.push_back({weight_from_json(member(t, "mu"), rank), vector_from_json(member(t, "v"), v0_dim)});
  return d;
}

json report_to_json(const ConditionReport& r) {
  json c1 = {{"pass", r.cond1.pass}, {"offending_weights", json::array()}};
  for (const Weight& w : r.cond1.offending) c1["offending_weights"].push_back(weight_to_json(w));
  json c2 = json::array();
  for (const auto& e : r.cond2) {
    json x = {{"reflection", e.i + 1}, {"pass", e.pass}};
    if (e.witness) x["witness"] = {{"weight", weight_to_json(*e.witness)}, {"residual", vector_to_json(e.residual)}};
    c2.push_back(x);
  }
  json c3 = json::array();
  for (const auto& e : r.cond3) {
    json x = {{"i", e.i + 1}, {"n", e.n}, {"pass", e.pass}};
    if (e.witness)
      x["witness"] = {{"factor", e.witness->factor},
                      {"coset_rep", weight_to_json(e.witness->coset_rep)},
                      {"weight", weight_to_json(e.witness->at)},
                      {"remainder", vector_to_json(e.witness->remainder)}};
    c3.push_back(x);
  }
  return {{"pass", r.all_pass()},
          {"cond1_zero_weight", c1},
          {"cond2_dynamical_invariance", {{"pass", r.cond2_pass()}, {"reflections", c2}}},
          {"cond3_divisibility", {{"pass", r.cond3_pass()}, {"checks", c3}}}};
}

json intertwiner_to_json(const Intertwiner& phi) {
  const TensorContext& c = *phi.ctx;
  json blocks = json::array();
  if (c.mu_space >= 0)
    for (const TensorBlock& b : c.layout[static_cast<std::size_t>(c.mu_space)]) {
      const std::size_t n = c.L->space(b.a_space).dim * c.V->space(b.b_space).dim;
      SVector coeffs(phi.image.begin() + static_cast<long>(b.offset), phi.image.begin() + static_cast<long>(b.offset + n));
      blocks.push_back({{"l_weight", weight_to_json(c.L->space(b.a_space).weight)},
                        {"v_weight", weight_to_json(c.V->space(b.b_space).weight)},
                        {"coeffs", vector_to_json(coeffs)}});
    }
  return {{"mu", weight_to_json(c.mu)}, {"expectation", vector_to_json(expectation_value(phi))}, {"image_of_hwv", blocks}};
}

json module_to_json(const WeightModule& m) {
  json spaces = json::array();
  for (const WeightSpace& s : m.spaces()) spaces.push_back({{"weight", weight_to_json(s.weight)}, {"dim", s.dim}});
  json ops = json::array();
  for (int i = 0; i < m.datum().rank(); ++i)
    for (std::size_t k = 0; k < m.spaces().size(); ++k)
      for (const bool raising : {true, false}) {
        const OpBlock& b = raising ? m.e(i, k) : m.f(i, k);
        if (b.target < 0) continue;
        ops.push_back({{"op", raising ? "E" : "F"}, {"i", i + 1}, {"source", k}, {"target", b.target}, {"matrix", matrix_to_json(b.m)}});
      }
  return {{"cartan", m.datum().name()}, {"dim", m.dim()}, {"q_power", m.q_power()}, {"spaces", spaces}, {"operators", ops}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace qchev
