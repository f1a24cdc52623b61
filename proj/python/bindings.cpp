#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qchev/serialize.hpp"
#include "qchev/suites.hpp"

namespace py = pybind11;
using namespace qchev;

namespace {

VSpec spec_of(const std::string& type, const std::vector<std::vector<int>>& v) {
  VSpec s{type, {}};
  for (const auto& w : v) s.highest_weights.emplace_back(w);
  return s;
}

std::string scalar_str(const Scalar& x) { return x.to_string(); }

}  // namespace

PYBIND11_MODULE(_qchev, m) {
  m.doc() = "Exact trace functions of quantum group intertwiners";

  auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<NoIntertwiner>(m, "NoIntertwiner", base.ptr());
  py::register_exception<TheoremViolation>(m, "TheoremViolation", base.ptr());

  m.def("quantum_integer", [](long n, long d) { return scalar_str(quantum_integer(n, d)); }, py::arg("n"),
        py::arg("d") = 1);
  m.def("canonical_scalar", [](const std::string& s) { return scalar_str(Scalar::parse(s)); });
  m.def("classical_value", [](const std::string& s) { return evaluate_at_one(Scalar::parse(s)).get_str(); },
        "Value of a scalar at q = 1, as a rational string.");

  m.def("cartan_matrix", [](const std::string& type) { return CartanDatum::from_name(type).matrix(); });
  m.def("weyl_group_order", [](const std::string& type) { return weyl_group(CartanDatum::from_name(type)).size(); });
  m.def("module_dimension", [](const std::string& type, const std::vector<std::vector<int>>& v) {
    return build_module(spec_of(type, v))->dim();
  });
  m.def("hom_dimension", [](const std::string& type, const std::vector<int>& mu, const std::vector<std::vector<int>>& v) {
    return hom_dimension(Weight(mu), build_module(spec_of(type, v)));
  });

  m.def(
      "generate_traces",
      [](const std::string& type, const std::vector<std::vector<int>>& v, const std::vector<int>& mu) {
        const VSpec spec = spec_of(type, v);
        TraceFactory tf(build_module(spec));
        std::vector<std::string> out;
        for (const auto& t : generate_traces(tf, Weight(mu))) {
          json j = torus_to_json(t.f, spec);
          j["mu"] = weight_to_json(t.mu);
          j["expectation"] = vector_to_json(t.v);
          out.push_back(j.dump());
        }
        return out;
      },
      "Trace functions at mu as JSON strings, one per canonical admissible expectation value.");
  m.def("check", [](const std::string& text) {
    return report_to_json(check_conditions(torus_from_json(parse_json(text)).f)).dump();
  });
  m.def("decompose", [](const std::string& text) {
    return decomposition_to_json(decompose(torus_from_json(parse_json(text)).f)).dump();
  });

  m.def("a_operator_rank1_formula", [](long m_, long l) { return scalar_str(a_operator_rank1_formula(m_, l)); });
  m.def("a_operator_rank1_direct", [](int m_, int l, int depth) { return scalar_str(a_operator_rank1_direct(m_, l, depth)); });

  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed, int trials) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.trials = trials;
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, opt);
        }
        py::list cases;
        for (const auto& c : r.cases)
          cases.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.pass, py::arg("skipped") = c.skipped,
                                py::arg("detail") = c.detail));
        return py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("passed") = r.pass(),
                        py::arg("cases") = cases);
      },
      py::arg("id"), py::arg("seed") = 0, py::arg("trials") = 100);
}
