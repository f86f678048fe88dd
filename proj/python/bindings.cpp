#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chfif/attractor.hpp"
#include "chfif/commands.hpp"
#include "chfif/config.hpp"
#include "chfif/dimension.hpp"
#include "chfif/moments.hpp"
#include "chfif/smoothness.hpp"

namespace py = pybind11;
using namespace chfif;

namespace {

// A bundled name or a JSON document.
RunConfig resolve(const std::string& config) {
  if (auto c = bundled_config(config)) return *c;
  return parse_config(config);
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict smoothness_dict(const SmoothnessReport& r) {
  py::dict d;
  d["theta"] = to_string(r.theta);
  d["omega"] = to_string(r.omega);
  d["gamma"] = to_string(r.gamma);
  d["modulus_order"] = to_string(r.order);
  d["delta"] = r.delta;
  d["delta_tag"] = to_string(r.tag);
  d["case"] = std::string(1, r.kase);
  d["subcase"] = r.subcase;
  d["degenerate"] = r.degenerate;
  d["label"] = regime_label(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_chfif, m) {
  m.doc() = "Coalescence hidden-variable fractal interpolation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SamplingError>(m, "SamplingError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  m.def("bundled_names", &bundled_names);
  m.def("config_json", [](const std::string& config) { return serialize_config(resolve(config)); },
        py::arg("config"));

  m.def(
      "validate",
      [](const std::string& config) {
        std::vector<std::string> out;
        for (const auto& v : validate(resolve(config).problem).violations) out.push_back(v.message);
        return out;
      },
      py::arg("config"));

  m.def(
      "sample_exact",
      [](const std::string& config, int depth) {
        const auto model = solve_model(resolve(config).problem);
        auto g = sample_exact(model, depth);
        for (auto& x : g.xs) x = model.to_domain(x);
        return py::make_tuple(to_array(g.xs), to_array(g.f1), to_array(g.f2));
      },
      py::arg("config"), py::arg("depth") = 10);

  m.def(
      "classify",
      [](const std::string& config) {
        const auto model = solve_model(resolve(config).problem);
        const auto ratios = classification_ratios(model);
        auto d = smoothness_dict(classify_regime(model));
        d["omega_value"] = ratios.omega;
        d["gamma_value"] = ratios.gamma;
        d["theta_value"] = ratios.theta;
        d["self_affine"] = is_self_affine_config(model);
        return d;
      },
      py::arg("config"));

  m.def(
      "moments",
      [](const std::string& config, const std::vector<int>& word) {
        const auto model = solve_model(resolve(config).problem);
        return py::make_tuple(moment_a(model, word), moment_b(model, word));
      },
      py::arg("config"), py::arg("word") = std::vector<int>{});

  m.def(
      "dimension",
      [](const std::string& config, int eps_min_exp, int eps_max_exp) {
        const auto model = solve_model(resolve(config).problem);
        const auto r = dimension_report(model, eps_min_exp, eps_max_exp);
        py::dict d;
        d["critical_condition"] = to_string(r.condition);
        d["estimate"] = r.empirical.estimate;
        d["r_squared"] = r.empirical.r_squared;
        d["sample_depth"] = r.sample_depth;
        d["counts"] = r.empirical.counts;
        if (r.bounds) {
          d["lower"] = r.bounds->lower;
          d["upper"] = r.bounds->upper;
        } else {
          d["lower"] = py::none();
          d["upper"] = py::none();
        }
        d["dimension_one"] = r.dimension_one.value;
        return d;
      },
      py::arg("config"), py::arg("eps_min_exp") = 4, py::arg("eps_max_exp") = 12);

  m.def(
      "run_command",
      [](const std::string& name, const std::string& config) {
        const auto r = run_command(name, resolve(config));
        return py::make_tuple(r.output, r.exit_code, r.diagnostics);
      },
      py::arg("name"), py::arg("config"));
}
