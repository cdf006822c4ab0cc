// Python bindings for the polarlp core.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polarlp/circle.hpp"
#include "polarlp/generator.hpp"
#include "polarlp/inequalities.hpp"
#include "polarlp/poly.hpp"
#include "polarlp/roots.hpp"
#include "polarlp/runner.hpp"

namespace py = pybind11;
using namespace polarlp;

namespace {

ComplexPoly poly_from(const std::vector<cplx>& coeffs) { return ComplexPoly(coeffs); }

std::vector<cplx> coeff_list(const ComplexPoly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

py::dict params_dict(const CertificateParams& p) {
  py::dict d;
  if (p.alpha) d["alpha"] = *p.alpha;
  if (p.beta) d["beta"] = *p.beta;
  if (p.k) d["k"] = *p.k;
  if (p.mu) d["mu"] = *p.mu;
  if (p.p) d["p"] = *p.p;
  if (p.r) d["r"] = *p.r;
  if (p.s) d["s"] = *p.s;
  return d;
}

// Runs a YAML config in-process; returns (csv text, tally by checker, exit code).
py::tuple run_config_text(const std::string& yaml, bool strict) {
  const RunConfig cfg = parse_config(yaml);
  const InstanceSet set = generate_instances(cfg);
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  Tally tally;
  {
    py::gil_scoped_release release;
    run_checks(set.instances, cfg, [&](const InstanceSpec& inst, std::vector<InequalityCertificate>&& rows) {
      for (const auto& c : rows) {
        write_csv_row(csv, inst, c);
        tally.add(c);
      }
    });
  }
  return py::make_tuple(csv.str(), tally.by_checker, exit_code_for(tally, strict));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polar-derivative polynomial inequalities: certificates, integral means, witnesses";
  m.attr("__version__") = kArtifactVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ComplexPoly>(m, "ComplexPoly")
      .def(py::init(&poly_from), py::arg("coeffs"), "Ascending coefficients a_0..a_n.")
      .def_property_readonly("degree", &ComplexPoly::degree)
      .def_property_readonly("coeffs", &coeff_list)
      .def("__call__", [](const ComplexPoly& p, cplx z) { return evaluate(p, z); })
      .def("__repr__", [](const ComplexPoly& p) { return "ComplexPoly(" + p.to_string() + ")"; })
      .def("__eq__", [](const ComplexPoly& a, const ComplexPoly& b) { return a == b; });

  m.def("derivative", &derivative);
  m.def("polar_derivative", &polar_derivative, py::arg("p"), py::arg("alpha"));
  m.def("conjugate_reciprocal", &conjugate_reciprocal);
  m.def(
      "from_zeros", [](const std::vector<cplx>& zeros, cplx leading) { return from_zeros(zeros, leading); },
      py::arg("zeros"), py::arg("leading") = cplx{1.0});
  m.def("lacunary_gap", &lacunary_gap, py::arg("p"), py::arg("rel_tol") = 1e-12);

  py::class_<RootsResult>(m, "RootsResult")
      .def_readonly("roots", &RootsResult::roots)
      .def_readonly("converged", &RootsResult::converged)
      .def_readonly("iterations", &RootsResult::iterations)
      .def_readonly("max_relative_residual", &RootsResult::max_relative_residual)
      .def_readonly("method", &RootsResult::method);
  m.def("find_roots", &find_roots, py::arg("p"), py::arg("max_iterations") = 500);
  m.def("max_zero_modulus", [](const ComplexPoly& p) {
    const ZeroModulus z = max_zero_modulus(p);
    if (!z.ok) throw std::runtime_error("max_zero_modulus: " + z.failure);
    return z.value;
  });

  py::class_<CircleMeanResult>(m, "CircleMeanResult")
      .def_readonly("raw_integral", &CircleMeanResult::raw_integral)
      .def_readonly("mean", &CircleMeanResult::mean)
      .def_readonly("p", &CircleMeanResult::p)
      .def_readonly("radius", &CircleMeanResult::radius)
      .def_readonly("abs_error_estimate", &CircleMeanResult::abs_error_estimate)
      .def_readonly("mean_error_estimate", &CircleMeanResult::mean_error_estimate)
      .def_readonly("nodes_used", &CircleMeanResult::nodes_used)
      .def_readonly("converged", &CircleMeanResult::converged)
      .def_readonly("indeterminate", &CircleMeanResult::indeterminate);
  py::class_<ExtremumResult>(m, "ExtremumResult")
      .def_readonly("value", &ExtremumResult::value)
      .def_readonly("arg_theta", &ExtremumResult::arg_theta)
      .def_readonly("radius", &ExtremumResult::radius);

  m.def(
      "lp_mean", [](const ComplexPoly& p, double e, double r, double tol) { return lp_mean(p, e, r, tol); },
      py::arg("p"), py::arg("exponent"), py::arg("radius") = 1.0, py::arg("tol") = 1e-10,
      "int_0^{2pi} |P(r e^{i theta})|^p dtheta, no 1/(2pi) factor.");
  m.def("kernel_integral", &kernel_integral, py::arg("k"), py::arg("mu"), py::arg("exponent"),
        py::arg("tol") = 1e-10);
  m.def(
      "ratio_lp_mean",
      [](const ComplexPoly& p, cplx alpha, cplx beta, double k, int mu, double e, double tol) {
        return ratio_lp_mean(p, alpha, beta, k, mu, e, tol);
      },
      py::arg("p"), py::arg("alpha"), py::arg("beta"), py::arg("k"), py::arg("mu"), py::arg("exponent"),
      py::arg("tol") = 1e-10);
  m.def("min_modulus_on_circle", &min_modulus_on_circle, py::arg("p"), py::arg("radius") = 1.0);
  m.def("max_modulus_on_circle", &max_modulus_on_circle, py::arg("p"), py::arg("radius") = 1.0);

  py::class_<InstanceSpec>(m, "InstanceSpec")
      .def_readonly("id", &InstanceSpec::id)
      .def_readonly("zeros", &InstanceSpec::zeros)
      .def_readonly("leading", &InstanceSpec::leading)
      .def_readonly("k", &InstanceSpec::k)
      .def_readonly("mu", &InstanceSpec::mu)
      .def_readonly("poly", &InstanceSpec::poly);
  m.def("make_instance", &make_instance, py::arg("id"), py::arg("zeros"), py::arg("leading"), py::arg("k"),
        py::arg("mu") = 1);

  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("seed", &GeneratorConfig::seed)
      .def_readwrite("n_min", &GeneratorConfig::n_min)
      .def_readwrite("n_max", &GeneratorConfig::n_max)
      .def_readwrite("k_values", &GeneratorConfig::k_values)
      .def_readwrite("interior_margin", &GeneratorConfig::interior_margin)
      .def_readwrite("count", &GeneratorConfig::count);
  m.def("random_in_disk", &random_in_disk);
  m.def("lacunary_family", &lacunary_family, py::arg("n"), py::arg("mu"), py::arg("cfg"));
  m.def("extremal_catalog", [](double k, int n) { return extremal_catalog(k, n).instances; }, py::arg("k"),
        py::arg("n"));

  py::enum_<Verdict>(m, "Verdict")
      .value("holds", Verdict::holds)
      .value("equality", Verdict::equality)
      .value("violated_within_error", Verdict::violated_within_error)
      .value("violated", Verdict::violated)
      .value("indeterminate", Verdict::indeterminate)
      .value("rejected", Verdict::rejected);

  py::class_<InequalityCertificate>(m, "InequalityCertificate")
      .def_property_readonly("checker", [](const InequalityCertificate& c) { return std::string(to_string(c.id)); })
      .def_readonly("lhs", &InequalityCertificate::lhs)
      .def_readonly("rhs", &InequalityCertificate::rhs)
      .def_readonly("slack", &InequalityCertificate::slack)
      .def_readonly("rel_slack", &InequalityCertificate::rel_slack)
      .def_readonly("error_budget", &InequalityCertificate::error_budget)
      .def_readonly("verdict", &InequalityCertificate::verdict)
      .def_readonly("note", &InequalityCertificate::note)
      .def_property_readonly("params", [](const InequalityCertificate& c) { return params_dict(c.params); })
      .def("__repr__", [](const InequalityCertificate& c) {
        std::ostringstream os;
        os << "<" << to_string(c.id) << " " << to_string(c.verdict) << " lhs=" << c.lhs << " rhs=" << c.rhs << ">";
        return os.str();
      });

  py::class_<Subject>(m, "Subject")
      .def(py::init([](const ComplexPoly& p) { return Subject(p); }), py::arg("p"))
      .def(py::init<const InstanceSpec&>(), py::arg("instance"))
      .def_property_readonly("poly", &Subject::poly)
      .def_property_readonly("degree", &Subject::degree)
      .def_property_readonly("gap", &Subject::gap)
      .def_property_readonly("zero_radius", &Subject::zero_radius)
      .def("min_modulus", &Subject::min_modulus, py::arg("k"));

  const CheckOptions defaults;
  m.def("check_bernstein", [defaults](const Subject& s) { return check_bernstein(s, defaults); });
  m.def("check_turan", [defaults](const Subject& s) { return check_turan(s, defaults); });
  m.def("check_malik_max", [defaults](const Subject& s, double k) { return check_malik_max(s, k, defaults); },
        py::arg("s"), py::arg("k"));
  m.def(
      "check_polar_lacunary_min",
      [defaults](const Subject& s, double k, int mu, cplx a) { return check_polar_lacunary_min(s, k, mu, a, defaults); },
      py::arg("s"), py::arg("k"), py::arg("mu"), py::arg("alpha"));
  m.def(
      "check_ratio_mean",
      [defaults](const Subject& s, double k, cplx a, cplx b, double p) {
        return check_ratio_mean(s, k, a, b, p, defaults);
      },
      py::arg("s"), py::arg("k"), py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def(
      "check_lacunary_shifted_mean",
      [defaults](const Subject& s, double k, int mu, cplx a, cplx b, double p) {
        return check_lacunary_shifted_mean(s, k, mu, a, b, p, defaults);
      },
      py::arg("s"), py::arg("k"), py::arg("mu"), py::arg("alpha"), py::arg("beta"), py::arg("p"));
  m.def(
      "check_holder_split",
      [defaults](const Subject& s, double k, int mu, cplx a, cplx b, double p, double r, double s_exp) {
        return check_holder_split(s, k, mu, a, b, p, r, s_exp, defaults);
      },
      py::arg("s"), py::arg("k"), py::arg("mu"), py::arg("alpha"), py::arg("beta"), py::arg("p"), py::arg("r"),
      py::arg("s_exp"));

  py::class_<WitnessTrace::MeanComparison>(m, "MeanComparison")
      .def_readonly("p", &WitnessTrace::MeanComparison::p)
      .def_readonly("witness", &WitnessTrace::MeanComparison::witness)
      .def_readonly("kernel", &WitnessTrace::MeanComparison::kernel)
      .def_readonly("holds", &WitnessTrace::MeanComparison::holds);
  py::class_<WitnessTrace>(m, "WitnessTrace")
      .def_readonly("max_abs_w", &WitnessTrace::max_abs_w)
      .def_readonly("w_at_zero", &WitnessTrace::w_at_zero)
      .def_readonly("partial", &WitnessTrace::partial)
      .def_readonly("mean_comparisons", &WitnessTrace::mean_comparisons)
      .def_readonly("identity_max_rel_dev", &WitnessTrace::identity_max_rel_dev);
  m.def("subordination_witness", &subordination_witness, py::arg("s"), py::arg("k"), py::arg("mu"),
        py::arg("beta"), py::arg("grid_size") = 0, py::arg("mean_exponents") = std::vector<double>{0.5, 1.0, 2.0, 4.0},
        py::arg("quad_tol") = 1e-10);

  m.def(
      "check_instance",
      [](const InstanceSpec& inst, const std::string& yaml) { return check_instance(inst, parse_config(yaml)); },
      py::arg("instance"), py::arg("config_yaml") = std::string("{}"),
      "Certificates for one instance under the axes and checkers of a YAML config.");
  m.def("run_config", &run_config_text, py::arg("config_yaml"), py::arg("strict") = false,
        "Run a YAML config; returns (csv_text, counts_by_checker, exit_code).");
}
