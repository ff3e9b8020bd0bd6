#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"
#include "fadinglab/cli.hpp"
#include "fadinglab/error.hpp"
#include "fadinglab/json_io.hpp"
#include "fadinglab/mgf.hpp"
#include "fadinglab/oracle.hpp"
#include "fadinglab/specfun.hpp"

namespace py = pybind11;
using namespace fadinglab;

namespace {

using FactorTuple = std::pair<Complex, double>;
using TermTuple = std::pair<double, std::vector<FactorTuple>>;

PosynomialMGF mgf_from_tuples(const std::vector<TermTuple>& terms) {
  std::vector<MonomialTerm> out;
  for (const auto& [c, factors] : terms) {
    MonomialTerm t;
    t.c = c;
    for (const auto& [a, b] : factors) t.factors.push_back({a, b});
    out.push_back(std::move(t));
  }
  return PosynomialMGF(std::move(out));
}

std::vector<TermTuple> mgf_to_tuples(const PosynomialMGF& mgf) {
  std::vector<TermTuple> out;
  for (const auto& t : mgf.terms()) {
    std::vector<FactorTuple> factors;
    for (const auto& f : t.factors) factors.emplace_back(f.a, f.b);
    out.emplace_back(t.c, std::move(factors));
  }
  return out;
}

QuadratureConfig quad(double tol) {
  QuadratureConfig cfg;
  cfg.tolerance = tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(fadinglab, m) {
  m.doc() = "Error and outage probability of fading channels with posynomial MGFs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<SpecError>(m, "SpecError", base.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", domain.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<UnsupportedSampler>(m, "UnsupportedSampler", base.ptr());

  py::class_<PosynomialMGF>(m, "PosynomialMGF")
      .def(py::init(&mgf_from_tuples), py::arg("terms"),
           "Build from [(c, [(a, b), ...]), ...] with complex or real a.")
      .def_static("from_json", [](const std::string& text) { return mgf_from_json(parse_json_text(text)); })
      .def("to_json", [](const PosynomialMGF& mgf) { return dump_canonical(to_json(mgf)); })
      .def_property_readonly("terms", &mgf_to_tuples)
      .def("__len__", &PosynomialMGF::size)
      .def("__eq__", [](const PosynomialMGF& x, const PosynomialMGF& y) { return x == y; })
      .def("__call__", [](const PosynomialMGF& mgf, Complex s) { return mgf_eval(mgf, s); }, py::arg("s"))
      .def("__repr__", [](const PosynomialMGF& mgf) { return "PosynomialMGF(" + dump_canonical(to_json(mgf)) + ")"; });

  py::class_<Violation>(m, "Violation")
      .def_readonly("condition", &Violation::condition)
      .def_readonly("detail", &Violation::detail);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("ok", &ValidationReport::ok)
      .def_readonly("violations", &ValidationReport::violations)
      .def_readonly("warnings", &ValidationReport::warnings)
      .def("__bool__", [](const ValidationReport& r) { return r.ok; });

  m.def("validate", &validate, py::arg("mgf"));
  m.def("mgf_eval", &mgf_eval, py::arg("mgf"), py::arg("s"));
  m.def("product", &product, py::arg("left"), py::arg("right"));
  m.def(
      "mixture",
      [](const std::vector<double>& w, const std::vector<PosynomialMGF>& parts) { return mixture(w, parts); },
      py::arg("weights"), py::arg("components"));
  m.def("simplify", &simplify, py::arg("mgf"));

  m.def("gaussian_q", &gaussian_q, py::arg("x"));
  m.def("gauss_2f1", &gauss_2f1, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));
  m.def("kummer_1f1", &kummer_1f1, py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("reg_gamma_q", &reg_gamma_q, py::arg("m"), py::arg("x"));
  m.def(
      "lauricella_fd",
      [](double alpha, const std::vector<double>& b, double c, const std::vector<Complex>& x, double tol) {
        return lauricella_fd(alpha, b, c, std::span<const Complex>(x), quad(tol));
      },
      py::arg("alpha"), py::arg("b"), py::arg("c"), py::arg("x"), py::arg("tol") = 1e-12);

  py::class_<ChannelSpec>(m, "ChannelSpec")
      .def_static("rayleigh", &ChannelSpec::rayleigh, py::arg("avg_snr"))
      .def_static("hoyt", &ChannelSpec::hoyt, py::arg("q"), py::arg("avg_snr"))
      .def_static("nakagami", &ChannelSpec::nakagami, py::arg("m"), py::arg("avg_snr"))
      .def_static("rician_shadowed", &ChannelSpec::rician_shadowed, py::arg("K"), py::arg("m"), py::arg("avg_snr"))
      .def_static("eta_mu", &ChannelSpec::eta_mu, py::arg("format"), py::arg("eta"), py::arg("n"), py::arg("avg_snr"))
      .def_static("mrc", &ChannelSpec::mrc, py::arg("branches"))
      .def_static("mixture", &ChannelSpec::mixture, py::arg("probs"), py::arg("scenarios"))
      .def_static("ostbc_shadowed_rician", &ChannelSpec::ostbc_shadowed_rician, py::arg("n_t"), py::arg("n_r"),
                  py::arg("a"), py::arg("b"), py::arg("m"))
      .def_static("posynomial", &ChannelSpec::posynomial, py::arg("mgf"))
      .def_static("from_json", [](const std::string& text) { return channel_from_json(parse_json_text(text)); })
      .def("to_json", [](const ChannelSpec& s) { return dump_canonical(to_json(s)); })
      .def_property_readonly("kind", [](const ChannelSpec& s) { return std::string(to_string(s.kind)); })
      .def("__repr__", [](const ChannelSpec& s) { return "ChannelSpec(" + dump_canonical(to_json(s)) + ")"; });

  m.def("check_spec", &check_spec, py::arg("spec"));
  m.def("to_mgf", &to_mgf, py::arg("spec"));

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("value", &EvalResult::value)
      .def_readonly("error", &EvalResult::error)
      .def_property_readonly("method", [](const EvalResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("warnings", &EvalResult::warnings)
      .def("__float__", [](const EvalResult& r) { return r.value; })
      .def("__repr__", [](const EvalResult& r) {
        std::ostringstream os;
        os.precision(17);
        os << "EvalResult(value=" << r.value << ", error=" << r.error << ", method='" << to_string(r.method) << "')";
        return os.str();
      });

  m.def(
      "q_transform", [](const PosynomialMGF& mgf, double p, double tol) { return q_transform(mgf, p, quad(tol)); },
      py::arg("mgf"), py::arg("p"), py::arg("tol") = QuadratureConfig{}.tolerance);
  m.def("q_asymptotic", &q_asymptotic, py::arg("mgf"), py::arg("p"));
  m.def("diversity_order", &diversity_order, py::arg("mgf"));
  m.def(
      "outage",
      [](const PosynomialMGF& mgf, double gamma_th, const std::string& route) {
        OutageOptions opt;
        if (route == "series")
          opt.route = OutageRoute::series;
        else if (route == "inversion")
          opt.route = OutageRoute::inversion;
        else if (route != "automatic")
          throw DomainError("route must be automatic, series or inversion");
        return outage(mgf, gamma_th, opt);
      },
      py::arg("mgf"), py::arg("gamma_th"), py::arg("route") = "automatic");
  m.def(
      "average_ep",
      [](const PosynomialMGF& mgf, const std::vector<std::pair<double, double>>& terms, double tol) {
        std::vector<GaussianTerm> g;
        for (const auto& [w, p] : terms) g.push_back({w, p});
        return average_ep(mgf, WeightedGaussianSum(std::move(g)), quad(tol));
      },
      py::arg("mgf"), py::arg("terms"), py::arg("tol") = QuadratureConfig{}.tolerance);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("estimate", &McEstimate::estimate)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("samples", &McEstimate::samples)
      .def_readonly("seed", &McEstimate::seed);

  m.def("mc_q_transform", &mc_q_transform, py::arg("spec"), py::arg("p"), py::arg("n") = kDefaultMcSamples,
        py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("mc_outage", &mc_outage, py::arg("spec"), py::arg("gamma_th"), py::arg("n") = kDefaultMcSamples,
        py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("mc_mgf", &mc_mgf, py::arg("spec"), py::arg("s"), py::arg("n") = kDefaultMcSamples, py::arg("seed") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("laplace_forward_q", &laplace_forward_q, py::arg("spec"), py::arg("p"), py::arg("tol") = 1e-9);
  m.def("pdf_quadrature_q", &pdf_quadrature_q, py::arg("spec"), py::arg("p"), py::arg("tol") = 1e-12);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command-line invocation; returns (exit_code, stdout, stderr).");
}
