#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vlc/asymptotics.hpp"
#include "vlc/bigfloat.hpp"
#include "vlc/cli.hpp"
#include "vlc/error.hpp"
#include "vlc/exact.hpp"
#include "vlc/gaussian.hpp"
#include "vlc/large_deviations.hpp"
#include "vlc/md_expansion.hpp"

namespace py = pybind11;
using namespace vlc;

namespace {

py::object to_py_int(const mpz_class& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const mpq_class& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py_int(q.get_num()), to_py_int(q.get_den()));
}

asym::MdConvention convention_from(const std::string& name) {
  if (name == "bits_paper") return asym::MdConvention::bits_paper;
  if (name == "nats_converted") return asym::MdConvention::nats_converted;
  if (name == "dimensional") return asym::MdConvention::dimensional;
  throw ParseError("unknown convention '" + name + "'");
}

py::dict outcome_dict(const checks::CheckOutcome& o) {
  py::dict d;
  d["name"] = o.name;
  d["passed"] = o.passed;
  d["detail"] = o.detail;
  d["metrics"] = py::module_::import("json").attr("loads")(o.metrics.dump());
  return d;
}

}  // namespace

PYBIND11_MODULE(_vlc_limits, m) {
  m.doc() = "Exact and asymptotic limits of lossless compression for memoryless sources";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<DiscreteSource>(m, "Source")
      .def(py::init(&DiscreteSource::from_strings), py::arg("probs"))
      .def_static("bernoulli", [](const std::string& p) { return DiscreteSource::bernoulli(parse_rational(p)); })
      .def_static("uniform", &DiscreteSource::uniform)
      .def_static("load", &load_source)
      .def_static("from_json", &parse_source_json)
      .def_property_readonly("size", &DiscreteSource::size)
      .def_property_readonly("symbols", &DiscreteSource::symbols)
      .def_property_readonly("probs",
                             [](const DiscreteSource& s) {
                               py::list out;
                               for (const auto& p : s.probs()) out.append(to_fraction(p));
                               return out;
                             })
      .def("__repr__", [](const DiscreteSource& s) { return "Source(" + s.describe() + ")"; });

  py::class_<InfoMoments>(m, "InfoMoments")
      .def_readonly("entropy", &InfoMoments::entropy)
      .def_readonly("varentropy", &InfoMoments::varentropy)
      .def_readonly("skew", &InfoMoments::skew);

  m.def("info_moments", &info_moments);
  m.def("renyi_entropy", &renyi_entropy);
  m.def("lattice_span", &lattice_span);
  m.def("describe", &cli::describe_report);
  m.def("set_precision", &set_working_precision);

  m.def("m_star", [](const DiscreteSource& src, int n, const std::string& eps, std::uint64_t budget) {
    return to_py_int(m_star(enumerate_levels(src, n, budget), parse_rational(eps)));
  }, py::arg("source"), py::arg("n"), py::arg("eps"), py::arg("budget") = kDefaultTypeBudget);
  m.def("l_star", [](const DiscreteSource& src, int n, const std::string& eps, std::uint64_t budget) {
    return l_star(enumerate_levels(src, n, budget), parse_rational(eps));
  }, py::arg("source"), py::arg("n"), py::arg("eps"), py::arg("budget") = kDefaultTypeBudget);
  m.def("l_star_exact", [](const DiscreteSource& src, int n, const std::string& eps, std::uint64_t budget) {
    return to_fraction(l_star_exact(enumerate_levels(src, n, budget), parse_rational(eps)));
  }, py::arg("source"), py::arg("n"), py::arg("eps"), py::arg("budget") = kDefaultTypeBudget);
  m.def("eta_quantile", [](const DiscreteSource& src, int n, const std::string& eps) {
    return eta_quantile(enumerate_levels(src, n), parse_rational(eps));
  });
  m.def("zeta_quantile", [](const DiscreteSource& src, int n, const std::string& eps) {
    return zeta_quantile(enumerate_levels(src, n), parse_rational(eps));
  });
  m.def("brute_force", [](const DiscreteSource& src, int n, const std::string& eps) {
    const auto r = brute_force_oracle(src, n, parse_rational(eps));
    return py::make_tuple(to_py_int(r.m_star), to_fraction(r.l_star));
  });

  m.def("vl_second_order", &asym::vl_second_order);
  m.def("vl_third_order", &asym::vl_third_order);
  m.def("vl_zero_error", &asym::vl_zero_error);
  m.def("fl_third_order", &asym::fl_third_order);
  m.def("fl_md_expansion", [](const InfoMoments& mo, int n, double eps, const std::string& conv) {
    return asym::fl_md_expansion(mo, n, eps, convention_from(conv));
  }, py::arg("moments"), py::arg("n"), py::arg("eps"), py::arg("convention") = "bits_paper");
  m.def("eta_md_expansion", &asym::eta_md_expansion);

  auto gauss = m.def_submodule("gauss");
  gauss.def("pdf", &gauss::pdf);
  gauss.def("cdf", &gauss::cdf);
  gauss.def("quantile", &gauss::quantile);
  gauss.def("f_g", &gauss::f_g);
  gauss.def("g_g", &gauss::g_g);

  m.def("cgf", [](const DiscreteSource& src, double s) {
    const auto c = ld::cgf(src, s);
    return py::make_tuple(c.lambda, c.d1, c.d2);
  });
  m.def("rate_function", [](const DiscreteSource& src, double a) {
    const auto r = ld::rate_function(src, a);
    return py::make_tuple(r.s, r.rate);
  });
  m.def("bahadur_rao_log", [](const DiscreteSource& src, int n, double s) {
    return ld::bahadur_rao(src, n, s).log_value;
  });
  m.def("quantile_inversion", [](const InfoMoments& mo, int n, double eps, bool upper) {
    const auto a = md::quantile_inversion(mo, n, eps, upper ? md::InversionSide::upper_eq_md2
                                                            : md::InversionSide::lower_eq_md1);
    return py::make_tuple(a.value, a.bound);
  });

  m.def("table", [](const DiscreteSource& src, const std::string& n, const std::string& eps, std::uint64_t budget) {
    return cli::build_table(src, cli::parse_n_list(n), cli::parse_eps_list(eps), budget).csv;
  }, py::arg("source"), py::arg("n"), py::arg("eps"), py::arg("budget") = kDefaultTypeBudget);
  m.def("run_checks", [](const std::string& names, std::optional<DiscreteSource> src, const std::string& n,
                         const std::string& eps) {
    cli::RunConfig c;
    c.checks = cli::parse_check_list(names);
    if (!n.empty()) c.n_list = cli::parse_n_list(n);
    if (!eps.empty()) c.eps_list = cli::parse_eps_list(eps);
    py::list out;
    for (const auto& o : cli::run_checks(src, c)) out.append(outcome_dict(o));
    return out;
  }, py::arg("checks"), py::arg("source") = py::none(), py::arg("n") = "", py::arg("eps") = "");
}
