#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sumset_forge/eset.hpp"
#include "sumset_forge/field.hpp"
#include "sumset_forge/garaev.hpp"
#include "sumset_forge/lemmas.hpp"
#include "sumset_forge/search.hpp"
#include "sumset_forge/setalg.hpp"
#include "sumset_forge/subfields.hpp"
#include "sumset_forge/verify_suite.hpp"

namespace py = pybind11;
using namespace sumset_forge;

namespace {

using PyField = std::shared_ptr<Field>;

PyField unconst(const FieldPtr& f) { return std::const_pointer_cast<Field>(f); }

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

ESet make_set(const PyField& f, const std::vector<Elem>& elems) {
  for (Elem x : elems) {
    if (x >= f->q()) throw py::value_error("element out of range for " + f->spec());
  }
  return ESet::of(f, std::span<const Elem>(elems));
}

py::dict report_dict(const IneqReport& r) {
  py::dict d;
  d["label"] = r.label;
  d["lhs"] = to_py(r.lhs);
  d["rhs_num"] = to_py(r.rhs_num);
  d["rhs_den"] = to_py(r.rhs_den);
  d["holds"] = r.holds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite field sumset and product set toolkit";

  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);
  py::register_exception<ContextMismatch>(m, "ContextMismatch", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Field, PyField>(m, "Field")
      .def_static("parse", [](const std::string& spec) { return unconst(Field::parse(spec)); })
      .def_static("make", [](std::uint32_t p, unsigned k,
                             std::optional<std::vector<std::uint32_t>> modulus) {
        return unconst(Field::make(p, k, std::move(modulus)));
      }, py::arg("p"), py::arg("k") = 1, py::arg("modulus") = py::none())
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("k", &Field::k)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("modulus", &Field::modulus)
      .def_property_readonly("generator", &Field::generator)
      .def_property_readonly("has_tables", &Field::has_tables)
      .def("spec", &Field::spec)
      .def("modulus_string", &Field::modulus_string)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("neg", &Field::neg)
      .def("mul", &Field::mul)
      .def("inv", [](const Field& f, Elem x) {
        if (x == 0 || x >= f.q()) throw py::value_error("no inverse");
        return f.inv(x);
      })
      .def("pow", &Field::pow)
      .def("frobenius", &Field::frobenius, py::arg("x"), py::arg("times") = 1)
      .def("digits", &Field::digits)
      .def("render", &Field::render)
      .def("parse_element", [](const Field& f, const std::string& s) { return f.parse_element(s); })
      .def("__repr__", [](const Field& f) { return "Field('" + f.spec() + "')"; });

  py::class_<ESet>(m, "ESet")
      .def(py::init(&make_set), py::arg("field"), py::arg("elements"))
      .def_static("parse", [](const PyField& f, const std::string& text) {
        return ESet::parse(f, text);
      })
      .def_static("from_mask_hex", [](const PyField& f, const std::string& hex) {
        return ESet::from_mask_hex(f, hex);
      })
      .def_static("full", [](const PyField& f) { return ESet::full(f); })
      .def_property_readonly("field", [](const ESet& s) { return unconst(s.ctx()); })
      .def("elements", &ESet::elements)
      .def("mask_hex", &ESet::mask_hex)
      .def("literal", &ESet::literal, py::arg("poly") = false)
      .def("__len__", &ESet::size)
      .def("__contains__", &ESet::contains)
      .def("__iter__", [](const ESet& s) {
        return py::iter(py::cast(s.elements()));
      })
      .def("__eq__", &ESet::operator==)
      .def("__repr__", [](const ESet& s) { return "ESet(" + s.literal() + ")"; });

  m.def("sumset", &sumset);
  m.def("diffset", &diffset);
  m.def("productset", &productset);
  m.def("quotientset", &quotientset);
  m.def("dilate", &dilate);
  m.def("translate", &translate);
  m.def("negate", &negate);
  m.def("reciprocals", &reciprocals);
  m.def("ratio_of_differences", &ratio_of_differences);
  m.def("mult_energy", &mult_energy);
  m.def("collision_energy", &collision_energy);
  m.def("is_subfield", &is_subfield);
  m.def("subfields", [](const PyField& f) {
    std::vector<std::pair<unsigned, ESet>> out;
    for (const auto& g : subfields(FieldPtr(f))) out.emplace_back(g.d, g.elems);
    return out;
  });

  m.def("check_ruzsa_triangle", [](const ESet& x, const ESet& y, const ESet& z) {
    return report_dict(check_ruzsa_triangle(x, y, z));
  });
  m.def("check_ruzsa_sum_form", [](const ESet& x, const ESet& y, const ESet& z) {
    return report_dict(check_ruzsa_sum_form(x, y, z));
  });
  m.def("check_plunnecke", [](const ESet& x, const std::vector<ESet>& bs) {
    return report_dict(check_plunneke_corollary(x, bs));
  });

  m.def("check_hypothesis", [](const ESet& a, long long num, long long den) {
    std::vector<py::tuple> out;
    for (const auto& v : check_hypothesis(a, Rational(num, den))) {
      out.push_back(py::make_tuple(v.degree, v.c, v.d, v.t));
    }
    return out;
  }, py::arg("a"), py::arg("num") = 47, py::arg("den") = 48);

  m.def("pigeonhole", [](const ESet& a) {
    auto out = pigeonhole(a);
    return py::make_tuple(out.b0, out.n, out.a1);
  });

  m.def("run_main_theorem", [](const ESet& a) {
    auto cert = run_main_theorem(a);
    py::dict d;
    d["case"] = std::string(to_string(cert.tag));
    d["m"] = cert.m;
    d["sum_card"] = cert.sum_card;
    d["prod_card"] = cert.prod_card;
    d["exponents"] = py::make_tuple(cert.claim.w_plus, cert.claim.w_times, cert.claim.e);
    d["constant"] = cert.tracked_constant.str();
    d["holds"] = cert.claim_holds();
    d["summary"] = cert.summary_line();
    d["text"] = format_certificate(cert, a);
    d["verified"] = verify_certificate(cert, a);
    return d;
  });
  m.def("verify_certificate_text", [](const ESet& a, const std::string& text) {
    try {
      return verify_certificate(parse_certificate(a.ctx(), text), a);
    } catch (const std::exception&) {
      return false;
    }
  });

  m.def("search", [](const PyField& f, std::uint32_t size, const std::string& mode,
                     std::uint64_t trials, std::uint64_t seed, bool include_zero, unsigned jobs) {
    SearchConfig cfg;
    cfg.m = size;
    cfg.sample_count = trials;
    cfg.seed = seed;
    cfg.exclude_zero = !include_zero;
    cfg.jobs = jobs;
    std::vector<SearchRecord> recs;
    if (mode == "exhaustive") {
      cfg.mode = SearchMode::Exhaustive;
      recs = exhaustive_min(f, cfg);
    } else if (mode == "random") {
      cfg.mode = SearchMode::Random;
      recs = random_scan(f, cfg);
    } else {
      throw py::value_error("mode must be exhaustive or random");
    }
    std::vector<py::tuple> out;
    for (const auto& r : recs) {
      out.push_back(py::make_tuple(r.mask_hex, r.m, r.s, r.t, r.hypothesis_ok, r.case_tag));
    }
    return out;
  }, py::arg("field"), py::arg("m"), py::arg("mode") = "exhaustive", py::arg("trials") = 0,
     py::arg("seed") = 0, py::arg("include_zero") = false, py::arg("jobs") = 1);

  m.def("run_suite", [](const std::string& name, const PyField& f, std::uint64_t trials,
                        std::uint64_t seed, unsigned jobs) {
    auto suites = parse_suites(name);
    if (suites.size() != 1) throw py::value_error("expected a single suite name");
    SuiteRun run;
    {
      py::gil_scoped_release release;
      run = run_suite(suites[0], f, trials, seed, jobs);
    }
    py::dict d;
    d["instances"] = run.instances;
    d["reports"] = run.reports.size();
    d["failures"] = run.failures;
    return d;
  }, py::arg("suite"), py::arg("field"), py::arg("trials"), py::arg("seed") = 0,
     py::arg("jobs") = 1);
}
