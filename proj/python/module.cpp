#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jdcalc/courant.hpp"
#include "jdcalc/reduce.hpp"
#include "jdcalc/run.hpp"
#include "jdcalc/structure_file.hpp"

namespace py = pybind11;
using namespace jdcalc;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(r));
}

Rational rational_from(py::handle h) {
    return Rational(py::str(h).cast<std::string>());
}

std::vector<int> name_indices(const Chart& chart, const std::vector<std::string>& names) {
    std::vector<int> idx;
    for (const auto& n : names) {
        auto i = chart.index_of(n);
        if (!i) throw input_error("undeclared variable '" + n + "'");
        idx.push_back(*i);
    }
    return idx;
}

py::dict components_dict(const Chart& chart, const MultiVec& v) {
    py::dict out;
    for (const auto& [t, c] : v.components()) {
        py::tuple key(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) key[i] = chart.name(t[i]);
        out[key] = c.str();
    }
    return out;
}

template <class Tag>
AltField<Tag> field_from_dict(const Chart& chart, int grade, const py::dict& comps) {
    AltField<Tag> v = AltField<Tag>::zero(chart, grade);
    for (const auto& [key, value] : comps) {
        IndexTuple idx;
        for (auto h : py::cast<py::tuple>(key))
            idx.push_back(name_indices(chart, {py::str(h).cast<std::string>()})[0]);
        v.set_component(idx, parse_poly(chart, py::str(value).cast<std::string>()));
    }
    return v;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Jacobi/Dirac structure calculus on polynomial charts";

    py::register_exception<input_error>(m, "InputError");
    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<not_verified_error>(m, "NotVerifiedError");

    py::class_<Chart>(m, "Chart")
        .def(py::init<std::vector<std::string>>())
        .def_property_readonly("dim", &Chart::dim)
        .def_property_readonly("names", [](const Chart& c) { return c.names(); })
        .def("__eq__", [](const Chart& a, const Chart& b) { return a == b; })
        .def("__repr__", [](const Chart& c) {
            std::string s = "Chart([";
            for (int i = 0; i < c.dim(); ++i) s += (i ? ", '" : "'") + c.name(i) + "'";
            return s + "])";
        });

    py::class_<Poly>(m, "Poly")
        .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
        .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
        .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
        .def("__neg__", [](const Poly& a) { return -a; })
        .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
        .def("partial", [](const Poly& p, const std::string& var) {
            return p.partial(name_indices(p.chart(), {var})[0]);
        })
        .def("substitute_zero",
             [](const Poly& p, const std::vector<std::string>& vars) {
                 auto idx = name_indices(p.chart(), vars);
                 return p.substitute_zero(std::set<int>(idx.begin(), idx.end()));
             })
        .def("eval",
             [](const Poly& p, const std::vector<py::object>& point) {
                 std::vector<Rational> pt;
                 for (const auto& h : point) pt.push_back(rational_from(h));
                 return to_fraction(p.eval(pt));
             })
        .def_property_readonly("is_zero", &Poly::is_zero)
        .def("__str__", &Poly::str)
        .def("__repr__", [](const Poly& p) { return "Poly(" + p.str() + ")"; });

    m.def("poly", [](const Chart& chart, const std::string& expr) {
        return parse_poly(chart, expr);
    });

    py::class_<MultiVec>(m, "MultiVec")
        .def("__add__", [](const MultiVec& a, const MultiVec& b) { return a + b; })
        .def("__sub__", [](const MultiVec& a, const MultiVec& b) { return a - b; })
        .def("__eq__", [](const MultiVec& a, const MultiVec& b) { return a == b; })
        .def_property_readonly("grade", &MultiVec::grade)
        .def_property_readonly("is_zero", &MultiVec::is_zero)
        .def("components", [](const MultiVec& v) { return components_dict(v.chart(), v); })
        .def("__str__", &MultiVec::str);

    py::class_<Form>(m, "Form")
        .def("__add__", [](const Form& a, const Form& b) { return a + b; })
        .def("__sub__", [](const Form& a, const Form& b) { return a - b; })
        .def("__eq__", [](const Form& a, const Form& b) { return a == b; })
        .def_property_readonly("grade", &Form::grade)
        .def_property_readonly("is_zero", &Form::is_zero)
        .def("__str__", &Form::str);

    m.def("multivec", &field_from_dict<VecTag>, py::arg("chart"), py::arg("grade"),
          py::arg("components"));
    m.def("form", &field_from_dict<FormTag>, py::arg("chart"), py::arg("grade"),
          py::arg("components"));
    m.def("wedge", [](const MultiVec& a, const MultiVec& b) { return wedge(a, b); });
    m.def("schouten", [](const MultiVec& a, const MultiVec& b) { return schouten(a, b); });
    m.def("lie_derivative",
          [](const MultiVec& x, const MultiVec& a) { return lie_derivative(x, a); });
    m.def("exterior_derivative", [](const Form& f) { return exterior_derivative(f); });

    py::class_<CheckItem>(m, "CheckItem")
        .def_readonly("label", &CheckItem::label)
        .def_readonly("ok", &CheckItem::pass)
        .def_property_readonly("details", [](const CheckItem& it) {
            py::dict d;
            for (const auto& [k, v] : it.details) d[py::str(k)] = v;
            return d;
        });

    py::class_<CheckReport>(m, "CheckReport")
        .def_property_readonly("passed", &CheckReport::passed)
        .def_readonly("title", &CheckReport::title)
        .def_readonly("items", &CheckReport::items)
        .def("text", &CheckReport::text);

    py::class_<JacobiStructure>(m, "JacobiStructure")
        .def_property_readonly("verified", &JacobiStructure::verified)
        .def_property_readonly("chart", &JacobiStructure::chart)
        .def_property_readonly("lambda_", &JacobiStructure::lambda)
        .def_property_readonly("e_field", &JacobiStructure::e_field);

    m.def("jacobi_check", &jacobi_check);
    m.def("verify_jacobi", [](const MultiVec& lam, const MultiVec& e) {
        auto [report, j] = JacobiStructure::verify(lam, e);
        return py::make_tuple(report, j ? py::cast(*j) : py::none());
    });
    m.def(
        "jacobi_bracket",
        [](const JacobiStructure& j, const Poly& f, const Poly& g, const std::string& mode) {
            return jacobi_bracket(j, f, g, mode == "J" ? BracketMode::J : BracketMode::crJ);
        },
        py::arg("j"), py::arg("f"), py::arg("g"), py::arg("mode") = "crJ");

    py::class_<SubbundleSpec>(m, "SubbundleSpec")
        .def_property_readonly("rank", [](const SubbundleSpec& d) { return d.rank; })
        .def_property_readonly("aligned", [](const SubbundleSpec& d) { return d.is_aligned(); });
    m.def("aligned_distribution", [](const Chart& chart, const std::vector<std::string>& dirs) {
        return SubbundleSpec::aligned(chart, name_indices(chart, dirs));
    });

    py::class_<ExtVec>(m, "ExtVec")
        .def_property_readonly("pure", &ExtVec::pure)
        .def_property_readonly("epart", &ExtVec::epart)
        .def("__eq__", [](const ExtVec& a, const ExtVec& b) { return a == b; })
        .def("__str__", &ExtVec::str);
    m.def("ext_bivector", [](const MultiVec& pure, const MultiVec& epart) {
        return ExtVec::from_parts(pure, epart);
    });

    py::class_<CharPair>(m, "CharPair")
        .def(py::init([](const SubbundleSpec& d, py::object omega) {
                 if (omega.is_none()) return CharPair(d, ExtVec::zero(d.chart, 2));
                 return CharPair(d, omega.cast<ExtVec>());
             }),
             py::arg("d"), py::arg("omega") = py::none())
        .def_property_readonly("omega", [](const CharPair& p) { return p.omega; });

    m.def("dirac_criteria", &dirac_criteria);
    m.def("isotropy_check", &isotropy_check);
    m.def("characteristic_equations_check", &characteristic_equations_check);
    m.def("admissible", [](const JacobiStructure& j, const CharPair& pair, const Poly& f) {
        return admissible_check(j, pair, f).admissible;
    });
    m.def("l_bracket", &l_bracket);
    m.def("maurer_cartan_check", &maurer_cartan_check);
    m.def(
        "axiom_suite",
        [](const JacobiStructure& j, int samples, std::uint64_t seed) {
            return axiom_suite(j, samples, seed);
        },
        py::arg("j"), py::arg("samples") = 50, py::arg("seed") = 0);

    py::class_<ReductionReport>(m, "ReductionReport")
        .def_property_readonly("passed", [](const ReductionReport& r) { return r.passed; })
        .def_property_readonly("checks", [](const ReductionReport& r) { return r.checks; })
        .def_property_readonly("reduced_chart",
                               [](const ReductionReport& r) -> py::object {
                                   if (!r.reduced_chart) return py::none();
                                   return py::cast(r.reduced_chart->names());
                               })
        .def_property_readonly("reduced_lambda",
                               [](const ReductionReport& r) -> py::object {
                                   if (!r.reduced_lambda) return py::none();
                                   return components_dict(*r.reduced_chart, *r.reduced_lambda);
                               })
        .def_property_readonly("reduced_e", [](const ReductionReport& r) -> py::object {
            if (!r.reduced_e) return py::none();
            return components_dict(*r.reduced_chart, *r.reduced_e);
        });

    m.def("quotient_reduce", &quotient_reduce);
    m.def("build_l_from_quotient", &build_l_from_quotient);
    m.def("jacobi_reduction", [](const JacobiStructure& j,
                                 const std::vector<std::string>& constraints,
                                 const SubbundleSpec& d) {
        auto idx = name_indices(j.chart(), constraints);
        return jacobi_reduction(
            j, SubmanifoldSpec(j.chart(), std::set<int>(idx.begin(), idx.end())), d);
    });
    m.def(
        "symmetry_reduce",
        [](const JacobiStructure& j, const std::vector<MultiVec>& fields,
           const std::vector<std::string>& constraints) {
            auto idx = name_indices(j.chart(), constraints);
            return symmetry_reduce(
                j, fields, SubmanifoldSpec(j.chart(), std::set<int>(idx.begin(), idx.end())));
        },
        py::arg("j"), py::arg("fields"), py::arg("constraints") = std::vector<std::string>{});
    m.def("submanifold_conditions",
          [](const JacobiStructure& j, const std::vector<std::string>& constraints,
             const std::string& which) {
              auto idx = name_indices(j.chart(), constraints);
              return submanifold_conditions(
                  j, SubmanifoldSpec(j.chart(), std::set<int>(idx.begin(), idx.end())),
                  which == "first_kind" ? SubmanifoldCase::first_kind
                                        : SubmanifoldCase::coisotropic_b);
          });

    py::class_<StructureFile>(m, "StructureFile")
        .def_property_readonly("chart", [](const StructureFile& sf) { return sf.chart; })
        .def_property_readonly("lambda_",
                               [](const StructureFile& sf) -> py::object {
                                   return sf.lambda ? py::cast(*sf.lambda) : py::none();
                               })
        .def_property_readonly("e_field",
                               [](const StructureFile& sf) -> py::object {
                                   return sf.e_field ? py::cast(*sf.e_field) : py::none();
                               })
        .def_property_readonly("omega",
                               [](const StructureFile& sf) -> py::object {
                                   return sf.omega ? py::cast(*sf.omega) : py::none();
                               })
        .def("distribution",
             [](const StructureFile& sf, const std::string& name) {
                 auto it = sf.distributions.find(name);
                 if (it == sf.distributions.end())
                     throw input_error("no [distribution " + name + "] block");
                 return it->second.to_spec(sf.chart);
             })
        .def_property_readonly("distribution_names", [](const StructureFile& sf) {
            std::vector<std::string> names;
            for (const auto& [k, v] : sf.distributions) names.push_back(k);
            return names;
        });

    m.def("parse_structure", &parse_structure_file);
    m.def("render_structure", &render_structure_file);
    m.def("verify_structure", [](const StructureFile& sf) {
        MultiVec lam = sf.lambda ? *sf.lambda : MultiVec::zero(sf.chart, 2);
        MultiVec e = sf.e_field ? *sf.e_field : MultiVec::zero(sf.chart, 1);
        auto [report, j] = JacobiStructure::verify(lam, e);
        return py::make_tuple(report, j ? py::cast(*j) : py::none());
    });

    m.def("run", [](const std::vector<std::string>& args) {
        RunResult r = run_command(args);
        return py::make_tuple(r.exit_code, r.output);
    });
}
