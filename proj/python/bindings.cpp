#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "normrel/io.hpp"
#include "normrel/normality.hpp"
#include "normrel/relations.hpp"
#include "normrel/structure.hpp"
#include "normrel/theorems.hpp"

namespace py = pybind11;
using namespace normrel;

namespace {

  // Python sees structures through this handle; the library shares them as
  // pointers to const.
  struct PyStructure {
    StructurePtr ptr;
  };

  StructureMap sub(PyStructure const& x, std::vector<Element> const& generators) {
    return subobject(x.ptr, close_subset(*x.ptr, generators));
  }

  py::dict check_dict(NormalityCheck const& c) {
    py::dict d;
    d["normal"]     = c.normal;
    d["square"]     = c.square;
    d["diagnostic"] = c.diagnostic;
    d["witness"]    = c.witness;
    return d;
  }

}  // namespace

PYBIND11_MODULE(_normrel, m) {
  m.doc() = "Bourn-normal monomorphisms and equivalence relations on finite structures";

  // translators are tried newest first, so the subclass goes last
  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  m.attr("DEFAULT_MAX_CARRIER") = kDefaultMaxCarrier;

  py::class_<PyStructure>(m, "Structure")
      .def_property_readonly("context",
                             [](PyStructure const& x) { return std::string(to_string(x.ptr->context())); })
      .def_property_readonly("size", [](PyStructure const& x) { return x.ptr->size(); })
      .def_property_readonly("objects", [](PyStructure const& x) { return x.ptr->objects(); })
      .def_property_readonly("names", [](PyStructure const& x) { return x.ptr->names(); })
      .def("__len__", [](PyStructure const& x) { return x.ptr->size(); })
      .def("__eq__", [](PyStructure const& a, PyStructure const& b) { return *a.ptr == *b.ptr; })
      .def("__repr__", [](PyStructure const& x) {
        return "<Structure " + std::string(to_string(x.ptr->context())) + " of size "
               + std::to_string(x.ptr->size()) + ">";
      });

  py::class_<EquivRelation>(m, "Relation")
      .def_property_readonly("classes", &EquivRelation::classes)
      .def_property_readonly("class_ids", &EquivRelation::class_ids)
      .def("related", &EquivRelation::related)
      .def("__len__", &EquivRelation::number_of_classes)
      .def("__eq__", [](EquivRelation const& a, EquivRelation const& b) { return a == b; })
      .def("__str__", &to_literal)
      .def("__repr__", [](EquivRelation const& r) { return "<Relation " + to_literal(r) + ">"; });

  m.def("load", [](std::string const& text) { return PyStructure{load_structure(text)}; },
        py::arg("text"), "Parse a structure document.");
  m.def("load_file",
        [](std::filesystem::path const& path) { return PyStructure{load_structure_file(path)}; },
        py::arg("path"));
  m.def("save", [](PyStructure const& x) { return save_structure(*x.ptr); });
  m.def(
      "validate",
      [](PyStructure const& x) {
        py::list out;
        for (auto const& v : validate_structure(*x.ptr).violations) {
          py::dict d;
          d["axiom"]   = v.axiom;
          d["witness"] = v.witness;
          d["message"] = v.message;
          out.append(d);
        }
        return out;
      },
      "Violated axioms; empty when the structure is valid.");

  m.def("parse_relation",
        [](PyStructure const& x, std::string const& text) { return parse_relation(x.ptr, text); });
  m.def("diagonal", [](PyStructure const& x) { return diagonal(x.ptr); });
  m.def("codiscrete", [](PyStructure const& x) { return codiscrete(x.ptr); });
  m.def("generated_congruence",
        [](PyStructure const& x, Pairs const& seeds) { return generated_congruence(x.ptr, seeds); },
        py::arg("x"), py::arg("seeds"));
  m.def(
      "congruences",
      [](PyStructure const& x, std::size_t max_carrier) {
        return enumerate_congruences(x.ptr, max_carrier);
      },
      py::arg("x"), py::arg("max_carrier") = kDefaultMaxCarrier);
  m.def("meet", &meet);
  m.def("join", &join);

  m.def("close", [](PyStructure const& x, std::vector<Element> const& generators) {
    return close_subset(*x.ptr, generators);
  });
  m.def(
      "nor", [](EquivRelation const& r) { return image(nor(r)); },
      "Image of the normalization of a relation.");
  m.def(
      "rel", [](PyStructure const& x, std::vector<Element> const& generators) {
        return rel(sub(x, generators));
      },
      py::arg("x"), py::arg("subset"));
  m.def(
      "is_bourn_normal",
      [](PyStructure const& x, std::vector<Element> const& generators) {
        return check_dict(is_bourn_normal(sub(x, generators)));
      },
      py::arg("x"), py::arg("subset"));
  m.def(
      "is_bourn_normal_to",
      [](PyStructure const& x, std::vector<Element> const& generators, EquivRelation const& r) {
        return check_dict(is_bourn_normal_to(sub(x, generators), r));
      },
      py::arg("x"), py::arg("subset"), py::arg("relation"));
  m.def(
      "witnesses",
      [](PyStructure const& x, std::vector<Element> const& generators, std::size_t max_carrier) {
        return normal_to_witnesses(sub(x, generators), max_carrier);
      },
      py::arg("x"), py::arg("subset"), py::arg("max_carrier") = kDefaultMaxCarrier);
  m.def(
      "in_n0",
      [](PyStructure const& x, std::vector<Element> const& generators) {
        return in_N0(sub(x, generators));
      },
      py::arg("x"), py::arg("subset"));

  m.def(
      "verify",
      [](std::vector<std::filesystem::path> const& files, std::size_t max_carrier) {
        std::vector<VerificationReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_all(files, max_carrier);
        }
        std::string out = "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
          out += (i ? "," : "") + to_json(reports[i]).dump();
        }
        return out + "]";
      },
      py::arg("files"), py::arg("max_carrier") = kDefaultMaxCarrier,
      "Run every suite on every file; returns the JSON report list as text.");
}
