#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilcantor/dynamics.hpp"
#include "nilcantor/errors.hpp"
#include "nilcantor/report.hpp"
#include "nilcantor/steinitz.hpp"
#include "nilcantor/towers.hpp"

namespace py = pybind11;
using namespace nilcantor;

namespace {

// Python ints cross the boundary as decimal text so size never matters.
Integer from_py(const py::int_& v) { return parse_integer(std::string(py::str(v))); }
py::int_ to_py(const Integer& v) { return py::int_(py::module_::import("builtins").attr("int")(to_string(v))); }

py::tuple element_tuple(const Element& g) { return py::make_tuple(to_py(g.a), to_py(g.b), to_py(g.c)); }
Element element_from(const py::tuple& t) {
  if (t.size() != 3) throw ContractError("an element is a triple (a, b, c)");
  return {from_py(t[0]), from_py(t[1]), from_py(t[2])};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heisenberg group chains: boxes, cores, Steinitz orders and certificates";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<UndecidableError>(m, "UndecidableError", PyExc_RuntimeError);

  m.def("multiply", [](const py::tuple& g, const py::tuple& h) {
    return element_tuple(multiply(element_from(g), element_from(h)));
  });
  m.def("inverse", [](const py::tuple& g) { return element_tuple(inverse(element_from(g))); });
  m.def("conjugate", [](const py::tuple& g, const py::tuple& by) {
    return element_tuple(conjugate(element_from(g), element_from(by)));
  });

  py::class_<Box>(m, "Box")
      .def(py::init([](const py::int_& a, const py::int_& b, const py::int_& c) {
             return Box(from_py(a), from_py(b), from_py(c));
           }),
           py::arg("ma"), py::arg("mb"), py::arg("mc"))
      .def_property_readonly("ma", [](const Box& b) { return to_py(b.ma()); })
      .def_property_readonly("mb", [](const Box& b) { return to_py(b.mb()); })
      .def_property_readonly("mc", [](const Box& b) { return to_py(b.mc()); })
      .def("contains", [](const Box& b, const py::tuple& g) { return b.contains(element_from(g)); })
      .def("includes", &Box::includes)
      .def("__eq__", [](const Box& x, const Box& y) { return x == y; })
      .def("__repr__", &Box::to_string);

  m.def("index_in", [](const Box& outer, const Box& inner) { return to_py(index_in(outer, inner)); });
  m.def("core", &core);
  m.def("relative_core", &relative_core);
  m.def("is_normal_in_gamma", &is_normal_in_gamma);
  m.def("canonical_coset", [](const Box& b, const py::tuple& g) {
    return element_tuple(canonical_coset(CosetSpace(b), element_from(g)));
  });

  py::class_<ChainSpec>(m, "ChainSpec")
      .def_static("builtin", &resolve_builtin, py::arg("ref"))
      .def_static("parse_config", &ChainSpec::parse_config, py::arg("text"))
      .def_property_readonly("label", &ChainSpec::label)
      .def("to_config", &ChainSpec::to_config)
      .def("__repr__", [](const ChainSpec& c) { return "ChainSpec(" + c.label() + ")"; });

  m.def("box_at", &box_at, py::arg("chain"), py::arg("level"));
  m.def("core_at", &core_at, py::arg("chain"), py::arg("level"));
  m.def("discriminant_order", [](const ChainSpec& c, Level l) { return to_py(discriminant_level(c, l).order()); });
  m.def("stable_image_order",
        [](const ChainSpec& c, Level l, Level d) { return to_py(stable_image(c, l, d).order()); });
  m.def("steinitz_limit", [](const ChainSpec& c, Level depth) { return steinitz_order(c, depth).limit.to_string(); });
  m.def("trivial_action_kernel", &trivial_action_kernel, py::arg("chain"), py::arg("cylinder"), py::arg("depth"));
  m.def("kernel_order", [](const ChainSpec& c, Level l, Level lp, Level d) {
    return to_py(lqa_witness(c, l, lp, d).kernel_order);
  });

  m.def("steinitz_product", [](const std::string& x, const std::string& y) {
    return product(SteinitzNumber::parse(x), SteinitzNumber::parse(y)).to_string();
  });
  m.def("steinitz_lcm", [](const std::string& x, const std::string& y) {
    return lcm(SteinitzNumber::parse(x), SteinitzNumber::parse(y)).to_string();
  });
  m.def("asymptotically_equivalent", [](const std::string& x, const std::string& y, std::uint64_t bound) {
    return asymptotically_equivalent(SteinitzNumber::parse(x), SteinitzNumber::parse(y), bound);
  });

  // Reports come back as JSON text; the Python package decodes them.
  m.def("spectrum_report", &report::spectrum);
  m.def("discriminant_report",
        [](const ChainSpec& c, Level l, Level d) { return report::discriminant(c, l, d); });
  m.def("wildness_report", &report::wildness);
  m.def("freeness_report", &report::freeness);
  m.def("reproduce_report", [](const std::string& name, std::uint64_t count, std::uint64_t bound) {
    return report::reproduce(name, report::ReproduceOptions{count, bound});
  });
  m.attr("__version__") = report::tool_version();
}
