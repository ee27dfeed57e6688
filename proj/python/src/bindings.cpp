#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "configdensity/bessel.hpp"
#include "configdensity/density.hpp"
#include "configdensity/error.hpp"
#include "configdensity/field.hpp"
#include "configdensity/functionals.hpp"
#include "configdensity/generators.hpp"
#include "configdensity/measures.hpp"
#include "configdensity/spectral.hpp"
#include "configdensity/sweep.hpp"
#include "configdensity/verify.hpp"

namespace py = pybind11;
namespace cd = configdensity;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

cd::Boundary boundary_of(const std::string& name) { return cd::boundary_from_string(name); }

cd::DensityField field_from_array(const Array& values, double spacing, std::vector<double> origin,
                                  const std::string& boundary) {
  const int dim = static_cast<int>(values.ndim());
  if (dim < 1 || dim > 3) throw cd::Error("invalid_grid", "array must have 1 to 3 dimensions");
  std::vector<std::size_t> shape(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) shape[static_cast<std::size_t>(a)] = static_cast<std::size_t>(values.shape(a));
  if (origin.empty()) origin.assign(shape.size(), 0.0);
  const cd::Grid g = cd::Grid::make(shape, spacing, origin);
  std::vector<double> v(values.data(), values.data() + values.size());
  return cd::DensityField(g, std::move(v), boundary_of(boundary));
}

Array field_to_array(const cd::DensityField& f) {
  const cd::Grid& g = f.grid();
  std::vector<py::ssize_t> shape;
  for (int a = 0; a < g.dim; ++a) shape.push_back(static_cast<py::ssize_t>(g.shape[static_cast<std::size_t>(a)]));
  Array out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

// Python dicts cross the boundary as JSON text; the package wrapper does the
// json.dumps.
nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

py::dict report_dict(const cd::BoundReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margin"] = r.margin;
  d["passed"] = r.passed;
  d["detail"] = r.detail;
  py::dict extras;
  for (const auto& [k, v] : r.extras) extras[py::str(k)] = v;
  d["extras"] = extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Configuration functionals of density fields";

  // Error carries (code, message) as its args.
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<cd::Error>(m, "Error", PyExc_RuntimeError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cd::Error& e) {
      const py::tuple args = py::make_tuple(e.code(), std::string(e.what()));
      PyErr_SetObject(error.get_stored().ptr(), args.ptr());
    }
  });

  py::class_<cd::Grid>(m, "Grid")
      .def_readonly("dim", &cd::Grid::dim)
      .def_readonly("shape", &cd::Grid::shape)
      .def_readonly("spacing", &cd::Grid::spacing)
      .def_readonly("origin", &cd::Grid::origin)
      .def("cell_volume", &cd::Grid::cell_volume);

  py::class_<cd::DensityField>(m, "DensityField")
      .def(py::init(&field_from_array), py::arg("values"), py::arg("spacing"),
           py::arg("origin") = std::vector<double>{}, py::arg("boundary") = "zero_outside")
      .def_property_readonly("grid", &cd::DensityField::grid)
      .def_property_readonly("boundary", [](const cd::DensityField& f) { return cd::to_string(f.boundary()); })
      .def("values", &field_to_array)
      .def("mass", &cd::DensityField::mass)
      .def("squared_norm", &cd::DensityField::squared_norm)
      .def("support_measure", &cd::DensityField::support_measure)
      .def("max_value", &cd::DensityField::max_value);

  m.def("generate_json", [](const std::string& config) {
    return cd::generate(cd::field_config_from_json(parse(config)));
  });
  m.def("save_field", [](const cd::DensityField& f, const std::string& path) { cd::save_field(f, path); });
  m.def("load_field", [](const std::string& path) { return cd::load_field(path); });

  m.def("bessel_j0", &cd::bessel_j0);
  m.def("nu_hat_closed", &cd::nu_hat_closed, py::arg("y"), py::arg("alpha"), py::arg("xi"));
  m.def("nu_abs_circle_average_exact", &cd::nu_abs_circle_average_exact);

  m.def(
      "pair_correlation",
      [](const cd::DensityField& f, double t, const std::string& method, std::size_t circle_nodes) {
        cd::QuadratureOptions q;
        q.circle_nodes = circle_nodes;
        return cd::pair_correlation(f, t, cd::method_from_string(method), q).value;
      },
      py::arg("field"), py::arg("t"), py::arg("method") = "spatial", py::arg("circle_nodes") = 0);
  m.def(
      "triangle_d1",
      [](const cd::DensityField& f, double alpha, double t, std::size_t circle_nodes, std::size_t ray_nodes) {
        cd::QuadratureOptions q;
        q.circle_nodes = circle_nodes;
        q.ray_nodes = ray_nodes;
        return cd::triangle_d1(f, alpha, t, q).value;
      },
      py::arg("field"), py::arg("alpha"), py::arg("t") = 1.0, py::arg("circle_nodes") = 0,
      py::arg("ray_nodes") = 64);
  m.def(
      "colinear_triple",
      [](const cd::DensityField& f, double t, std::size_t n_dirs) { return cd::colinear_triple(f, t, n_dirs).value; },
      py::arg("field"), py::arg("t"), py::arg("n_dirs") = 0);
  m.def("poisson_smooth", &cd::poisson_smooth, py::arg("field"), py::arg("lam"));
  m.def(
      "banach_density",
      [](const cd::DensityField& f, const std::vector<double>& ts, double stride, std::size_t tail) {
        cd::BanachOptions o;
        o.stride = stride;
        o.tail = tail;
        const auto env = cd::banach_density(f, ts, o);
        py::dict d;
        d["t"] = env.t_values;
        d["sup_average"] = env.sup_averages;
        d["estimate"] = env.estimate;
        return d;
      },
      py::arg("field"), py::arg("t_schedule"), py::arg("stride") = 0.0, py::arg("tail") = 3);

  m.def("run_sweep_json", [](const std::string& config) {
    const auto result = cd::run_sweep(cd::sweep_config_from_json(parse(config)));
    py::dict d;
    d["csv"] = cd::sweep_csv(result.rows);
    d["epsilon_num"] = result.epsilon_num;
    d["onset"] = result.onset ? py::cast(*result.onset) : py::none();
    return d;
  });

  m.def(
      "verify",
      [](const std::string& level) {
        cd::VerifyOptions o;
        o.level = level == "full" ? cd::VerifyLevel::full : cd::VerifyLevel::fast;
        const auto out = cd::verify_suite(o);
        py::list reports;
        for (const auto& r : out.reports) reports.append(report_dict(r));
        return py::make_tuple(out.exit_code, reports);
      },
      py::arg("level") = "fast");
}
