#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dwell/diagonalize.hpp"
#include "dwell/dual_dual.hpp"
#include "dwell/dual_solver.hpp"
#include "dwell/errors.hpp"
#include "dwell/ginzburg_landau.hpp"
#include "dwell/instance.hpp"
#include "dwell/oracle.hpp"
#include "dwell/reduction.hpp"
#include "dwell/solve.hpp"

namespace py = pybind11;
using namespace dwell;

namespace {

py::dict dual_to_dict(const DualResult& result) {
  py::dict out;
  if (const auto* interior = std::get_if<InteriorDual>(&result)) {
    out["kind"] = "interior";
    out["sigma"] = interior->sigma_star;
    out["iterations"] = interior->iterations;
  } else {
    const auto& boundary = std::get<BoundaryDual>(result);
    out["kind"] = "boundary";
    out["sigma"] = boundary.sigma0;
    out["g_limit"] = boundary.g_limit;
    out["I"] = boundary.I;
    out["J"] = boundary.J;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Global solver for double-well problems";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<DwpInstance>(m, "DwpInstance")
      .def(py::init<Matrix, Matrix, Vector, double, Vector, double>(), py::arg("A"), py::arg("B"),
           py::arg("c"), py::arg("d"), py::arg("f"), py::arg("constant_offset") = 0.0)
      .def_property_readonly("n", &DwpInstance::n)
      .def_property_readonly("m", &DwpInstance::m)
      .def_property_readonly("A", &DwpInstance::A)
      .def_property_readonly("B", &DwpInstance::B)
      .def_property_readonly("c", &DwpInstance::c)
      .def_property_readonly("d", &DwpInstance::d)
      .def_property_readonly("f", &DwpInstance::f)
      .def_property_readonly("constant_offset", &DwpInstance::constant_offset)
      .def("objective", [](const DwpInstance& i, const Vector& x) { return evaluate_objective(i, x); })
      .def("gradient", [](const DwpInstance& i, const Vector& x) { return evaluate_gradient(i, x); })
      .def("to_json", [](const DwpInstance& i) { return save_instance(i); });

  m.def("evaluate_objective", &evaluate_objective, py::arg("instance"), py::arg("x"));
  m.def("evaluate_gradient", &evaluate_gradient, py::arg("instance"), py::arg("x"));
  m.def("load_instance", [](const std::string& text) { return load_instance(text); }, py::arg("json_text"));
  m.def("load_instance_file", [](const std::string& path) { return load_instance_file(path); },
        py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("instance"));

  m.def("_solve_json", [](const DwpInstance& inst, double tol) { return report_to_json(solve(inst, tol)).dump(); },
        py::arg("instance"), py::arg("tol") = 1e-10);

  m.def("reduction_branch", [](const DwpInstance& inst) { return std::string(to_string(reduce(inst).branch)); },
        py::arg("instance"));

  py::class_<CanonicalInstance>(m, "CanonicalInstance")
      .def_static("from_parameters", &CanonicalInstance::from_parameters, py::arg("alpha"), py::arg("psi"),
                  py::arg("phi"), py::arg("nu"), py::arg("constant_offset") = 0.0)
      .def_readonly("alpha", &CanonicalInstance::alpha)
      .def_readonly("psi", &CanonicalInstance::psi)
      .def_readonly("phi", &CanonicalInstance::phi)
      .def_readonly("nu", &CanonicalInstance::nu)
      .def_readonly("P", &CanonicalInstance::P)
      .def_readonly("sigma0", &CanonicalInstance::sigma0)
      .def_readonly("constant_offset", &CanonicalInstance::constant_offset)
      .def_property_readonly("tau", &CanonicalInstance::tau);

  m.def("to_canonical", &to_canonical, py::arg("instance"));
  m.def("dual_value", &dual_value, py::arg("canonical"), py::arg("sigma"));
  m.def("dual_derivative", &dual_derivative, py::arg("canonical"), py::arg("sigma"));
  m.def("w_of_sigma", &w_of_sigma, py::arg("canonical"), py::arg("sigma"));
  m.def("solve_dual", [](const CanonicalInstance& can, double tol) { return dual_to_dict(solve_dual(can, tol)); },
        py::arg("canonical"), py::arg("tol") = 1e-10);

  m.def("pdd_value", &pdd_value, py::arg("canonical"), py::arg("lam"));
  m.def(
      "solve_pdd",
      [](const CanonicalInstance& can, double tol) {
        const PddSolution s = solve_pdd(can, tol);
        py::dict out;
        out["lambda"] = s.lambda;
        out["value"] = s.value;
        out["projected_gradient_norm"] = s.projected_gradient_norm;
        out["iterations"] = s.iterations;
        out["converged"] = s.converged;
        return out;
      },
      py::arg("canonical"), py::arg("tol") = 1e-10);

  m.def(
      "gl_instance",
      [](int s, int t, double alpha, double beta) { return build_dwp_instance(GridSpec{s, t, alpha, beta}); },
      py::arg("s"), py::arg("t"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "gl_energy",
      [](int s, int t, double alpha, double beta, const Vector& e) {
        return discrete_energy(GridSpec{s, t, alpha, beta}, e);
      },
      py::arg("s"), py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("e"));

  m.def(
      "multistart_min",
      [](const DwpInstance& inst, int starts, std::uint64_t seed) {
        const OracleMinimum r = multistart_min(inst, starts, seed);
        return py::make_tuple(r.x, r.value);
      },
      py::arg("instance"), py::arg("starts") = 50, py::arg("seed") = 0);
}
