#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gburgers/coeff.hpp"
#include "gburgers/fd_oracle.hpp"
#include "gburgers/initial_data.hpp"
#include "gburgers/invariants.hpp"
#include "gburgers/kernel.hpp"
#include "gburgers/mild_solver.hpp"

namespace py = pybind11;
using namespace gb;

PYBIND11_MODULE(_gburgers, m) {
  m.doc() = "mild-solution solver for u_t - u_xx + h(x) u u_x = 0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);

  m.def("eval_G", [](double x, double t, double s, double tau) {
    return eval_G({x, t, s, tau});
  });
  m.def("eval_Gs", [](double x, double t, double s, double tau) {
    return eval_Gs({x, t, s, tau});
  });
  m.def("eval_Gss", [](double x, double t, double s, double tau) {
    return eval_Gss({x, t, s, tau});
  });
  m.def("integral_G", [](double dt) { return integral_G(dt); });
  m.def("integral_absGs", [](double dt) { return integral_absGs(dt); });
  m.def("integral_Gss", [](double dt) {
    const GssIntegrals g = integral_Gss_signed_and_abs(dt);
    return py::make_tuple(g.signed_value, g.absolute);
  });
  m.def("gronwall_series", &gronwall_series, py::arg("t"), py::arg("scale"),
        py::arg("n_max") = 400);

  py::class_<Coefficient>(m, "Coefficient")
      .def(py::init<double>())
      .def_readonly("alpha", &Coefficient::alpha)
      .def("h", &Coefficient::h)
      .def("dh", &Coefficient::dh)
      .def("sup_h", &Coefficient::sup_h)
      .def("sup_dh", &Coefficient::sup_dh)
      .def("argmax_dh", &Coefficient::argmax_dh);

  py::class_<InitialData>(m, "InitialData")
      .def_static("step", &InitialData::step)
      .def_static("piecewise", &InitialData::piecewise)
      .def("evaluate", &InitialData::evaluate)
      .def("sup_norm", &InitialData::sup_norm)
      .def("heat_convolution",
           [](const InitialData& d, double x, double t) { return d.heat_convolution(x, t); });

  py::class_<Field>(m, "Field")
      .def_readonly("t", &Field::t)
      .def_readonly("x0", &Field::x0)
      .def_readonly("dx", &Field::dx)
      .def_readonly("values", &Field::values)
      .def("x", &Field::x)
      .def("value_at", &Field::value_at)
      .def("sup_norm", &Field::sup_norm);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("L", &GridSpec::L)
      .def_readwrite("nx", &GridSpec::nx);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("grid", &SolverConfig::grid)
      .def_readwrite("picard_tol", &SolverConfig::picard_tol)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("time_panels", &SolverConfig::time_panels)
      .def_readwrite("nodes_per_panel", &SolverConfig::nodes_per_panel)
      .def_readwrite("base_slices", &SolverConfig::base_slices)
      .def_readwrite("report_times", &SolverConfig::report_times);

  py::class_<SolutionPatch>(m, "SolutionPatch")
      .def_readonly("t0", &SolutionPatch::t0)
      .def_readonly("t_star", &SolutionPatch::t_star)
      .def_readonly("fields", &SolutionPatch::fields)
      .def_readonly("iterations", &SolutionPatch::iterations)
      .def_readonly("residual_history", &SolutionPatch::residual_history)
      .def("end_time", &SolutionPatch::end_time);

  m.def("certified_step", &certified_step, py::arg("norm_u0"), py::arg("coefficient"));
  m.def("solve_local", &solve_local, py::arg("data"), py::arg("t0"), py::arg("coefficient"),
        py::arg("config"));
  m.def("solve_global", &solve_global, py::arg("data"), py::arg("T"), py::arg("coefficient"),
        py::arg("config"));

  py::class_<FdConfig>(m, "FdConfig")
      .def(py::init<>())
      .def_readwrite("L", &FdConfig::L)
      .def_readwrite("nx", &FdConfig::nx)
      .def_readwrite("dt_factor", &FdConfig::dt_factor);

  m.def("solve_fd", &solve_fd, py::arg("data"), py::arg("T"), py::arg("coefficient"),
        py::arg("config"), py::arg("report_times"));
  m.def("compare_solvers", [](const std::vector<SolutionPatch>& mild,
                              const std::vector<Field>& fd) {
    const DiscrepancyReport rep = compare(mild, fd);
    return py::make_tuple(rep.times, rep.sup, rep.l2);
  });
}
