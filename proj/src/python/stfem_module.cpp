#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stfem/driver.hpp"
#include "stfem/quadrature.hpp"

namespace py = pybind11;
using namespace stfem;

namespace {

MethodConfig make_config(const std::string& method, int ks, int kt, int qs, int qt,
                         double gamma, double epsf, const std::string& tint, int substeps,
                         int order_factor, const std::string& refine, int i_s, int i_t) {
  MethodConfig cfg;
  cfg.method = method_from_name(method);
  cfg.k_s = ks;
  cfg.k_t = kt;
  cfg.q_s = qs;
  cfg.q_t = qt;
  cfg.gamma_J = gamma;
  cfg.eps_f = epsf;
  cfg.rule_mode.topology_preserving = (tint == "preserve");
  cfg.rule_mode.substeps = substeps;
  cfg.rule_mode.order_factor = order_factor;
  cfg.refine = refine_from_name(refine);
  cfg.i_s = i_s;
  cfg.i_t = i_t;
  return cfg;
}

py::dict report_dict(const ErrorReport& rep) {
  py::dict d;
  d["l2_final"] = rep.l2_final;
  d["l2l2"] = rep.l2l2;
  d["geom_dist"] = rep.geom_dist;
  d["nze_min"] = rep.nze_min;
  d["nze_max"] = rep.nze_max;
  d["wall_seconds"] = rep.wall_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_stfem, m) {
  m.doc() = "Unfitted space-time finite elements on moving 1D level-set domains";

  py::register_exception<ExtensionError>(m, "ExtensionError");
  py::register_exception<SolverError>(m, "SolverError");

  py::class_<BackgroundMesh>(m, "BackgroundMesh")
      .def_readonly("domain_lo", &BackgroundMesh::domain_lo)
      .def_readonly("domain_hi", &BackgroundMesh::domain_hi)
      .def_readonly("n_elements", &BackgroundMesh::n_elements)
      .def_readonly("h", &BackgroundMesh::h)
      .def_readonly("vertices", &BackgroundMesh::vertices);
  m.def("build_mesh", &build_mesh, py::arg("lo"), py::arg("hi"), py::arg("n"));

  py::class_<TimeSlabbing>(m, "TimeSlabbing")
      .def_readonly("t_end", &TimeSlabbing::t_end)
      .def_readonly("n_slabs", &TimeSlabbing::n_slabs)
      .def_readonly("dt", &TimeSlabbing::dt)
      .def("t_lower", &TimeSlabbing::t_lower)
      .def("t_upper", &TimeSlabbing::t_upper);
  m.def("build_slabs", &build_slabs, py::arg("t_end"), py::arg("n_slabs"));

  py::class_<ProblemDefinition>(m, "ProblemDefinition")
      .def_readonly("name", &ProblemDefinition::name)
      .def_readonly("t_end", &ProblemDefinition::t_end)
      .def_readonly("w_inf", &ProblemDefinition::w_inf)
      .def("phi", [](const ProblemDefinition& p, double x, double t) { return p.phi(x, t); })
      .def("u_exact",
           [](const ProblemDefinition& p, double x, double t) { return p.u_exact(x, t); });
  m.def("problem", &problem_from_name, py::arg("name"));

  m.def(
      "march",
      [](const std::string& problem, const std::string& method, int ks, int kt, int qs,
         int qt, double gamma, double epsf, const std::string& tint, int substeps,
         int order_factor, int i_s, int i_t) {
        const MethodConfig cfg = make_config(method, ks, kt, qs, qt, gamma, epsf, tint,
                                             substeps, order_factor, "both", i_s, i_t);
        const ProblemDefinition prob = problem_from_name(problem);
        return report_dict(march(cfg, prob).report);
      },
      py::arg("problem"), py::arg("method") = "dg", py::arg("ks") = 1, py::arg("kt") = 1,
      py::arg("qs") = -1, py::arg("qt") = -1, py::arg("gamma") = 0.05,
      py::arg("epsf") = 1.1, py::arg("tint") = "preserve", py::arg("substeps") = 1,
      py::arg("order_factor") = 1, py::arg("i_s") = 0, py::arg("i_t") = 0);

  m.def(
      "run_convergence",
      [](const std::string& problem, const std::string& method, int ks, int kt, int qs,
         int qt, double gamma, double epsf, const std::string& tint, int substeps,
         int order_factor, const std::string& refine, int i_s, int i_t, int nref, int i0) {
        const MethodConfig cfg = make_config(method, ks, kt, qs, qt, gamma, epsf, tint,
                                             substeps, order_factor, refine, i_s, i_t);
        const ProblemDefinition prob = problem_from_name(problem);
        py::list rows;
        for (const StudyRow& r : run_convergence(cfg, prob, nref, i0)) {
          py::dict d = report_dict(r.rep);
          d["level"] = r.level;
          rows.append(d);
        }
        return rows;
      },
      py::arg("problem"), py::arg("method") = "dg", py::arg("ks") = 1, py::arg("kt") = 1,
      py::arg("qs") = -1, py::arg("qt") = -1, py::arg("gamma") = 0.05,
      py::arg("epsf") = 1.1, py::arg("tint") = "preserve", py::arg("substeps") = 1,
      py::arg("order_factor") = 1, py::arg("refine") = "both", py::arg("i_s") = 0,
      py::arg("i_t") = 0, py::arg("nref") = 1, py::arg("i0") = 0);

  m.def("observed_orders", &observed_orders, py::arg("errors"));
  m.def("mean_last_two_orders", &mean_last_two_orders, py::arg("errors"));
}
