#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "definetti/bound.hpp"
#include "definetti/cli.hpp"
#include "definetti/fock.hpp"
#include "definetti/oracle.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/weight_basis.hpp"

namespace py = pybind11;
using namespace definetti;

namespace {

weights::SuperpositionProfile to_profile(const std::vector<std::pair<cplx, cplx>>& components) {
  weights::SuperpositionProfile p;
  for (const auto& [gamma, weight] : components) {
    p.components.push_back(weights::ProfileComponent{gamma, weight});
  }
  return p;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["k"] = r.k;
  d["w_max"] = r.w_max;
  d["nodes"] = r.nodes;
  d["grid_step"] = r.grid_step;
  d["grid_radius"] = r.grid_radius;
  d["delta_full"] = r.delta_full;
  d["delta_half"] = r.delta_half;
  d["zeta"] = r.zeta;
  d["eta"] = r.eta;
  d["theta"] = r.theta;
  d["bound_paper"] = r.bound_paper;
  d["bound_conservative"] = r.bound_conservative;
  d["mass_error"] = r.mass_error;
  d["quad_error"] = r.quad_error;
  d["total_mass"] = r.total_mass;
  d["trace"] = r.trace;
  d["quad_warning"] = r.quad_warning;
  d["half_convention_ok"] = r.half_convention_ok;
  d["conservative_ok"] = r.conservative_ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "de Finetti approximations for coherent-power states";

  py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<resource_error>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<truncation_error>(m, "TruncationError", PyExc_ValueError);

  py::class_<weights::CoherentPowerState>(m, "CoherentPowerState")
      .def_readonly("n", &weights::CoherentPowerState::n)
      .def_readonly("w_max", &weights::CoherentPowerState::w_max)
      .def_readonly("c", &weights::CoherentPowerState::c)
      .def_readonly("tail_mass", &weights::CoherentPowerState::tail_mass);

  py::class_<quad::PhaseSpaceGrid>(m, "PhaseSpaceGrid")
      .def_readonly("nodes", &quad::PhaseSpaceGrid::nodes)
      .def_readonly("weights", &quad::PhaseSpaceGrid::weights)
      .def_readonly("step", &quad::PhaseSpaceGrid::step)
      .def_readonly("radius", &quad::PhaseSpaceGrid::radius)
      .def("covered_area", &quad::PhaseSpaceGrid::covered_area)
      .def("__len__", &quad::PhaseSpaceGrid::size);

  m.def(
      "coherent_amplitudes",
      [](cplx alpha, int d) { return fock::coherent_amplitudes(alpha, d).amps; },
      py::arg("alpha"), py::arg("d"));
  m.def(
      "annihilation", [](int d) { return fock::annihilation(d).entries; }, py::arg("d"));
  m.def(
      "displacement_matrix",
      [](cplx alpha, int d) { return fock::displacement_matrix(alpha, d).entries; },
      py::arg("alpha"), py::arg("d"));
  m.def("tail", &fock::tail, py::arg("alpha"), py::arg("d"));
  m.def("choose_dim", &fock::choose_dim, py::arg("alpha_max"), py::arg("tol") = 1e-14,
        py::arg("cap") = 512);

  m.def(
      "from_profile",
      [](const std::vector<std::pair<cplx, cplx>>& components, int n, int w_max) {
        return weights::from_profile(to_profile(components), n, w_max);
      },
      py::arg("components"), py::arg("n"), py::arg("w_max") = -1);
  m.def("weight_state_dense", &weights::weight_state_dense, py::arg("n"), py::arg("w"),
        py::arg("d"));
  m.def("split_amplitude", &weights::split_amplitude, py::arg("n"), py::arg("k"), py::arg("w"),
        py::arg("j"));
  m.def(
      "reduced_state",
      [](const weights::CoherentPowerState& psi, int k) { return weights::reduced_state(psi, k).mat; },
      py::arg("psi"), py::arg("k"));
  m.def("coherent_row", &weights::coherent_row, py::arg("alpha"), py::arg("m"), py::arg("w_max"));

  m.def("cartesian_grid", &quad::cartesian_grid, py::arg("center"), py::arg("radius"),
        py::arg("step"));
  m.def(
      "profile_adapted_grid",
      [](const std::vector<std::pair<cplx, cplx>>& components, int n, int k, double target_tail,
         double step) {
        return quad::profile_adapted_grid(to_profile(components), n, k, target_tail, step);
      },
      py::arg("components"), py::arg("n"), py::arg("k"), py::arg("target_tail") = 1e-10,
      py::arg("step") = 0.0);

  m.def("conditional_state",
        py::overload_cast<const weights::CoherentPowerState&, int, cplx>(&conditional_state),
        py::arg("psi"), py::arg("k"), py::arg("alpha"));
  m.def(
      "measure_nu",
      [](const weights::CoherentPowerState& psi, int k, const quad::PhaseSpaceGrid& grid) {
        const DeFinettiMeasure mu = measure_nu(psi, k, grid);
        return py::make_tuple(mu.nu, mu.total_mass);
      },
      py::arg("psi"), py::arg("k"), py::arg("grid"));
  m.def("trace_norm", &trace_norm, py::arg("m"));
  m.def(
      "verify_bound",
      [](const weights::CoherentPowerState& psi, int k, const quad::PhaseSpaceGrid& grid) {
        return report_dict(verify_bound(psi, k, grid));
      },
      py::arg("psi"), py::arg("k"), py::arg("grid"));
  m.def(
      "verify_profile",
      [](const std::vector<std::pair<cplx, cplx>>& components, int n, int k, double target_tail,
         double step, int w_max) {
        const weights::SuperpositionProfile p = to_profile(components);
        const weights::CoherentPowerState psi = weights::from_profile(p, n, w_max);
        const quad::PhaseSpaceGrid grid = quad::profile_adapted_grid(p, n, k, target_tail, step);
        return report_dict(verify_bound(psi, k, grid));
      },
      py::arg("components"), py::arg("n"), py::arg("k"), py::arg("target_tail") = 1e-10,
      py::arg("step") = 0.0, py::arg("w_max") = -1);

  m.def(
      "tensor_power",
      [](const cvec& amps, int n) {
        fock::FockVector v{static_cast<int>(amps.size()), amps};
        return oracle::tensor_power(v, n).amps;
      },
      py::arg("amps"), py::arg("n"));
  m.def(
      "partial_trace",
      [](const cmat& rho, int n, int d, int k) {
        oracle::DenseOperator op{n, d, rho, false};
        return oracle::partial_trace(op, k).mat;
      },
      py::arg("rho"), py::arg("n"), py::arg("d"), py::arg("k"));
  m.def(
      "lambda_dense",
      [](int n, int k, int d, const quad::PhaseSpaceGrid& grid) {
        return oracle::lambda_dense(n, k, d, grid).mat;
      },
      py::arg("n"), py::arg("k"), py::arg("d"), py::arg("grid"));
  m.def("commutator_check", &oracle::commutator_check, py::arg("n"), py::arg("k"),
        py::arg("alpha"), py::arg("d"), py::arg("grid"));

  m.def("gaussian_profile_components", &cli::gaussian_profile_components, py::arg("center1"),
        py::arg("center2"), py::arg("sigma"), py::arg("samples"));
}
