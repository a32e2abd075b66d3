#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prg/governor.hpp"
#include "prg/mas.hpp"
#include "prg/periodic_model.hpp"
#include "prg/polytope.hpp"
#include "prg/simulator.hpp"
#include "prg/system_io.hpp"
#include "prg/tradeoff.hpp"

namespace py = pybind11;
using namespace prg;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Periodic-invariant admissible sets and reference governors";

  py::class_<PeriodicSystem>(m, "PeriodicSystem")
      .def(py::init<>())
      .def_readwrite("period", &PeriodicSystem::period)
      .def_readwrite("a_mats", &PeriodicSystem::a_mats)
      .def_readwrite("c_mats", &PeriodicSystem::c_mats)
      .def_readwrite("s_mats", &PeriodicSystem::s_mats)
      .def_readwrite("d", &PeriodicSystem::d)
      .def_readwrite("n", &PeriodicSystem::n)
      .def_readwrite("p", &PeriodicSystem::p);

  py::class_<PlantWithInput>(m, "PlantWithInput")
      .def(py::init<>())
      .def_readwrite("period", &PlantWithInput::period)
      .def_readwrite("a_mats", &PlantWithInput::a_mats)
      .def_readwrite("b_mats", &PlantWithInput::b_mats)
      .def_readwrite("c_mats", &PlantWithInput::c_mats)
      .def_readwrite("d_mats", &PlantWithInput::d_mats)
      .def_readwrite("s_mats", &PlantWithInput::s_mats)
      .def_readwrite("n", &PlantWithInput::n)
      .def_readwrite("p", &PlantWithInput::p);

  py::class_<LiftedSystem>(m, "LiftedSystem")
      .def_readonly("phi", &LiftedSystem::phi)
      .def_readonly("c_lift", &LiftedSystem::c_lift)
      .def_readonly("s_lift", &LiftedSystem::s_lift)
      .def_readonly("slot", &LiftedSystem::slot);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("multipliers", &ValidationReport::multipliers)
      .def_readonly("stable", &ValidationReport::stable)
      .def_readonly("observable", &ValidationReport::observable)
      .def_readonly("assumption_failures", &ValidationReport::assumption_failures)
      .def("ok", &ValidationReport::ok);

  py::class_<HPolytope>(m, "HPolytope")
      .def(py::init<>())
      .def(py::init([](Eigen::MatrixXd H, Eigen::VectorXd h) {
             return HPolytope{std::move(H), std::move(h)};
           }),
           py::arg("H"), py::arg("h"))
      .def_readwrite("H", &HPolytope::H)
      .def_readwrite("h", &HPolytope::h)
      .def("rows", &HPolytope::rows)
      .def("dim", &HPolytope::dim);

  py::class_<PeriodicMas>(m, "PeriodicMas")
      .def_readonly("h0", &PeriodicMas::h0)
      .def_readonly("rhs0", &PeriodicMas::rhs0)
      .def_readonly("epsilon", &PeriodicMas::epsilon)
      .def_readonly("admissibility_index", &PeriodicMas::admissibility_index)
      .def_readonly("m", &PeriodicMas::m)
      .def("polytope", &PeriodicMas::polytope);

  py::enum_<StorageMode>(m, "StorageMode")
      .value("complete", StorageMode::complete)
      .value("partial", StorageMode::partial);

  py::class_<MasStorage>(m, "MasStorage")
      .def_readonly("mode", &MasStorage::mode)
      .def_readonly("period", &MasStorage::period)
      .def_readonly("bytes32", &MasStorage::bytes32)
      .def("slot_polytope", &MasStorage::slot_polytope);

  py::enum_<GovernorKind>(m, "GovernorKind")
      .value("none", GovernorKind::none)
      .value("f1", GovernorKind::f1)
      .value("f2", GovernorKind::f2);

  m.def("monodromy", &monodromy, py::arg("sys"), py::arg("start_slot") = 0);
  m.def("lift", &lift, py::arg("sys"), py::arg("slot") = 0);
  m.def("validate", &validate);
  m.def("augment_fixed_input", &augment_fixed_input);
  m.def("augment_periodic_input", &augment_periodic_input);
  m.def("compute_omega0", &compute_omega0, py::arg("sys"), py::arg("epsilon"),
        py::arg("max_steps") = 10000);
  m.def("expand_slot", &expand_slot);
  m.def("build_storage", &build_storage);
  m.def(
      "residual",
      [](const MasStorage& st, int slot, const Eigen::VectorXd& x_aug) {
        ResidualEval ev = residual(st, slot, x_aug);
        return py::make_tuple(ev.v_block, ev.residual);
      },
      py::arg("storage"), py::arg("slot"), py::arg("x_aug"));
  m.def("contains", &contains, py::arg("P"), py::arg("x"), py::arg("tol") = 1e-9);
  m.def("set_equal", &set_equal, py::arg("P"), py::arg("Q"), py::arg("tol") = 1e-7);
  m.def("vertices_2d", &vertices_2d);
  m.def("solve_kappa", &solve_kappa);

  py::class_<ReferenceSignal>(m, "ReferenceSignal")
      .def_static("constant", &ReferenceSignal::constant)
      .def_static("step", &ReferenceSignal::step)
      .def_static("pulse", &ReferenceSignal::pulse)
      .def_static("piecewise", &ReferenceSignal::piecewise)
      .def("value", &ReferenceSignal::value);

  py::class_<TraceStep>(m, "TraceStep")
      .def_readonly("t", &TraceStep::t)
      .def_readonly("slot", &TraceStep::slot)
      .def_readonly("r", &TraceStep::r)
      .def_readonly("kappa", &TraceStep::kappa)
      .def_readonly("v", &TraceStep::v)
      .def_readonly("x", &TraceStep::x)
      .def_readonly("y", &TraceStep::y)
      .def_readonly("min_slack", &TraceStep::min_slack)
      .def_readonly("violated", &TraceStep::violated);

  py::class_<SimulationTrace>(m, "SimulationTrace")
      .def_readonly("steps", &SimulationTrace::steps)
      .def_readonly("any_violation", &SimulationTrace::any_violation)
      .def_readonly("aborted_infeasible", &SimulationTrace::aborted_infeasible)
      .def_readonly("diagnostic", &SimulationTrace::diagnostic)
      .def_readonly("max_tracking_error", &SimulationTrace::max_tracking_error)
      .def_readonly("sum_tracking_error", &SimulationTrace::sum_tracking_error);

  m.def(
      "simulate",
      [](const PlantWithInput& plant, GovernorKind kind, const MasStorage* st,
         const ReferenceSignal& ref, int horizon, const Eigen::VectorXd& x0,
         double v_init_guess) {
        return simulate(plant, kind, st, ref, horizon, x0, v_init_guess);
      },
      py::arg("plant"), py::arg("kind"), py::arg("storage").none(true),
      py::arg("ref"), py::arg("horizon"), py::arg("x0"),
      py::arg("v_init_guess") = 0.0);
  m.def("trace_csv", &trace_csv);

  py::class_<TradeoffFormula>(m, "TradeoffFormula")
      .def_readonly("bytes_saved", &TradeoffFormula::bytes_saved)
      .def_readonly("extra_ops", &TradeoffFormula::extra_ops);
  py::class_<TradeoffReport>(m, "TradeoffReport")
      .def_readonly("N", &TradeoffReport::N)
      .def_readonly("n", &TradeoffReport::n)
      .def_readonly("m", &TradeoffReport::m)
      .def_readonly("q", &TradeoffReport::q)
      .def_readonly("formula_bytes_saved", &TradeoffReport::formula_bytes_saved)
      .def_readonly("formula_extra_ops", &TradeoffReport::formula_extra_ops)
      .def_readonly("measured_bytes_complete", &TradeoffReport::measured_bytes_complete)
      .def_readonly("measured_bytes_partial", &TradeoffReport::measured_bytes_partial)
      .def_readonly("measured_extra_ops", &TradeoffReport::measured_extra_ops)
      .def_readonly("per_slot_extra_ops", &TradeoffReport::per_slot_extra_ops);
  m.def("formula_f1", &formula_f1);
  m.def("formula_f2", &formula_f2);
  m.def("measure", &measure);

  py::class_<SystemFile>(m, "SystemFile")
      .def_readonly("is_plant", &SystemFile::is_plant)
      .def_readonly("system", &SystemFile::system)
      .def_readonly("plant", &SystemFile::plant)
      .def_readonly("epsilon", &SystemFile::epsilon)
      .def_readonly("labels", &SystemFile::labels);
  m.def("load_system_file", &load_system_file);
}
