#include <doctest.h>

#include <algorithm>

#include "prg/simulator.hpp"
#include "prg/tradeoff.hpp"
#include "support/demo_systems.hpp"

using namespace prg;

namespace {

MasStorage storage_for(GovernorKind kind, StorageMode mode) {
  PeriodicSystem aug = kind == GovernorKind::f2
                           ? augment_periodic_input(demo::periodic3_plant())
                           : augment_fixed_input(demo::periodic3_plant());
  return build_storage(compute_omega0(aug, 0.05), aug, mode);
}

ReferenceSignal demand_pulse() {
  return ReferenceSignal::pulse(0.0, 0.15, 10, 0.05, 26);
}

}  // namespace

TEST_CASE("reference signal shapes") {
  ReferenceSignal c = ReferenceSignal::constant(0.3);
  CHECK(c.value(0) == 0.3);
  CHECK(c.value(999) == 0.3);

  ReferenceSignal s = ReferenceSignal::step(-1.0, 2.0, 5);
  CHECK(s.value(4) == -1.0);
  CHECK(s.value(5) == 2.0);

  ReferenceSignal p = demand_pulse();
  CHECK(p.value(9) == 0.0);
  CHECK(p.value(10) == 0.15);
  CHECK(p.value(25) == 0.15);
  CHECK(p.value(26) == 0.05);

  CHECK_THROWS_AS(ReferenceSignal::pulse(0, 1, 8, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(ReferenceSignal::piecewise({1.0}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(ReferenceSignal::piecewise({1.0, 2.0, 3.0}, {4, 4}),
                  std::invalid_argument);
}

TEST_CASE("zero reference keeps the plant at the origin") {
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  SimulationTrace tr = simulate(demo::periodic3_plant(), GovernorKind::f1, &st,
                                ReferenceSignal::constant(0.0), 30,
                                Eigen::VectorXd::Zero(2));
  REQUIRE_FALSE(tr.aborted_infeasible);
  for (const TraceStep& s : tr.steps) {
    CHECK(s.kappa == 1.0);
    CHECK(s.v == 0.0);
    CHECK(s.x.lpNorm<Eigen::Infinity>() == 0.0);
  }
  CHECK(tr.sum_tracking_error == 0.0);
}

TEST_CASE("demanding pulse: raw reference violates, governed runs do not") {
  PlantWithInput pl = demo::periodic3_plant();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
  SimulationTrace raw = simulate(pl, GovernorKind::none, nullptr, demand_pulse(), 60, x0);
  CHECK(raw.any_violation);
  CHECK(audit(pl, raw).violations.size() > 0);

  for (GovernorKind kind : {GovernorKind::f1, GovernorKind::f2}) {
    for (StorageMode mode : {StorageMode::complete, StorageMode::partial}) {
      MasStorage st = storage_for(kind, mode);
      SimulationTrace tr = simulate(pl, kind, &st, demand_pulse(), 60, x0);
      REQUIRE_FALSE(tr.aborted_infeasible);
      CHECK_FALSE(tr.any_violation);
      AuditReport rep = audit(pl, tr);
      CHECK(rep.violations.empty());
      CHECK(rep.min_slack >= -1e-9);
      CHECK(rep.sum_tracking_error == doctest::Approx(tr.sum_tracking_error));
      // The command settles on the reference once it becomes reachable.
      CHECK(tr.steps.back().kappa == 1.0);
      CHECK(tr.steps.back().v == doctest::Approx(0.05).epsilon(1e-9));
    }
  }
}

TEST_CASE("storage mode does not change the closed loop") {
  PlantWithInput pl = demo::periodic3_plant();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
  for (GovernorKind kind : {GovernorKind::f1, GovernorKind::f2}) {
    MasStorage complete = storage_for(kind, StorageMode::complete);
    MasStorage partial = storage_for(kind, StorageMode::partial);
    SimulationTrace tc = simulate(pl, kind, &complete, demand_pulse(), 60, x0);
    SimulationTrace tp = simulate(pl, kind, &partial, demand_pulse(), 60, x0);
    REQUIRE(tc.steps.size() == tp.steps.size());
    for (size_t i = 0; i < tc.steps.size(); ++i) {
      CHECK(tc.steps[i].v == doctest::Approx(tp.steps[i].v).epsilon(1e-10));
      CHECK((tc.steps[i].x - tp.steps[i].x).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
}

TEST_CASE("repeated runs are bit-identical") {
  PlantWithInput pl = demo::periodic3_plant();
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
  SimulationTrace a = simulate(pl, GovernorKind::f1, &st, demand_pulse(), 60, x0);
  SimulationTrace b = simulate(pl, GovernorKind::f1, &st, demand_pulse(), 60, x0);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].v == b.steps[i].v);
    CHECK(a.steps[i].kappa == b.steps[i].kappa);
    CHECK((a.steps[i].x - b.steps[i].x).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("while kappa stays at one the governor is transparent") {
  PlantWithInput pl = demo::periodic3_plant();
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  ReferenceSignal mild = ReferenceSignal::constant(0.02);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
  SimulationTrace gov = simulate(pl, GovernorKind::f1, &st, mild, 40, x0);
  SimulationTrace raw = simulate(pl, GovernorKind::none, nullptr, mild, 40, x0);
  REQUIRE_FALSE(gov.aborted_infeasible);
  for (size_t i = 0; i < gov.steps.size(); ++i) {
    if (gov.steps[i].kappa < 1.0) break;
    CHECK(gov.steps[i].v == doctest::Approx(raw.steps[i].v));
    CHECK((gov.steps[i].x - raw.steps[i].x).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("audit flags a doctored trace") {
  PlantWithInput pl = demo::periodic3_plant();
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  SimulationTrace tr = simulate(pl, GovernorKind::f1, &st, demand_pulse(), 30,
                                Eigen::VectorXd::Zero(2));
  REQUIRE(audit(pl, tr).violations.empty());
  tr.steps[7].y(0) = 5.0;  // beyond every slot's bound
  AuditReport rep = audit(pl, tr);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0] == 7);
  CHECK(rep.min_slack < 0.0);
}

TEST_CASE("infeasible start is reported, not thrown") {
  PlantWithInput pl = demo::periodic3_plant();
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  Eigen::VectorXd far = Eigen::VectorXd::Constant(2, 50.0);
  SimulationTrace tr = simulate(pl, GovernorKind::f1, &st, demand_pulse(), 30, far);
  CHECK(tr.aborted_infeasible);
  CHECK_FALSE(tr.diagnostic.empty());
  CHECK(tr.steps.empty());
}

TEST_CASE("csv and svg renderings carry the trace") {
  PlantWithInput pl = demo::periodic3_plant();
  MasStorage st = storage_for(GovernorKind::f1, StorageMode::complete);
  SimulationTrace gov = simulate(pl, GovernorKind::f1, &st, demand_pulse(), 20,
                                 Eigen::VectorXd::Zero(2));
  SimulationTrace raw = simulate(pl, GovernorKind::none, nullptr, demand_pulse(), 20,
                                 Eigen::VectorXd::Zero(2));
  std::string csv = trace_csv(gov);
  CHECK(csv.find("t,slot,r,kappa,v,x_1,x_2,y_1,min_slack,violated") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
  std::string svg = trace_svg(pl, gov, raw);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("stroke=\"blue\"") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}
