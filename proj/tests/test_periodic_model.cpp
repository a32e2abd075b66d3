#include <doctest.h>

#include <algorithm>
#include <random>

#include "prg/mas.hpp"
#include "prg/periodic_model.hpp"
#include "support/demo_systems.hpp"

using namespace prg;

namespace {

// One period of raw simulation from x0 starting at `slot`, outputs stacked.
Eigen::VectorXd simulate_period(const PeriodicSystem& sys, int slot,
                                const Eigen::VectorXd& x0) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(sys.period) * sys.p);
  Eigen::VectorXd x = x0;
  for (int i = 0; i < sys.period; ++i) {
    y.segment(static_cast<Eigen::Index>(i) * sys.p, sys.p) = sys.C(slot + i) * x;
    x = sys.A(slot + i) * x;
  }
  return y;
}

std::vector<double> sorted_multiplier_magnitudes(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  std::vector<double> mags;
  for (int i = 0; i < M.rows(); ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(mags.begin(), mags.end());
  return mags;
}

}  // namespace

TEST_CASE("monodromy of the three-slot system") {
  PeriodicSystem sys = demo::periodic3();
  Eigen::MatrixXd phi = monodromy(sys, 0);
  Eigen::MatrixXd expected(2, 2);
  expected << -0.16, -0.8, 0.64, -0.8;
  CHECK((phi - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("monodromy of the identity system") {
  PeriodicSystem sys = demo::scalar_system(1.0);
  sys.n = 2;
  sys.a_mats = {Eigen::MatrixXd::Identity(2, 2)};
  sys.c_mats = {Eigen::MatrixXd::Ones(1, 2)};
  CHECK(monodromy(sys, 0) == Eigen::MatrixXd::Identity(2, 2));
}

TEST_CASE("characteristic multipliers do not depend on the start slot") {
  PeriodicSystem sys = demo::periodic3();
  auto mags0 = sorted_multiplier_magnitudes(monodromy(sys, 0));
  for (int slot = 1; slot < sys.period; ++slot) {
    auto mags = sorted_multiplier_magnitudes(monodromy(sys, slot));
    for (size_t i = 0; i < mags.size(); ++i)
      CHECK(std::abs(mags[i] - mags0[i]) < 1e-10);
  }
}

TEST_CASE("lift structure") {
  PeriodicSystem sys = demo::periodic3();
  LiftedSystem lifted = lift(sys, 0);
  CHECK(lifted.c_lift.rows() == 3);
  CHECK((lifted.c_lift.row(0) - sys.C(0)).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK((lifted.c_lift.row(1) - sys.C(1) * sys.A(0)).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK((lifted.c_lift.row(2) - sys.C(2) * sys.A(1) * sys.A(0))
            .lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK(lifted.s_lift.rows() == 6);
  CHECK(lifted.s_lift.block(2, 1, 2, 1) == sys.S(1));

  PeriodicSystem single = demo::scalar_system(0.5);
  LiftedSystem l1 = lift(single, 0);
  CHECK(l1.phi == single.A(0));
  CHECK(l1.c_lift == single.C(0));
}

TEST_CASE("lift reproduces one period of simulation at every slot") {
  PeriodicSystem sys = demo::periodic3();
  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int slot = 0; slot < sys.period; ++slot) {
    LiftedSystem lifted = lift(sys, slot);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x0(sys.n);
      for (int i = 0; i < sys.n; ++i) x0(i) = g(rng);
      Eigen::VectorXd direct = simulate_period(sys, slot, x0);
      CHECK((direct - lifted.c_lift * x0).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}

TEST_CASE("validate the three-slot system") {
  ValidationReport rep = validate(demo::periodic3());
  CHECK(rep.stable);
  CHECK(rep.observable);
  CHECK(rep.ok());
  for (const auto& lam : rep.multipliers)
    CHECK(std::abs(lam) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("validate a scalar unstable system") {
  ValidationReport rep = validate(demo::scalar_system(2.0));
  CHECK_FALSE(rep.stable);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("validate catches a broken constant-mode block") {
  PeriodicSystem sys = augment_fixed_input(demo::periodic3_plant());
  sys.a_mats[1](2, 0) = 0.3;  // breaks the [0 I_d] bottom rows
  ValidationReport rep = validate(sys);
  bool a1 = false;
  for (const auto& [id, detail] : rep.assumption_failures) a1 = a1 || id == "A1";
  CHECK(a1);
}

TEST_CASE("validate catches an unbounded output constraint set") {
  PeriodicSystem sys = demo::scalar_system(0.5);
  sys.s_mats[0] = Eigen::MatrixXd::Ones(1, 1);  // y <= 1 only, no lower bound
  ValidationReport rep = validate(sys);
  bool a4 = false;
  for (const auto& [id, detail] : rep.assumption_failures) a4 = a4 || id == "A4";
  CHECK(a4);
}

TEST_CASE("fixed-input augmentation") {
  PlantWithInput plant = demo::periodic3_plant();
  PeriodicSystem aug = augment_fixed_input(plant);
  CHECK(aug.n == 3);
  CHECK(aug.d == 1);
  for (int k = 0; k < 3; ++k) {
    CHECK(aug.A(k).row(2) == Eigen::RowVector3d(0, 0, 1));
    CHECK(aug.A(k).topRightCorner(2, 1) == plant.b_mats[static_cast<size_t>(k)]);
  }
  CHECK(validate(aug).ok());

  // Augmented rollout equals the plant under constant input.
  std::mt19937 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(2);
    x << g(rng), g(rng);
    double v = g(rng);
    Eigen::Vector3d xa;
    xa << x, v;
    for (int t = 0; t < 12; ++t) {
      const size_t k = static_cast<size_t>(t % 3);
      Eigen::VectorXd y_plant = plant.c_mats[k] * x + plant.d_mats[k] * v;
      Eigen::VectorXd y_aug = aug.C(t) * xa;
      CHECK((y_plant - y_aug).lpNorm<Eigen::Infinity>() < 1e-12);
      x = plant.a_mats[k] * x + plant.b_mats[k] * v;
      xa = aug.A(t) * xa;
    }
  }
}

TEST_CASE("periodic-input augmentation") {
  PlantWithInput plant = demo::periodic3_plant();
  PeriodicSystem aug = augment_periodic_input(plant);
  CHECK(aug.n == 5);
  CHECK(aug.d == 3);
  CHECK(aug.A(0).block(0, 2, 2, 1) == plant.b_mats[0]);
  CHECK(aug.A(0).block(0, 3, 2, 2).isZero(0.0));
  CHECK(aug.A(1).block(0, 3, 2, 1) == plant.b_mats[1]);
  for (int k = 0; k < 3; ++k)
    CHECK(aug.A(k).bottomRightCorner(3, 3) == Eigen::MatrixXd::Identity(3, 3));
  CHECK(validate(aug).ok());

  // Rollout equals the plant with v(t) = v_{mod(t,N)} held per slot.
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(2), vs(3);
    x << g(rng), g(rng);
    vs << g(rng), g(rng), g(rng);
    Eigen::VectorXd xa(5);
    xa << x, vs;
    for (int t = 0; t < 12; ++t) {
      const size_t k = static_cast<size_t>(t % 3);
      Eigen::VectorXd y_plant = plant.c_mats[k] * x + plant.d_mats[k] * vs(t % 3);
      CHECK((y_plant - aug.C(t) * xa).lpNorm<Eigen::Infinity>() < 1e-12);
      x = plant.a_mats[k] * x + plant.b_mats[k] * vs(t % 3);
      xa = aug.A(t) * xa;
    }
  }
}

TEST_CASE("single-slot periodic-input augmentation collapses to fixed input") {
  PlantWithInput plant = demo::scalar_plant(0.5, 1.0);
  PeriodicSystem a = augment_fixed_input(plant);
  PeriodicSystem b = augment_periodic_input(plant);
  CHECK(a.A(0) == b.A(0));
  CHECK(a.C(0) == b.C(0));
  CHECK(a.d == b.d);
}
