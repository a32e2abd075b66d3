#include "prg/periodic_model.hpp"

#include <stdexcept>

#include "prg/lp.hpp"

namespace prg {

namespace {

constexpr double kStabilityTol = 1e-9;

void check_well_formed(const PeriodicSystem& sys) {
  if (sys.period < 1 || sys.n < 1 || sys.p < 1)
    throw std::invalid_argument("periodic system: N, n, p must be >= 1");
  if (static_cast<int>(sys.a_mats.size()) != sys.period ||
      static_cast<int>(sys.c_mats.size()) != sys.period ||
      static_cast<int>(sys.s_mats.size()) != sys.period)
    throw std::invalid_argument("periodic system: need N matrices of each kind");
  for (int k = 0; k < sys.period; ++k) {
    if (sys.A(k).rows() != sys.n || sys.A(k).cols() != sys.n)
      throw std::invalid_argument("periodic system: A_k must be n x n");
    if (sys.C(k).rows() != sys.p || sys.C(k).cols() != sys.n)
      throw std::invalid_argument("periodic system: C_k must be p x n");
    if (sys.S(k).cols() != sys.p)
      throw std::invalid_argument("periodic system: S_k must have p columns");
  }
  if (sys.d < 0 || sys.d > sys.n)
    throw std::invalid_argument("periodic system: d out of range");
}

}  // namespace

Eigen::MatrixXd monodromy(const PeriodicSystem& sys, int start_slot) {
  check_well_formed(sys);
  if (start_slot < 0 || start_slot >= sys.period)
    throw std::invalid_argument("monodromy: start_slot out of range");
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(sys.n, sys.n);
  for (int i = 0; i < sys.period; ++i) phi = sys.A(start_slot + i) * phi;
  return phi;
}

LiftedSystem lift(const PeriodicSystem& sys, int slot) {
  check_well_formed(sys);
  if (slot < 0 || slot >= sys.period)
    throw std::invalid_argument("lift: slot out of range");
  const int N = sys.period;
  LiftedSystem out;
  out.slot = slot;
  out.phi = monodromy(sys, slot);
  out.c_lift.setZero(static_cast<Eigen::Index>(N) * sys.p, sys.n);
  int qtot = 0;
  for (int i = 0; i < N; ++i) qtot += sys.q((slot + i) % N);
  out.s_lift.setZero(qtot, static_cast<Eigen::Index>(N) * sys.p);
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(sys.n, sys.n);
  int srow = 0;
  for (int i = 0; i < N; ++i) {
    out.c_lift.middleRows(static_cast<Eigen::Index>(i) * sys.p, sys.p) =
        sys.C(slot + i) * prod;
    int qi = sys.q(slot + i);
    out.s_lift.block(srow, static_cast<Eigen::Index>(i) * sys.p, qi, sys.p) =
        sys.S(slot + i);
    srow += qi;
    prod = sys.A(slot + i) * prod;
  }
  return out;
}

ValidationReport validate(const PeriodicSystem& sys) {
  check_well_formed(sys);
  ValidationReport rep;
  const int N = sys.period;
  const int ns = sys.n - sys.d;

  // A1: constant-mode block structure of every A_k.
  if (sys.d >= 1) {
    for (int k = 0; k < N; ++k) {
      Eigen::MatrixXd bottom = sys.A(k).bottomRows(sys.d);
      Eigen::MatrixXd expected(sys.d, sys.n);
      expected << Eigen::MatrixXd::Zero(sys.d, ns),
          Eigen::MatrixXd::Identity(sys.d, sys.d);
      if ((bottom - expected).lpNorm<Eigen::Infinity>() > 1e-12) {
        rep.assumption_failures.emplace_back(
            "A1", "A_" + std::to_string(k) +
                      " bottom rows are not [0 I_d] within 1e-12");
        break;
      }
    }
  }

  // A2: spectral radius of the contracting block of the monodromy matrix.
  LiftedSystem lifted = lift(sys, 0);
  Eigen::MatrixXd phi_s = lifted.phi.topLeftCorner(ns, ns);
  if (ns > 0) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(phi_s);
    for (int i = 0; i < ns; ++i) rep.multipliers.push_back(es.eigenvalues()(i));
  }
  double rho = 0.0;
  for (const auto& lam : rep.multipliers) rho = std::max(rho, std::abs(lam));
  rep.stable = rho < 1.0 - kStabilityTol;
  if (!rep.stable) {
    std::string detail = "spectral radius of Phi_s is " + std::to_string(rho);
    if (rho < 1.0 + kStabilityTol) detail += " (marginal, treat as unit)";
    rep.assumption_failures.emplace_back("A2", detail);
  }

  // A3: observability of (C, Phi) via the n-step observability matrix.
  Eigen::MatrixXd obs(static_cast<Eigen::Index>(sys.n) * lifted.c_lift.rows(), sys.n);
  Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(sys.n, sys.n);
  for (int i = 0; i < sys.n; ++i) {
    obs.middleRows(static_cast<Eigen::Index>(i) * lifted.c_lift.rows(),
                   lifted.c_lift.rows()) = lifted.c_lift * pw;
    pw = pw * lifted.phi;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(obs);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * smax) ++rank;
  rep.observable = rank == sys.n;
  if (!rep.observable)
    rep.assumption_failures.emplace_back(
        "A3", "observability matrix rank " + std::to_string(rank) + " < n = " +
                  std::to_string(sys.n));

  // A4: every Y_k bounded, via finite coordinate supports.
  for (int k = 0; k < N; ++k) {
    bool bounded = true;
    for (int i = 0; i < sys.p && bounded; ++i) {
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(sys.p);
        dir(i) = s;
        lp::Outcome o =
            lp::maximize(dir, sys.S(k), Eigen::VectorXd::Ones(sys.q(k)));
        if (o.status != lp::Status::optimal) {
          bounded = false;
          break;
        }
      }
    }
    if (!bounded)
      rep.assumption_failures.emplace_back(
          "A4", "Y_" + std::to_string(k) + " is unbounded");
  }
  return rep;
}

namespace {

void check_plant(const PlantWithInput& plant) {
  if (plant.period < 1 || plant.n < 1 || plant.p < 1)
    throw std::invalid_argument("plant: N, n, p must be >= 1");
  const size_t N = static_cast<size_t>(plant.period);
  if (plant.a_mats.size() != N || plant.b_mats.size() != N ||
      plant.c_mats.size() != N || plant.d_mats.size() != N ||
      plant.s_mats.size() != N)
    throw std::invalid_argument("plant: need N matrices of each kind");
  for (size_t k = 0; k < N; ++k) {
    if (plant.a_mats[k].rows() != plant.n || plant.a_mats[k].cols() != plant.n ||
        plant.b_mats[k].size() != plant.n ||
        plant.c_mats[k].rows() != plant.p || plant.c_mats[k].cols() != plant.n ||
        plant.d_mats[k].size() != plant.p || plant.s_mats[k].cols() != plant.p)
      throw std::invalid_argument("plant: dimension mismatch in slot " +
                                  std::to_string(k));
  }
}

}  // namespace

PeriodicSystem augment_fixed_input(const PlantWithInput& plant) {
  check_plant(plant);
  PeriodicSystem sys;
  sys.period = plant.period;
  sys.n = plant.n + 1;
  sys.p = plant.p;
  sys.d = 1;
  for (int k = 0; k < plant.period; ++k) {
    const size_t kk = static_cast<size_t>(k);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(sys.n, sys.n);
    A.topLeftCorner(plant.n, plant.n) = plant.a_mats[kk];
    A.topRightCorner(plant.n, 1) = plant.b_mats[kk];
    A(plant.n, plant.n) = 1.0;
    Eigen::MatrixXd C(plant.p, sys.n);
    C << plant.c_mats[kk], plant.d_mats[kk];
    sys.a_mats.push_back(A);
    sys.c_mats.push_back(C);
    sys.s_mats.push_back(plant.s_mats[kk]);
  }
  return sys;
}

PeriodicSystem augment_periodic_input(const PlantWithInput& plant) {
  check_plant(plant);
  const int N = plant.period;
  PeriodicSystem sys;
  sys.period = N;
  sys.n = plant.n + N;
  sys.p = plant.p;
  sys.d = N;
  for (int k = 0; k < N; ++k) {
    const size_t kk = static_cast<size_t>(k);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(sys.n, sys.n);
    A.topLeftCorner(plant.n, plant.n) = plant.a_mats[kk];
    A.block(0, plant.n + k, plant.n, 1) = plant.b_mats[kk];
    A.bottomRightCorner(N, N) = Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(plant.p, sys.n);
    C.leftCols(plant.n) = plant.c_mats[kk];
    C.col(plant.n + k) = plant.d_mats[kk];
    sys.a_mats.push_back(A);
    sys.c_mats.push_back(C);
    sys.s_mats.push_back(plant.s_mats[kk]);
  }
  return sys;
}

}  // namespace prg
