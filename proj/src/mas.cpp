#include "prg/mas.hpp"

#include <stdexcept>
#include <string>

namespace prg {

SteadyStateMap gamma(const PeriodicSystem& sys, int slot) {
  if (sys.d < 1)
    throw std::invalid_argument("gamma: system has no constant modes (d = 0)");
  LiftedSystem lifted = lift(sys, slot);
  const int ns = sys.n - sys.d;
  Eigen::MatrixXd phi_s = lifted.phi.topLeftCorner(ns, ns);
  Eigen::MatrixXd phi_c = lifted.phi.topRightCorner(ns, sys.d);
  Eigen::MatrixXd c_s = lifted.c_lift.leftCols(ns);
  Eigen::MatrixXd c_c = lifted.c_lift.rightCols(sys.d);
  Eigen::MatrixXd eye_minus = Eigen::MatrixXd::Identity(ns, ns) - phi_s;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(eye_minus);
  if (ns > 0 && !lu.isInvertible())
    throw std::runtime_error("gamma: I - Phi_s is singular (A2 violated)");
  SteadyStateMap out;
  out.gamma.setZero(lifted.c_lift.rows(), sys.n);
  out.gamma.rightCols(sys.d) =
      (ns > 0 ? (c_s * lu.solve(phi_c) + c_c).eval() : c_c);
  out.s_lift = lifted.s_lift;
  return out;
}

PeriodicMas compute_omega(const PeriodicSystem& sys, double epsilon, int slot,
                          int max_steps) {
  ValidationReport rep = validate(sys);
  if (!rep.ok()) {
    std::string msg = "compute_omega: system failed validation:";
    for (const auto& [id, detail] : rep.assumption_failures)
      msg += " [" + id + "] " + detail + ";";
    throw std::invalid_argument(msg);
  }
  const int N = sys.period;

  HPolytope acc{Eigen::MatrixXd(0, sys.n), Eigen::VectorXd(0)};
  double eps_used = 0.0;
  if (sys.d >= 1) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("compute_omega: epsilon must be in (0,1) when d >= 1");
    eps_used = epsilon;
    SteadyStateMap ss = gamma(sys, slot);
    acc.H = ss.s_lift * ss.gamma;
    acc.h = (1.0 - epsilon) * Eigen::VectorXd::Ones(acc.H.rows());
  }

  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(sys.n, sys.n);
  int consecutive_redundant = 0;
  int jstar = -1;
  for (int t = 0; t < max_steps; ++t) {
    Eigen::MatrixXd Y = sys.S(slot + t) * sys.C(slot + t) * P;
    auto [next, appended] =
        append_nonredundant(acc, Y, Eigen::VectorXd::Ones(Y.rows()));
    acc = std::move(next);
    consecutive_redundant = appended > 0 ? 0 : consecutive_redundant + 1;
    if (consecutive_redundant == N) {
      jstar = t;
      break;
    }
    P = sys.A(slot + t) * P;
  }
  if (jstar < 0)
    throw std::runtime_error(
        "compute_omega: not finitely determined at this epsilon/horizon (cap " +
        std::to_string(max_steps) + ")");

  PeriodicMas mas;
  mas.h0 = acc.H;
  mas.rhs0 = acc.h;
  mas.epsilon = eps_used;
  mas.admissibility_index = jstar;
  mas.m = acc.rows();
  return mas;
}

HPolytope expand_slot(const PeriodicMas& mas, const PeriodicSystem& sys, int k) {
  if (k < 0 || k >= sys.period)
    throw std::invalid_argument("expand_slot: slot out of range");
  if (k == 0) return mas.polytope();
  const int N = sys.period;
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(sys.n, sys.n);
  Eigen::MatrixXd freshH(0, sys.n);
  for (int j = k; j < N; ++j) {
    Eigen::MatrixXd rows = sys.S(j) * sys.C(j) * prod;
    freshH.conservativeResize(freshH.rows() + rows.rows(), sys.n);
    freshH.bottomRows(rows.rows()) = rows;
    prod = sys.A(j) * prod;
  }
  HPolytope out;
  out.H.resize(freshH.rows() + mas.h0.rows(), sys.n);
  out.H << freshH, mas.h0 * prod;
  out.h.resize(out.H.rows());
  out.h << Eigen::VectorXd::Ones(freshH.rows()), mas.rhs0;
  return out;
}

HPolytope MasStorage::slot_polytope(int k) const {
  if (k < 0 || k >= period)
    throw std::invalid_argument("slot_polytope: slot out of range");
  if (mode == StorageMode::complete) return slots[static_cast<size_t>(k)];
  if (k == 0) return omega0;
  const Eigen::MatrixXd& F = fresh[static_cast<size_t>(k - 1)];
  const Eigen::MatrixXd& T = tail_top[static_cast<size_t>(k - 1)];
  Eigen::MatrixXd tail_full(n_aug, n_aug);
  tail_full << T, Eigen::MatrixXd::Zero(d, n_aug - d),
      Eigen::MatrixXd::Identity(d, d);
  HPolytope out;
  out.H.resize(F.rows() + omega0.H.rows(), n_aug);
  out.H << F, omega0.H * tail_full;
  out.h.resize(out.H.rows());
  out.h << Eigen::VectorXd::Ones(F.rows()), omega0.h;
  return out;
}

MasStorage build_storage(const PeriodicMas& mas, const PeriodicSystem& sys,
                         StorageMode mode) {
  MasStorage st;
  st.mode = mode;
  st.period = sys.period;
  st.n_aug = sys.n;
  st.d = sys.d;
  std::size_t floats = 0;
  if (mode == StorageMode::complete) {
    for (int k = 0; k < sys.period; ++k) {
      st.slots.push_back(expand_slot(mas, sys, k));
      floats += static_cast<std::size_t>(st.slots.back().H.size());
    }
  } else {
    st.omega0 = mas.polytope();
    floats += static_cast<std::size_t>(st.omega0.H.size());
    for (int k = 1; k < sys.period; ++k) {
      Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(sys.n, sys.n);
      Eigen::MatrixXd freshH(0, sys.n);
      for (int j = k; j < sys.period; ++j) {
        Eigen::MatrixXd rows = sys.S(j) * sys.C(j) * prod;
        freshH.conservativeResize(freshH.rows() + rows.rows(), sys.n);
        freshH.bottomRows(rows.rows()) = rows;
        prod = sys.A(j) * prod;
      }
      st.fresh.push_back(freshH);
      st.tail_top.push_back(prod.topRows(sys.n - sys.d));
      floats += static_cast<std::size_t>(freshH.size()) +
                static_cast<std::size_t>(st.tail_top.back().size());
    }
  }
  // Storage accounting follows the embedded 32-bit float convention; the
  // rhs vectors are not counted (their entries are 1 or 1-eps).
  st.bytes32 = 4 * floats;
  return st;
}

namespace {

// b_i = h_i - H_i . x for a directly stored block; per row: dim multiplies,
// dim-1 accumulating additions, one subtraction.
Eigen::VectorXd stored_block_residual(const Eigen::MatrixXd& H,
                                      const Eigen::VectorXd& h,
                                      const Eigen::VectorXd& x,
                                      OpCounter* counter) {
  if (counter) {
    counter->mul(H.rows() * H.cols());
    counter->add(H.rows() * (H.cols() - 1));
    counter->add(H.rows());
  }
  return h - H * x;
}

}  // namespace

ResidualEval residual(const MasStorage& st, int slot,
                      const Eigen::VectorXd& x_aug, OpCounter* counter) {
  if (slot < 0 || slot >= st.period)
    throw std::invalid_argument("residual: slot out of range");
  if (x_aug.size() != st.n_aug)
    throw std::invalid_argument("residual: state dimension mismatch");
  const int d = st.d;
  const int ns = st.n_state();

  if (st.mode == StorageMode::complete || slot == 0) {
    const HPolytope& P = st.mode == StorageMode::complete
                             ? st.slots[static_cast<size_t>(slot)]
                             : st.omega0;
    ResidualEval out;
    out.residual = stored_block_residual(P.H, P.h, x_aug, counter);
    out.v_block = P.H.rightCols(d);
    return out;
  }

  const Eigen::MatrixXd& F = st.fresh[static_cast<size_t>(slot - 1)];
  const Eigen::MatrixXd& T = st.tail_top[static_cast<size_t>(slot - 1)];
  const Eigen::MatrixXd& H0 = st.omega0.H;
  const int m = static_cast<int>(H0.rows());
  Eigen::VectorXd x = x_aug.head(ns);
  Eigen::VectorXd v = x_aug.tail(d);

  Eigen::VectorXd b_fresh = stored_block_residual(
      F, Eigen::VectorXd::Ones(F.rows()), x_aug, counter);

  // Propagate the plant state through the trailing product, then reuse the
  // stored H0 partition; only the state propagation and the v-column
  // reconstruction are extra work relative to complete storage.
  Eigen::MatrixXd H0x = H0.leftCols(ns);
  Eigen::MatrixXd H0v = H0.rightCols(d);
  Eigen::VectorXd w = T.leftCols(ns) * x;
  if (counter) {
    counter->mul(static_cast<std::int64_t>(ns) * ns);
    counter->add(static_cast<std::int64_t>(ns) * (ns - 1));
  }
  Eigen::MatrixXd G = H0x * T.rightCols(d) + H0v;
  if (counter) {
    counter->mul(static_cast<std::int64_t>(m) * ns * d);
    counter->add(static_cast<std::int64_t>(m) * (ns - 1) * d);
    counter->add(static_cast<std::int64_t>(m) * d);
  }
  Eigen::VectorXd b0 = st.omega0.h - (H0x * w + G * v);
  if (counter) {
    counter->mul(static_cast<std::int64_t>(m) * (ns + d));
    counter->add(static_cast<std::int64_t>(m) * (ns + d - 1));
    counter->add(m);
  }

  ResidualEval out;
  out.residual.resize(F.rows() + m);
  out.residual << b_fresh, b0;
  out.v_block.resize(F.rows() + m, d);
  out.v_block << F.rightCols(d), G;
  return out;
}

}  // namespace prg
