#include "prg/governor.hpp"

#include <stdexcept>

namespace prg {

namespace {
constexpr double kPosTol = 1e-12;
constexpr double kFeasTol = 1e-9;
}  // namespace

std::pair<double, std::optional<int>> solve_kappa(const Eigen::VectorXd& a,
                                                  const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("solve_kappa: length mismatch");
  double kappa = 1.0;
  std::optional<int> binding;
  for (int i = 0; i < a.size(); ++i) {
    double bi = b(i);
    if (bi < -kFeasTol)
      throw std::runtime_error(
          "solve_kappa: negative slack at row " + std::to_string(i) +
          " (state left the admissible set)");
    if (bi < 0.0) bi = 0.0;
    if (a(i) <= kPosTol) continue;  // row cannot bound kappa from above
    double gamma = bi / a(i);
    if (gamma < kappa) {
      kappa = gamma;
      binding = i;
    }
  }
  return {kappa, binding};
}

GovernorStep step_f1(GovernorF1State& st, const MasStorage& storage, int slot,
                     const Eigen::VectorXd& x, double r, OpCounter* counter) {
  if (storage.d != 1)
    throw std::invalid_argument("step_f1: storage must carry a single constant input state");
  Eigen::VectorXd x_aug(storage.n_aug);
  x_aug << x, st.v_prev;
  ResidualEval ev = residual(storage, slot, x_aug, counter);
  Eigen::VectorXd a = (r - st.v_prev) * ev.v_block.col(0);
  auto [kappa, binding] = solve_kappa(a, ev.residual);
  st.v_prev += kappa * (r - st.v_prev);
  return {kappa, st.v_prev, binding};
}

GovernorStep step_f2(GovernorF2State& st, const MasStorage& storage, int slot,
                     const Eigen::VectorXd& x, double r, OpCounter* counter) {
  if (storage.d != st.v.size())
    throw std::invalid_argument("step_f2: storage/state dimension mismatch");
  Eigen::VectorXd x_aug(storage.n_aug);
  x_aug << x, st.v;
  ResidualEval ev = residual(storage, slot, x_aug, counter);
  double v_tau = st.v(slot);
  Eigen::VectorXd a = (r - v_tau) * ev.v_block.col(slot);
  auto [kappa, binding] = solve_kappa(a, ev.residual);
  st.v(slot) = v_tau + kappa * (r - v_tau);
  return {kappa, st.v(slot), binding};
}

std::optional<double> initialize(const MasStorage& storage, int slot,
                                 const Eigen::VectorXd& x0, double v_guess) {
  HPolytope P = storage.slot_polytope(slot);
  for (double v : {v_guess, 0.0}) {
    Eigen::VectorXd x_aug(storage.n_aug);
    x_aug << x0, Eigen::VectorXd::Constant(storage.d, v);
    if (contains(P, x_aug, kFeasTol)) return v;
    if (v_guess == 0.0) break;
  }
  return std::nullopt;
}

}  // namespace prg
