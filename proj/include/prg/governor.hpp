#ifndef PRG_GOVERNOR_HPP_
#define PRG_GOVERNOR_HPP_

#include <Eigen/Dense>
#include <optional>

#include "prg/mas.hpp"

namespace prg {

struct GovernorStep {
  double kappa = 1.0;                // in [0, 1]
  double v_applied = 0.0;
  std::optional<int> binding_row;    // lowest row index that determined kappa
};

struct GovernorF1State {
  double v_prev = 0.0;
};

struct GovernorF2State {
  Eigen::VectorXd v;  // (v_0, ..., v_{N-1})
};

// max{kappa in [0,1] : kappa * a_i <= b_i for all i}. Only rows with a_i > 0
// can bound kappa from above. b_i within -1e-9 of zero is clamped to zero;
// larger deficits mean the state left the admissible set and throw.
std::pair<double, std::optional<int>> solve_kappa(const Eigen::VectorXd& a,
                                                  const Eigen::VectorXd& b);

GovernorStep step_f1(GovernorF1State& st, const MasStorage& storage, int slot,
                     const Eigen::VectorXd& x, double r,
                     OpCounter* counter = nullptr);

GovernorStep step_f2(GovernorF2State& st, const MasStorage& storage, int slot,
                     const Eigen::VectorXd& x, double r,
                     OpCounter* counter = nullptr);

// Feasible initialization: v_guess if (x0, v_guess) is admissible at `slot`,
// else 0; nullopt when neither works. For F2 the value fills all N slots.
std::optional<double> initialize(const MasStorage& storage, int slot,
                                 const Eigen::VectorXd& x0, double v_guess);

}  // namespace prg

#endif  // PRG_GOVERNOR_HPP_
