#ifndef PRG_LP_HPP_
#define PRG_LP_HPP_

#include <Eigen/Dense>
#include <optional>

namespace prg::lp {

enum class Status { optimal, unbounded, infeasible };

struct Outcome {
  Status status;
  double value = 0.0;                     // valid iff status == optimal
  Eigen::VectorXd point;                  // valid iff status == optimal
  std::optional<Eigen::VectorXd> dual;    // multipliers for the rows, valid iff optimal
};

// maximize c'x subject to A x <= b, x free.
// Throws std::invalid_argument on dimension mismatch and std::runtime_error
// if the iteration cap is hit (never coerced into a status).
Outcome maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                 const Eigen::VectorXd& b);

}  // namespace prg::lp

#endif  // PRG_LP_HPP_
