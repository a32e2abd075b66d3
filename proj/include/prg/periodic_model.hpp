#ifndef PRG_PERIODIC_MODEL_HPP_
#define PRG_PERIODIC_MODEL_HPP_

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace prg {

// Discrete-time linear N-periodic system x(t+1) = A_k x(t), y(t) = C_k x(t),
// with per-slot output constraints {y : S_k y <= 1}. The trailing d states
// are constant modes (bottom-right identity block of every A_k).
struct PeriodicSystem {
  int period = 0;
  std::vector<Eigen::MatrixXd> a_mats;  // N of n x n
  std::vector<Eigen::MatrixXd> c_mats;  // N of p x n
  std::vector<Eigen::MatrixXd> s_mats;  // N of q_k x p
  int d = 0;
  int n = 0;
  int p = 0;

  int q(int t) const { return static_cast<int>(S(t).rows()); }
  const Eigen::MatrixXd& A(int t) const { return a_mats[static_cast<size_t>(t % period)]; }
  const Eigen::MatrixXd& C(int t) const { return c_mats[static_cast<size_t>(t % period)]; }
  const Eigen::MatrixXd& S(int t) const { return s_mats[static_cast<size_t>(t % period)]; }
};

// Single-input closed-loop plant x(t+1) = A_k x + B_k v, y = C_k x + D_k v.
struct PlantWithInput {
  int period = 0;
  std::vector<Eigen::MatrixXd> a_mats;  // n x n
  std::vector<Eigen::VectorXd> b_mats;  // n
  std::vector<Eigen::MatrixXd> c_mats;  // p x n
  std::vector<Eigen::VectorXd> d_mats;  // p (feedthrough)
  std::vector<Eigen::MatrixXd> s_mats;  // q_k x p
  int n = 0;
  int p = 0;
};

struct LiftedSystem {
  Eigen::MatrixXd phi;     // monodromy at `slot`
  Eigen::MatrixXd c_lift;  // N*p x n stacked output map
  Eigen::MatrixXd s_lift;  // block diagonal S_slot, S_{slot+1}, ...
  int slot = 0;
};

struct ValidationReport {
  std::vector<std::complex<double>> multipliers;  // eigenvalues of Phi_s (Phi when d=0)
  bool stable = false;
  bool observable = false;
  std::vector<std::pair<std::string, std::string>> assumption_failures;

  bool ok() const { return assumption_failures.empty(); }
};

// Phi(start_slot+N, start_slot) = A_{start_slot+N-1} ... A_{start_slot}.
Eigen::MatrixXd monodromy(const PeriodicSystem& sys, int start_slot);

LiftedSystem lift(const PeriodicSystem& sys, int slot);

// Checks the constant-mode block form (A1), spectral radius of Phi_s (A2),
// observability of the lifted pair (A3), and boundedness of each output
// constraint set (A4). Failures are collected, not thrown.
ValidationReport validate(const PeriodicSystem& sys);

/// Constant-input augmentation: state (x, v), v(t+1) = v(t). d becomes 1.
PeriodicSystem augment_fixed_input(const PlantWithInput& plant);

/// Per-slot-input augmentation: state (x, v_0..v_{N-1}); slot k routes the
// input column to v_k. d becomes N.
PeriodicSystem augment_periodic_input(const PlantWithInput& plant);

}  // namespace prg

#endif  // PRG_PERIODIC_MODEL_HPP_
