#ifndef PRG_MAS_HPP_
#define PRG_MAS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "prg/periodic_model.hpp"
#include "prg/polytope.hpp"

namespace prg {

// Steady-state output map of the lifted system: ytilde_ss = Gamma * x0.
struct SteadyStateMap {
  Eigen::MatrixXd gamma;   // N*p x n, leading n-d columns zero
  Eigen::MatrixXd s_lift;  // block-diagonal lifted S
};

// Slot-0 admissible set {x : H0 x <= rhs0} and its construction metadata.
struct PeriodicMas {
  Eigen::MatrixXd h0;
  Eigen::VectorXd rhs0;
  double epsilon = 0.0;         // 0 when d = 0
  int admissibility_index = 0;  // horizon at which the construction terminated
  int m = 0;                    // rows of h0

  HPolytope polytope() const { return {h0, rhs0}; }
};

enum class StorageMode { complete, partial };

// Counts each multiplication and each addition as one operation.
struct OpCounter {
  std::int64_t ops = 0;
  void mul(std::int64_t k) { ops += k; }
  void add(std::int64_t k) { ops += k; }
};

struct ResidualEval {
  Eigen::MatrixXd v_block;   // m_slot x d columns of H_slot acting on the v states
  Eigen::VectorXd residual;  // h_slot - H_slot * x_aug
};

// Per-slot access to the admissible sets under either storage policy.
struct MasStorage {
  StorageMode mode = StorageMode::complete;
  int period = 0;
  int n_aug = 0;  // full (augmented) state dimension
  int d = 0;      // number of constant modes
  std::size_t bytes32 = 0;

  // complete mode
  std::vector<HPolytope> slots;

  // partial mode: slot 0 plus, per slot k >= 1, the fresh constraint rows
  // (rhs 1) and the top block of the trailing state-map product
  // A_{N-1} ... A_k (the bottom [0 I_d] block is structural).
  HPolytope omega0;
  std::vector<Eigen::MatrixXd> fresh;     // index k-1, f_k x n_aug
  std::vector<Eigen::MatrixXd> tail_top;  // index k-1, (n_aug - d) x n_aug

  int n_state() const { return n_aug - d; }
  HPolytope slot_polytope(int k) const;
};

// Gamma per the triangular partition of the lifted system at `slot`.
// Requires d >= 1 and a contracting Phi_s (throws otherwise).
SteadyStateMap gamma(const PeriodicSystem& sys, int slot = 0);

// Admissible-set construction: seed with the tightened steady-state rows
// (d >= 1), then sweep the one-step constraint pullbacks slot by slot,
// keeping only rows whose support exceeds 1; stop after N consecutive
// all-redundant steps.
PeriodicMas compute_omega(const PeriodicSystem& sys, double epsilon,
                          int slot = 0, int max_steps = 10000);

inline PeriodicMas compute_omega0(const PeriodicSystem& sys, double epsilon,
                                  int max_steps = 10000) {
  return compute_omega(sys, epsilon, 0, max_steps);
}

// Slot-k set from the slot-0 one: fresh rows S_k C_k, S_{k+1} C_{k+1} A_k, ...
// followed by H0 * (A_{N-1} ... A_k); rhs 1's followed by rhs0.
HPolytope expand_slot(const PeriodicMas& mas, const PeriodicSystem& sys, int k);

MasStorage build_storage(const PeriodicMas& mas, const PeriodicSystem& sys,
                         StorageMode mode);

// h_slot - H_slot * x_aug together with the v-columns of H_slot, computed
// per the storage policy. With a counter attached, every multiplication and
// addition on the evaluation path is tallied.
ResidualEval residual(const MasStorage& st, int slot,
                      const Eigen::VectorXd& x_aug, OpCounter* counter = nullptr);

}  // namespace prg

#endif  // PRG_MAS_HPP_
