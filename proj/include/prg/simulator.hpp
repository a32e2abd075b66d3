#ifndef PRG_SIMULATOR_HPP_
#define PRG_SIMULATOR_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "prg/governor.hpp"
#include "prg/mas.hpp"
#include "prg/periodic_model.hpp"

namespace prg {

enum class GovernorKind { none, f1, f2 };

struct ReferenceSignal {
  enum class Kind { constant, step, pulse, piecewise };
  Kind kind = Kind::constant;
  std::vector<double> levels;       // piecewise levels, levels[0] before the first switch
  std::vector<int> switch_times;    // strictly increasing

  static ReferenceSignal constant(double level);
  static ReferenceSignal step(double before, double after, int t_switch);
  static ReferenceSignal pulse(double base, double high, int t_up, double tail,
                               int t_down);
  static ReferenceSignal piecewise(std::vector<double> levels,
                                   std::vector<int> switch_times);

  double value(int t) const;
};

struct TraceStep {
  int t = 0;
  int slot = 0;
  double r = 0.0;
  double kappa = 1.0;
  double v = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double min_slack = 0.0;  // min over rows of 1 - S_slot y
  bool violated = false;
};

struct SimulationTrace {
  std::vector<TraceStep> steps;
  bool any_violation = false;
  bool aborted_infeasible = false;
  std::string diagnostic;
  double max_tracking_error = 0.0;  // max |v - r|
  double sum_tracking_error = 0.0;  // sum |v - r|
};

struct AuditReport {
  std::vector<int> violations;  // step indices with S_slot y > 1
  double min_slack = 0.0;
  double max_tracking_error = 0.0;
  double sum_tracking_error = 0.0;
};

// Closed-loop rollout. governor_kind == none applies v(t) = r(t) directly;
// otherwise the storage must have been built for the matching augmentation.
// A governor infeasibility fault ends the trace early with a diagnostic.
SimulationTrace simulate(const PlantWithInput& plant, GovernorKind kind,
                         const MasStorage* storage, const ReferenceSignal& ref,
                         int horizon, const Eigen::VectorXd& x0,
                         double v_init_guess = 0.0);

// Recomputes constraint satisfaction from the recorded outputs.
AuditReport audit(const PlantWithInput& plant, const SimulationTrace& trace);

std::string trace_csv(const SimulationTrace& trace);
std::string trace_svg(const PlantWithInput& plant,
                      const SimulationTrace& governed,
                      const SimulationTrace& ungoverned);

}  // namespace prg

#endif  // PRG_SIMULATOR_HPP_
