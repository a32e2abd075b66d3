#include "prg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace prg {

ReferenceSignal ReferenceSignal::constant(double level) {
  ReferenceSignal r;
  r.kind = Kind::constant;
  r.levels = {level};
  return r;
}

ReferenceSignal ReferenceSignal::step(double before, double after, int t_switch) {
  ReferenceSignal r;
  r.kind = Kind::step;
  r.levels = {before, after};
  r.switch_times = {t_switch};
  return r;
}

ReferenceSignal ReferenceSignal::pulse(double base, double high, int t_up,
                                       double tail, int t_down) {
  if (t_down <= t_up)
    throw std::invalid_argument("pulse: switch times must be strictly increasing");
  ReferenceSignal r;
  r.kind = Kind::pulse;
  r.levels = {base, high, tail};
  r.switch_times = {t_up, t_down};
  return r;
}

ReferenceSignal ReferenceSignal::piecewise(std::vector<double> levels,
                                           std::vector<int> switch_times) {
  if (levels.size() != switch_times.size() + 1)
    throw std::invalid_argument("piecewise: need one more level than switch time");
  for (size_t i = 1; i < switch_times.size(); ++i)
    if (switch_times[i] <= switch_times[i - 1])
      throw std::invalid_argument("piecewise: switch times must be strictly increasing");
  ReferenceSignal r;
  r.kind = Kind::piecewise;
  r.levels = std::move(levels);
  r.switch_times = std::move(switch_times);
  return r;
}

double ReferenceSignal::value(int t) const {
  size_t idx = 0;
  while (idx < switch_times.size() && t >= switch_times[idx]) ++idx;
  return levels[idx];
}

SimulationTrace simulate(const PlantWithInput& plant, GovernorKind kind,
                         const MasStorage* storage, const ReferenceSignal& ref,
                         int horizon, const Eigen::VectorXd& x0,
                         double v_init_guess) {
  if (x0.size() != plant.n)
    throw std::invalid_argument("simulate: x0 dimension mismatch");
  const int N = plant.period;
  SimulationTrace trace;

  GovernorF1State f1;
  GovernorF2State f2;
  if (kind != GovernorKind::none) {
    if (storage == nullptr)
      throw std::invalid_argument("simulate: governed run needs storage");
    std::optional<double> v0 = initialize(*storage, 0, x0, v_init_guess);
    if (!v0) {
      trace.aborted_infeasible = true;
      trace.diagnostic = "no feasible initial reference for x0";
      return trace;
    }
    f1.v_prev = *v0;
    f2.v = Eigen::VectorXd::Constant(N, *v0);
  }

  Eigen::VectorXd x = x0;
  for (int t = 0; t < horizon; ++t) {
    const int slot = t % N;
    const size_t ks = static_cast<size_t>(slot);
    TraceStep step;
    step.t = t;
    step.slot = slot;
    step.r = ref.value(t);
    try {
      switch (kind) {
        case GovernorKind::none:
          step.v = step.r;
          step.kappa = 1.0;
          break;
        case GovernorKind::f1: {
          GovernorStep g = step_f1(f1, *storage, slot, x, step.r);
          step.v = g.v_applied;
          step.kappa = g.kappa;
          break;
        }
        case GovernorKind::f2: {
          GovernorStep g = step_f2(f2, *storage, slot, x, step.r);
          step.v = g.v_applied;
          step.kappa = g.kappa;
          break;
        }
      }
    } catch (const std::runtime_error& e) {
      trace.aborted_infeasible = true;
      trace.diagnostic = e.what();
      return trace;
    }
    step.x = x;
    step.y = plant.c_mats[ks] * x + plant.d_mats[ks] * step.v;
    Eigen::VectorXd slack =
        Eigen::VectorXd::Ones(plant.s_mats[ks].rows()) - plant.s_mats[ks] * step.y;
    step.min_slack = slack.size() ? slack.minCoeff() : std::numeric_limits<double>::infinity();
    step.violated = step.min_slack < -1e-9;
    trace.any_violation = trace.any_violation || step.violated;
    trace.max_tracking_error = std::max(trace.max_tracking_error, std::abs(step.v - step.r));
    trace.sum_tracking_error += std::abs(step.v - step.r);
    trace.steps.push_back(step);
    x = plant.a_mats[ks] * x + plant.b_mats[ks] * step.v;
  }
  return trace;
}

AuditReport audit(const PlantWithInput& plant, const SimulationTrace& trace) {
  AuditReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    const Eigen::MatrixXd& S = plant.s_mats[static_cast<size_t>(s.slot)];
    Eigen::VectorXd g = S * s.y;
    double slack = 1.0 - (g.size() ? g.maxCoeff() : 0.0);
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -1e-9) rep.violations.push_back(static_cast<int>(i));
    rep.max_tracking_error = std::max(rep.max_tracking_error, std::abs(s.v - s.r));
    rep.sum_tracking_error += std::abs(s.v - s.r);
  }
  return rep;
}

std::string trace_csv(const SimulationTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,slot,r,kappa,v";
  if (!trace.steps.empty()) {
    for (int i = 0; i < trace.steps[0].x.size(); ++i) os << ",x_" << i + 1;
    for (int i = 0; i < trace.steps[0].y.size(); ++i) os << ",y_" << i + 1;
  }
  os << ",min_slack,violated\n";
  for (const TraceStep& s : trace.steps) {
    os << s.t << "," << s.slot << "," << s.r << "," << s.kappa << "," << s.v;
    for (int i = 0; i < s.x.size(); ++i) os << "," << s.x(i);
    for (int i = 0; i < s.y.size(); ++i) os << "," << s.y(i);
    os << "," << s.min_slack << "," << (s.violated ? 1 : 0) << "\n";
  }
  return os.str();
}

namespace {

// Per-slot bounds on the first output implied by {y : S y <= 1}.
void slot_bounds(const Eigen::MatrixXd& S, double& lo, double& hi) {
  lo = -std::numeric_limits<double>::infinity();
  hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < S.rows(); ++i) {
    double s = S(i, 0);
    if (s > 1e-12) hi = std::min(hi, 1.0 / s);
    if (s < -1e-12) lo = std::max(lo, 1.0 / s);
  }
}

}  // namespace

std::string trace_svg(const PlantWithInput& plant,
                      const SimulationTrace& governed,
                      const SimulationTrace& ungoverned) {
  const double W = 720, H = 360;
  double ymin = 0, ymax = 0;
  auto scan = [&](const SimulationTrace& tr) {
    for (const TraceStep& s : tr.steps) {
      if (s.y.size() == 0) continue;
      ymin = std::min({ymin, s.y(0), s.r, s.v});
      ymax = std::max({ymax, s.y(0), s.r, s.v});
    }
  };
  scan(governed);
  scan(ungoverned);
  for (int k = 0; k < plant.period; ++k) {
    double lo, hi;
    slot_bounds(plant.s_mats[static_cast<size_t>(k)], lo, hi);
    if (std::isfinite(lo)) ymin = std::min(ymin, lo);
    if (std::isfinite(hi)) ymax = std::max(ymax, hi);
  }
  double margin = 0.1 * (ymax - ymin + 1e-9);
  ymin -= margin;
  ymax += margin;
  int T = std::max<int>(1, static_cast<int>(
      std::max(governed.steps.size(), ungoverned.steps.size())) - 1);
  auto sx = [&](double t) { return t / T * (W - 40) + 30; };
  auto sy = [&](double y) { return H - 20 - (y - ymin) / (ymax - ymin) * (H - 40); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  // Constraint bounds, dashed, piecewise per slot.
  for (int bound = 0; bound < 2; ++bound) {
    os << "<path d=\"";
    bool started = false;
    for (int t = 0; t <= T; ++t) {
      double lo, hi;
      slot_bounds(plant.s_mats[static_cast<size_t>(t % plant.period)], lo, hi);
      double y = bound == 0 ? hi : lo;
      if (!std::isfinite(y)) continue;
      os << (started ? "L" : "M") << sx(t) << " " << sy(y) << " ";
      started = true;
    }
    os << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
  }
  auto polyline = [&](const SimulationTrace& tr, auto getter,
                      const std::string& color) {
    os << "<path d=\"";
    for (size_t i = 0; i < tr.steps.size(); ++i)
      os << (i == 0 ? "M" : "L") << sx(static_cast<double>(i)) << " "
         << sy(getter(tr.steps[i])) << " ";
    os << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
  };
  polyline(ungoverned, [](const TraceStep& s) { return s.y.size() ? s.y(0) : 0.0; }, "red");
  polyline(governed, [](const TraceStep& s) { return s.y.size() ? s.y(0) : 0.0; }, "blue");
  polyline(governed, [](const TraceStep& s) { return s.r; }, "gray");
  polyline(governed, [](const TraceStep& s) { return s.v; }, "green");
  os << "</svg>\n";
  return os.str();
}

}  // namespace prg
