// Command-line front end: MAS computation, governed closed-loop simulation,
// and space-time tradeoff reports for periodic reference governors.
//
// Exit codes: 0 ok, 1 usage/other error, 2 validation failure,
// 3 non-termination, 4 infeasibility.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "prg/mas.hpp"
#include "prg/system_io.hpp"
#include "prg/tradeoff.hpp"

namespace fs = std::filesystem;
using namespace prg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNonTermination = 3;
constexpr int kExitInfeasible = 4;

struct CommonFlags {
  std::string config_path;
  std::string out_override;
  std::string mode_override;
  std::string formulation_override;
  int seed_override = -1;
  bool parallel = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "scenario config JSON")->required();
  cmd->add_option("--out", flags.out_override, "output directory");
  cmd->add_option("--mode", flags.mode_override, "complete|partial")
      ->check(CLI::IsMember({"complete", "partial"}));
  cmd->add_option("--formulation", flags.formulation_override, "f1|f2|none")
      ->check(CLI::IsMember({"f1", "f2", "none"}));
  cmd->add_option("--seed", flags.seed_override, "sampling seed");
  cmd->add_flag("--parallel", flags.parallel, "parallel per-slot expansion");
}

struct Scenario {
  ScenarioConfig cfg;
  SystemFile file;
  PeriodicSystem sys;  // the system MAS is computed for (augmented if plant)
};

Scenario load_scenario(const CommonFlags& flags) {
  Scenario sc;
  sc.cfg = load_config(flags.config_path);
  if (!flags.out_override.empty()) sc.cfg.out_dir = flags.out_override;
  if (!flags.mode_override.empty())
    sc.cfg.mode = flags.mode_override == "partial" ? StorageMode::partial
                                                   : StorageMode::complete;
  if (!flags.formulation_override.empty()) {
    if (flags.formulation_override == "f1") sc.cfg.formulation = GovernorKind::f1;
    else if (flags.formulation_override == "f2") sc.cfg.formulation = GovernorKind::f2;
    else sc.cfg.formulation = GovernorKind::none;
  }
  if (flags.seed_override >= 0) sc.cfg.seed = static_cast<unsigned>(flags.seed_override);

  fs::path sys_path(sc.cfg.system_path);
  if (sys_path.is_relative())
    sys_path = fs::path(flags.config_path).parent_path() / sys_path;
  sc.file = load_system_file(sys_path.string());
  if (sc.file.epsilon && sc.cfg.epsilon == 0.05) sc.cfg.epsilon = *sc.file.epsilon;

  if (sc.file.is_plant) {
    switch (sc.cfg.formulation) {
      case GovernorKind::f2: sc.sys = augment_periodic_input(sc.file.plant); break;
      default: sc.sys = augment_fixed_input(sc.file.plant); break;
    }
  } else {
    sc.sys = sc.file.system;
  }
  return sc;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int report_validation(const ValidationReport& rep, std::ostream& os) {
  os << "stable: " << (rep.stable ? "yes" : "no") << "\n";
  os << "observable: " << (rep.observable ? "yes" : "no") << "\n";
  os << "multipliers:";
  for (const auto& lam : rep.multipliers)
    os << " " << lam.real() << (lam.imag() >= 0 ? "+" : "") << lam.imag() << "i";
  os << "\n";
  if (rep.ok()) {
    os << "assumptions: all satisfied\n";
    return kExitOk;
  }
  for (const auto& [id, detail] : rep.assumption_failures)
    os << "assumption " << id << " failed: " << detail << "\n";
  return kExitValidation;
}

int cmd_validate(const CommonFlags& flags) {
  Scenario sc = load_scenario(flags);
  return report_validation(validate(sc.sys), std::cout);
}

// Decomposition plot for 2-D sets: the slot-0 set pulled through the
// trailing state-map product, the fresh half-spaces, and their intersection.
void write_slot_svg(const fs::path& dir, const PeriodicMas& mas,
                    const PeriodicSystem& sys, int k, const HPolytope& slot_poly) {
  std::vector<std::vector<Eigen::Vector2d>> polys;
  std::vector<std::string> colors;
  std::vector<Eigen::Vector2d> black = vertices_2d(slot_poly);
  if (k > 0) {
    const int N = sys.period;
    Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(sys.n, sys.n);
    Eigen::MatrixXd freshH(0, sys.n);
    for (int j = k; j < N; ++j) {
      Eigen::MatrixXd rows = sys.S(j) * sys.C(j) * prod;
      freshH.conservativeResize(freshH.rows() + rows.rows(), sys.n);
      freshH.bottomRows(rows.rows()) = rows;
      prod = sys.A(j) * prod;
    }
    HPolytope preimage{mas.h0 * prod, mas.rhs0};
    std::vector<Eigen::Vector2d> red = vertices_2d(preimage);
    // Clip the fresh strip against a padded box so it can be drawn even
    // when unbounded on its own.
    double span = 0.0;
    for (const auto& v : red) span = std::max({span, std::abs(v.x()), std::abs(v.y())});
    span *= 2.0;
    Eigen::MatrixXd boxH(4, 2);
    boxH << 1, 0, -1, 0, 0, 1, 0, -1;
    Eigen::MatrixXd greenH(freshH.rows() + 4, 2);
    greenH << freshH, boxH;
    Eigen::VectorXd greenh(greenH.rows());
    greenh << Eigen::VectorXd::Ones(freshH.rows()),
        Eigen::VectorXd::Constant(4, span);
    polys.push_back(red);
    colors.push_back("red");
    polys.push_back(vertices_2d({greenH, greenh}));
    colors.push_back("green");
  }
  polys.push_back(black);
  colors.push_back("black");
  write_file(dir / ("omega_" + std::to_string(k) + ".svg"),
             polygon_svg(polys, colors));
}

int cmd_compute_mas(const CommonFlags& flags) {
  Scenario sc = load_scenario(flags);
  ValidationReport rep = validate(sc.sys);
  if (!rep.ok()) return report_validation(rep, std::cerr);

  PeriodicMas mas;
  try {
    mas = compute_omega0(sc.sys, sc.cfg.epsilon);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitNonTermination;
  }

  fs::create_directories(sc.cfg.out_dir);
  fs::path dir(sc.cfg.out_dir);
  MasStorage complete = build_storage(mas, sc.sys, StorageMode::complete);
  MasStorage partial = build_storage(mas, sc.sys, StorageMode::partial);

  auto emit_slot = [&](int k) {
    HPolytope P = complete.slots[static_cast<size_t>(k)];
    write_file(dir / ("omega_" + std::to_string(k) + ".csv"), polytope_csv(P));
    if (sc.sys.n == 2) {
      write_file(dir / ("omega_" + std::to_string(k) + "_vertices.csv"),
                 vertices_csv(vertices_2d(P)));
      write_slot_svg(dir, mas, sc.sys, k, P);
    }
  };
  if (flags.parallel) {
    std::vector<std::future<void>> jobs;
    for (int k = 0; k < sc.sys.period; ++k)
      jobs.push_back(std::async(std::launch::async, emit_slot, k));
    for (auto& j : jobs) j.get();
  } else {
    for (int k = 0; k < sc.sys.period; ++k) emit_slot(k);
  }

  std::ostringstream summary;
  summary << "m: " << mas.m << "\n"
          << "admissibility_index: " << mas.admissibility_index << "\n"
          << "epsilon: " << mas.epsilon << "\n"
          << "bytes32_complete: " << complete.bytes32 << "\n"
          << "bytes32_partial: " << partial.bytes32 << "\n";
  write_file(dir / "summary.txt", summary.str());
  std::cout << summary.str();
  return kExitOk;
}

int cmd_simulate(const CommonFlags& flags) {
  Scenario sc = load_scenario(flags);
  if (!sc.file.is_plant) {
    std::cerr << "simulate requires a system file with an input matrix b\n";
    return kExitError;
  }
  ValidationReport rep = validate(sc.sys);
  if (!rep.ok()) return report_validation(rep, std::cerr);

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(sc.file.plant.n);
  if (!sc.cfg.x0.empty()) {
    if (static_cast<int>(sc.cfg.x0.size()) != sc.file.plant.n) {
      std::cerr << "config x0 has wrong dimension\n";
      return kExitError;
    }
    for (size_t i = 0; i < sc.cfg.x0.size(); ++i)
      x0(static_cast<Eigen::Index>(i)) = sc.cfg.x0[i];
  }

  fs::create_directories(sc.cfg.out_dir);
  fs::path dir(sc.cfg.out_dir);

  SimulationTrace ungoverned = simulate(sc.file.plant, GovernorKind::none,
                                        nullptr, sc.cfg.reference,
                                        sc.cfg.horizon, x0);
  write_file(dir / "trace_ungoverned.csv", trace_csv(ungoverned));

  SimulationTrace governed = ungoverned;
  if (sc.cfg.formulation != GovernorKind::none) {
    PeriodicMas mas;
    try {
      mas = compute_omega0(sc.sys, sc.cfg.epsilon);
    } catch (const std::runtime_error& e) {
      std::cerr << e.what() << "\n";
      return kExitNonTermination;
    }
    MasStorage storage = build_storage(mas, sc.sys, sc.cfg.mode);
    governed = simulate(sc.file.plant, sc.cfg.formulation, &storage,
                        sc.cfg.reference, sc.cfg.horizon, x0);
    write_file(dir / "trace_governed.csv", trace_csv(governed));
    if (governed.aborted_infeasible) {
      std::cerr << "governor fault: " << governed.diagnostic << "\n";
      return kExitInfeasible;
    }
  }

  AuditReport aud = audit(sc.file.plant, governed);
  AuditReport aud_un = audit(sc.file.plant, ungoverned);
  std::ostringstream os;
  os << "governed violations: " << aud.violations.size() << "\n"
     << "ungoverned violations: " << aud_un.violations.size() << "\n"
     << "governed min_slack: " << aud.min_slack << "\n"
     << "governed sum |v-r|: " << aud.sum_tracking_error << "\n"
     << "governed max |v-r|: " << aud.max_tracking_error << "\n";
  for (int idx : aud.violations) os << "governed violation at step " << idx << "\n";
  write_file(dir / "audit.txt", os.str());
  write_file(dir / "simulation.svg", trace_svg(sc.file.plant, governed, ungoverned));
  return kExitOk;
}

int cmd_tradeoff(const CommonFlags& flags) {
  Scenario sc = load_scenario(flags);
  fs::create_directories(sc.cfg.out_dir);
  fs::path dir(sc.cfg.out_dir);

  auto sweeps = sc.cfg.sweeps;
  if (sweeps.empty()) sweeps = {{1, 1, 58}, {4, 4, 28}};
  GovernorKind kind = sc.cfg.formulation == GovernorKind::f2 ? GovernorKind::f2
                                                             : GovernorKind::f1;
  for (const auto& [n, m_lo, m_hi] : sweeps) {
    auto rows = sweep(3, n, m_lo, m_hi, kind);
    write_file(dir / ("sweep_n" + std::to_string(n) + ".csv"), sweep_csv(rows));
  }

  if (sc.file.is_plant) {
    PeriodicMas mas;
    try {
      mas = compute_omega0(sc.sys, sc.cfg.epsilon);
    } catch (const std::runtime_error& e) {
      std::cerr << e.what() << "\n";
      return kExitNonTermination;
    }
    MasStorage complete = build_storage(mas, sc.sys, StorageMode::complete);
    MasStorage partial = build_storage(mas, sc.sys, StorageMode::partial);
    TradeoffReport rep = measure(complete, partial, kind);
    std::string text = report_text(rep);
    write_file(dir / "tradeoff.txt", text);
    std::cout << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic reference governor toolkit"};
  app.require_subcommand(1);
  CommonFlags flags;
  CLI::App* v = app.add_subcommand("validate", "check model assumptions");
  CLI::App* c = app.add_subcommand("compute-mas", "build the admissible sets");
  CLI::App* s = app.add_subcommand("simulate", "governed closed-loop rollout");
  CLI::App* t = app.add_subcommand("tradeoff", "space-time tradeoff analysis");
  for (CLI::App* cmd : {v, c, s, t}) add_common(cmd, flags);
  CLI11_PARSE(app, argc, argv);

  try {
    if (v->parsed()) return cmd_validate(flags);
    if (c->parsed()) return cmd_compute_mas(flags);
    if (s->parsed()) return cmd_simulate(flags);
    if (t->parsed()) return cmd_tradeoff(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
