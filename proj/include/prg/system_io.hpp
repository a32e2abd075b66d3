#ifndef PRG_SYSTEM_IO_HPP_
#define PRG_SYSTEM_IO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prg/periodic_model.hpp"
#include "prg/simulator.hpp"

namespace prg {

// Parsed system definition file. Files with "b" describe a plant with input;
// files without it describe an autonomous periodic system.
struct SystemFile {
  bool is_plant = false;
  PeriodicSystem system;  // valid when !is_plant
  PlantWithInput plant;   // valid when is_plant
  std::optional<double> epsilon;
  std::vector<std::string> labels;
};

// Throws std::runtime_error with the offending field path on parse errors.
SystemFile load_system_file(const std::string& path);
SystemFile parse_system_json(const std::string& text, const std::string& origin);
std::string system_file_json(const SystemFile& sf);

struct ScenarioConfig {
  std::string system_path;
  double epsilon = 0.05;
  GovernorKind formulation = GovernorKind::none;
  StorageMode mode = StorageMode::complete;
  ReferenceSignal reference = ReferenceSignal::constant(0.0);
  int horizon = 60;
  std::vector<double> x0;
  std::string out_dir = ".";
  unsigned seed = 1;
  // tradeoff sweeps: (n, m_lo, m_hi) triples
  std::vector<std::array<std::int64_t, 3>> sweeps;
};

ScenarioConfig load_config(const std::string& path);

}  // namespace prg

#endif  // PRG_SYSTEM_IO_HPP_
