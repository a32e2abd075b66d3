#include "prg/system_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace prg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw std::runtime_error(origin + ": " + path + ": " + what);
}

const json& field(const json& j, const std::string& origin,
                  const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(origin, path + "." + key, "missing field");
  return j.at(key);
}

void reject_unknown(const json& j, const std::string& origin,
                    const std::string& path, const std::set<std::string>& known) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      fail(origin, path + "." + it.key(), "unknown field");
}

Eigen::MatrixXd parse_matrix(const json& j, const std::string& origin,
                             const std::string& path) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    fail(origin, path, "expected an array of rows");
  const size_t rows = j.size(), cols = j.front().size();
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(origin, path + "[" + std::to_string(i) + "]", "ragged row");
    for (size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        fail(origin, path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
             "expected a number");
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return M;
}

Eigen::VectorXd parse_vector(const json& j, const std::string& origin,
                             const std::string& path) {
  if (!j.is_array()) fail(origin, path, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      fail(origin, path + "[" + std::to_string(i) + "]", "expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<Eigen::MatrixXd> parse_matrix_list(const json& j,
                                               const std::string& origin,
                                               const std::string& path,
                                               size_t expected) {
  if (!j.is_array() || j.size() != expected)
    fail(origin, path, "expected " + std::to_string(expected) + " matrices");
  std::vector<Eigen::MatrixXd> out;
  for (size_t k = 0; k < expected; ++k)
    out.push_back(parse_matrix(j[k], origin, path + "[" + std::to_string(k) + "]"));
  return out;
}

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SystemFile parse_system_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(origin + ": invalid JSON: " + e.what());
  }
  reject_unknown(j, origin, "$",
                 {"schema_version", "period", "a", "b", "c", "d", "d_feedthrough",
                  "s", "epsilon", "labels"});
  if (field(j, origin, "$", "schema_version").get<int>() != 1)
    fail(origin, "$.schema_version", "unsupported schema version");
  const int N = field(j, origin, "$", "period").get<int>();
  if (N < 1) fail(origin, "$.period", "period must be >= 1");
  const size_t Nu = static_cast<size_t>(N);

  SystemFile sf;
  auto a = parse_matrix_list(field(j, origin, "$", "a"), origin, "$.a", Nu);
  auto c = parse_matrix_list(field(j, origin, "$", "c"), origin, "$.c", Nu);
  auto s = parse_matrix_list(field(j, origin, "$", "s"), origin, "$.s", Nu);
  const int n = static_cast<int>(a[0].rows());
  const int p = static_cast<int>(c[0].rows());

  if (j.contains("epsilon")) sf.epsilon = j.at("epsilon").get<double>();
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) sf.labels.push_back(l.get<std::string>());

  if (j.contains("b")) {
    sf.is_plant = true;
    PlantWithInput& pl = sf.plant;
    pl.period = N;
    pl.n = n;
    pl.p = p;
    pl.a_mats = std::move(a);
    pl.c_mats = std::move(c);
    pl.s_mats = std::move(s);
    const json& bj = field(j, origin, "$", "b");
    if (!bj.is_array() || bj.size() != Nu) fail(origin, "$.b", "expected N vectors");
    for (size_t k = 0; k < Nu; ++k)
      pl.b_mats.push_back(parse_vector(bj[k], origin, "$.b[" + std::to_string(k) + "]"));
    if (j.contains("d_feedthrough")) {
      const json& dj = j.at("d_feedthrough");
      if (!dj.is_array() || dj.size() != Nu)
        fail(origin, "$.d_feedthrough", "expected N vectors");
      for (size_t k = 0; k < Nu; ++k)
        pl.d_mats.push_back(
            parse_vector(dj[k], origin, "$.d_feedthrough[" + std::to_string(k) + "]"));
    } else {
      for (size_t k = 0; k < Nu; ++k)
        pl.d_mats.push_back(Eigen::VectorXd::Zero(p));
    }
  } else {
    if (j.contains("d_feedthrough"))
      fail(origin, "$.d_feedthrough", "feedthrough requires an input matrix b");
    PeriodicSystem& sys = sf.system;
    sys.period = N;
    sys.n = n;
    sys.p = p;
    sys.d = j.contains("d") ? j.at("d").get<int>() : 0;
    sys.a_mats = std::move(a);
    sys.c_mats = std::move(c);
    sys.s_mats = std::move(s);
  }
  return sf;
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system_json(ss.str(), path);
}

std::string system_file_json(const SystemFile& sf) {
  json j;
  j["schema_version"] = 1;
  if (sf.is_plant) {
    const PlantWithInput& pl = sf.plant;
    j["period"] = pl.period;
    j["a"] = json::array();
    j["b"] = json::array();
    j["c"] = json::array();
    j["d_feedthrough"] = json::array();
    j["s"] = json::array();
    for (int k = 0; k < pl.period; ++k) {
      const size_t kk = static_cast<size_t>(k);
      j["a"].push_back(matrix_json(pl.a_mats[kk]));
      json bv = json::array();
      for (Eigen::Index i = 0; i < pl.b_mats[kk].size(); ++i)
        bv.push_back(pl.b_mats[kk](i));
      j["b"].push_back(bv);
      j["c"].push_back(matrix_json(pl.c_mats[kk]));
      json dv = json::array();
      for (Eigen::Index i = 0; i < pl.d_mats[kk].size(); ++i)
        dv.push_back(pl.d_mats[kk](i));
      j["d_feedthrough"].push_back(dv);
      j["s"].push_back(matrix_json(pl.s_mats[kk]));
    }
  } else {
    const PeriodicSystem& sys = sf.system;
    j["period"] = sys.period;
    j["d"] = sys.d;
    j["a"] = json::array();
    j["c"] = json::array();
    j["s"] = json::array();
    for (int k = 0; k < sys.period; ++k) {
      const size_t kk = static_cast<size_t>(k);
      j["a"].push_back(matrix_json(sys.a_mats[kk]));
      j["c"].push_back(matrix_json(sys.c_mats[kk]));
      j["s"].push_back(matrix_json(sys.s_mats[kk]));
    }
  }
  if (sf.epsilon) j["epsilon"] = *sf.epsilon;
  if (!sf.labels.empty()) j["labels"] = sf.labels;
  return j.dump(2) + "\n";
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
  reject_unknown(j, path, "$",
                 {"schema_version", "system", "epsilon", "formulation", "mode",
                  "reference", "horizon", "x0", "out", "seed", "sweeps"});
  if (field(j, path, "$", "schema_version").get<int>() != 1)
    fail(path, "$.schema_version", "unsupported schema version");

  ScenarioConfig cfg;
  cfg.system_path = field(j, path, "$", "system").get<std::string>();
  if (j.contains("epsilon")) {
    cfg.epsilon = j.at("epsilon").get<double>();
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
      fail(path, "$.epsilon", "epsilon must be in (0,1)");
  }
  if (j.contains("formulation")) {
    std::string f = j.at("formulation").get<std::string>();
    if (f == "none") cfg.formulation = GovernorKind::none;
    else if (f == "f1") cfg.formulation = GovernorKind::f1;
    else if (f == "f2") cfg.formulation = GovernorKind::f2;
    else fail(path, "$.formulation", "expected none|f1|f2");
  }
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "complete") cfg.mode = StorageMode::complete;
    else if (m == "partial") cfg.mode = StorageMode::partial;
    else fail(path, "$.mode", "expected complete|partial");
  }
  if (j.contains("reference")) {
    const json& r = j.at("reference");
    reject_unknown(r, path, "$.reference", {"kind", "levels", "switch_times"});
    std::string kind = field(r, path, "$.reference", "kind").get<std::string>();
    std::vector<double> levels;
    std::vector<int> switches;
    if (r.contains("levels"))
      for (const auto& l : r.at("levels")) levels.push_back(l.get<double>());
    if (r.contains("switch_times"))
      for (const auto& t : r.at("switch_times")) switches.push_back(t.get<int>());
    try {
      if (kind == "constant") {
        if (levels.size() != 1) fail(path, "$.reference.levels", "constant needs 1 level");
        cfg.reference = ReferenceSignal::constant(levels[0]);
      } else if (kind == "step") {
        if (levels.size() != 2 || switches.size() != 1)
          fail(path, "$.reference", "step needs 2 levels and 1 switch time");
        cfg.reference = ReferenceSignal::step(levels[0], levels[1], switches[0]);
      } else if (kind == "pulse") {
        if (levels.size() != 3 || switches.size() != 2)
          fail(path, "$.reference", "pulse needs 3 levels and 2 switch times");
        cfg.reference = ReferenceSignal::pulse(levels[0], levels[1], switches[0],
                                               levels[2], switches[1]);
      } else if (kind == "piecewise") {
        cfg.reference = ReferenceSignal::piecewise(levels, switches);
      } else {
        fail(path, "$.reference.kind", "expected constant|step|pulse|piecewise");
      }
    } catch (const std::invalid_argument& e) {
      fail(path, "$.reference", e.what());
    }
  }
  if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<int>();
  if (j.contains("x0"))
    for (const auto& v : j.at("x0")) cfg.x0.push_back(v.get<double>());
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
  if (j.contains("sweeps")) {
    for (const auto& s : j.at("sweeps")) {
      reject_unknown(s, path, "$.sweeps[]", {"n", "m_lo", "m_hi"});
      cfg.sweeps.push_back({field(s, path, "$.sweeps[]", "n").get<std::int64_t>(),
                            field(s, path, "$.sweeps[]", "m_lo").get<std::int64_t>(),
                            field(s, path, "$.sweeps[]", "m_hi").get<std::int64_t>()});
    }
  }
  return cfg;
}

}  // namespace prg
