#include "prg/tradeoff.hpp"

#include <sstream>
#include <stdexcept>

namespace prg {

TradeoffFormula formula_f1(std::int64_t N, std::int64_t n, std::int64_t m) {
  return {4 * (N - 1) * (n + 1) * (m - n), n * (2 * m + 2 * n - 1)};
}

TradeoffFormula formula_f2(std::int64_t N, std::int64_t n, std::int64_t m) {
  return {4 * (N - 1) * (n + 3) * (m - n), n * (6 * m + 2 * n - 1)};
}

std::vector<SweepRow> sweep(std::int64_t N, std::int64_t n, std::int64_t m_lo,
                            std::int64_t m_hi, GovernorKind kind) {
  if (m_hi < m_lo) throw std::invalid_argument("sweep: empty m range");
  std::vector<SweepRow> rows;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    TradeoffFormula f = kind == GovernorKind::f2 ? formula_f2(N, n, m)
                                                 : formula_f1(N, n, m);
    rows.push_back({m, f.bytes_saved, f.extra_ops});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "m,bytes_saved,extra_ops\n";
  for (const SweepRow& r : rows)
    os << r.m << "," << r.bytes_saved << "," << r.extra_ops << "\n";
  return os.str();
}

TradeoffReport measure(const MasStorage& complete, const MasStorage& partial,
                       GovernorKind kind) {
  if (complete.mode != StorageMode::complete || partial.mode != StorageMode::partial)
    throw std::invalid_argument("measure: expected one storage of each mode");
  if (complete.period != partial.period || complete.n_aug != partial.n_aug)
    throw std::invalid_argument("measure: storages disagree on the system");

  TradeoffReport rep;
  rep.N = complete.period;
  rep.n = complete.n_state();
  rep.m = partial.omega0.rows();

  // Recover the per-slot constraint row counts from the fresh blocks:
  // fresh rows at slot k total q_k + ... + q_{N-1}.
  std::vector<std::int64_t> qs;
  for (std::int64_t k = rep.N - 1; k >= 1; --k) {
    std::int64_t f = partial.fresh[static_cast<size_t>(k - 1)].rows();
    std::int64_t below = k < rep.N - 1
        ? partial.fresh[static_cast<size_t>(k)].rows() : 0;
    qs.push_back(f - below);
  }
  rep.q = qs.empty() ? 0 : qs.front();
  for (std::int64_t qk : qs)
    if (qk != rep.q) rep.uniform_q = false;

  TradeoffFormula f = kind == GovernorKind::f2 ? formula_f2(rep.N, rep.n, rep.m)
                                               : formula_f1(rep.N, rep.n, rep.m);
  rep.formula_bytes_saved = f.bytes_saved;
  rep.formula_extra_ops = f.extra_ops;
  const std::int64_t cols = complete.n_aug;
  rep.formula_bytes_complete =
      4 * (rep.N * rep.m * cols + rep.N * (rep.N - 1) / 2 * rep.q * cols);
  rep.formula_bytes_partial =
      4 * (rep.m * cols + rep.N * (rep.N - 1) / 2 * rep.q * cols +
           (rep.N - 1) * rep.n * cols);
  rep.measured_bytes_complete = complete.bytes32;
  rep.measured_bytes_partial = partial.bytes32;

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(complete.n_aug);
  for (int slot = 0; slot < complete.period; ++slot) {
    OpCounter cc, cp;
    residual(complete, slot, x0, &cc);
    residual(partial, slot, x0, &cp);
    rep.per_slot_extra_ops.push_back(cp.ops - cc.ops);
    rep.measured_extra_ops = std::max(rep.measured_extra_ops, cp.ops - cc.ops);
  }
  return rep;
}

std::string report_text(const TradeoffReport& rep) {
  std::ostringstream os;
  os << "space-time tradeoff report\n"
     << "  N=" << rep.N << " n=" << rep.n << " m=" << rep.m << " q=" << rep.q;
  if (!rep.uniform_q) os << " (formula assumes uniform q; slots differ)";
  os << "\n"
     << "  measured bytes: complete=" << rep.measured_bytes_complete
     << " partial=" << rep.measured_bytes_partial << "\n"
     << "  uniform-q formula bytes: complete=" << rep.formula_bytes_complete
     << " partial=" << rep.formula_bytes_partial << "\n"
     << "  formula bytes saved: " << rep.formula_bytes_saved << "\n"
     << "  formula extra ops per step: " << rep.formula_extra_ops << "\n"
     << "  measured extra ops per reconstruction step: " << rep.measured_extra_ops
     << " (slot 0 reads the stored set directly and costs no extra)\n"
     << "  per-slot extra ops:";
  for (std::int64_t v : rep.per_slot_extra_ops) os << " " << v;
  os << "\n";
  return os.str();
}

}  // namespace prg
