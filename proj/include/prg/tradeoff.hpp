#ifndef PRG_TRADEOFF_HPP_
#define PRG_TRADEOFF_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "prg/mas.hpp"
#include "prg/simulator.hpp"

namespace prg {

struct TradeoffFormula {
  std::int64_t bytes_saved = 0;
  std::int64_t extra_ops = 0;
};

// Fixed-input partial storage: 4(N-1)(n+1)(m-n) bytes saved, n(2m+2n-1)
// extra multiplications and additions per step.
TradeoffFormula formula_f1(std::int64_t N, std::int64_t n, std::int64_t m);

// Periodic-input analogue: 4(N-1)(n+3)(m-n) bytes, n(6m+2n-1) ops.
TradeoffFormula formula_f2(std::int64_t N, std::int64_t n, std::int64_t m);

struct SweepRow {
  std::int64_t m = 0;
  std::int64_t bytes_saved = 0;
  std::int64_t extra_ops = 0;
};

std::vector<SweepRow> sweep(std::int64_t N, std::int64_t n, std::int64_t m_lo,
                            std::int64_t m_hi, GovernorKind kind = GovernorKind::f1);

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct TradeoffReport {
  // Parameters recovered from the storages (n is the plant state dimension).
  std::int64_t N = 0, n = 0, m = 0, q = 0;
  bool uniform_q = true;
  std::int64_t formula_bytes_saved = 0;
  std::int64_t formula_extra_ops = 0;
  std::int64_t formula_bytes_complete = 0;  // uniform-q float-count formula
  std::int64_t formula_bytes_partial = 0;
  std::size_t measured_bytes_complete = 0;
  std::size_t measured_bytes_partial = 0;
  std::int64_t measured_extra_ops = 0;          // per reconstruction step
  std::vector<std::int64_t> per_slot_extra_ops;  // delta per slot (slot 0 is free)
};

// Cross-checks the closed-form accounting against the built storages and an
// instrumented residual evaluation over one full period.
TradeoffReport measure(const MasStorage& complete, const MasStorage& partial,
                       GovernorKind kind);

std::string report_text(const TradeoffReport& rep);

}  // namespace prg

#endif  // PRG_TRADEOFF_HPP_
