#include <doctest.h>

#include "prg/tradeoff.hpp"
#include "support/demo_systems.hpp"

using namespace prg;

TEST_CASE("closed-form accounting at the reference points") {
  TradeoffFormula a = formula_f1(3, 2, 22);
  CHECK(a.bytes_saved == 480);
  CHECK(a.extra_ops == 94);
  TradeoffFormula b = formula_f2(3, 2, 24);
  CHECK(b.bytes_saved == 880);
  CHECK(b.extra_ops == 294);
}

TEST_CASE("single-slot storage saves nothing") {
  CHECK(formula_f1(1, 4, 30).bytes_saved == 0);
  CHECK(formula_f2(1, 4, 30).bytes_saved == 0);
  // Reconstruction work is per-step and does not vanish with N = 1,
  // but with N = 1 the partial layout never runs it.
  CHECK(formula_f1(1, 4, 30).extra_ops > 0);
}

TEST_CASE("savings grow affinely in m and require m > n") {
  std::vector<SweepRow> rows = sweep(3, 2, 1, 40);
  REQUIRE(rows.size() == 40);
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i + 1].bytes_saved - rows[i].bytes_saved == 4 * 2 * 3);
    CHECK(rows[i + 1].extra_ops - rows[i].extra_ops == 2 * 2);
  }
  for (const SweepRow& r : rows)
    CHECK((r.bytes_saved > 0) == (r.m > 2));
  CHECK_THROWS_AS(sweep(3, 2, 10, 9), std::invalid_argument);
}

TEST_CASE("per-slot commands cost more memory and more work per row") {
  std::vector<SweepRow> f1 = sweep(4, 4, 10, 20, GovernorKind::f1);
  std::vector<SweepRow> f2 = sweep(4, 4, 10, 20, GovernorKind::f2);
  for (size_t i = 0; i < f1.size(); ++i) {
    CHECK(f2[i].bytes_saved > f1[i].bytes_saved);
    CHECK(f2[i].extra_ops > f1[i].extra_ops);
  }
}

TEST_CASE("csv rendering of a sweep") {
  std::string csv = sweep_csv(sweep(3, 2, 22, 23));
  CHECK(csv == "m,bytes_saved,extra_ops\n22,480,94\n23,504,98\n");
}

TEST_CASE("measured storages reproduce the closed forms exactly") {
  PlantWithInput pl = demo::periodic3_plant();

  PeriodicSystem a1 = augment_fixed_input(pl);
  PeriodicMas m1 = compute_omega0(a1, 0.05);
  TradeoffReport r1 = measure(build_storage(m1, a1, StorageMode::complete),
                              build_storage(m1, a1, StorageMode::partial),
                              GovernorKind::f1);
  CHECK(r1.N == 3);
  CHECK(r1.n == 2);
  CHECK(r1.m == 22);
  CHECK(r1.q == 2);
  CHECK(r1.uniform_q);
  CHECK(r1.measured_bytes_complete == 864);
  CHECK(r1.measured_bytes_partial == 384);
  CHECK(r1.formula_bytes_complete == 864);
  CHECK(r1.formula_bytes_partial == 384);
  CHECK(r1.formula_bytes_saved == 480);
  CHECK(r1.formula_extra_ops == 94);
  CHECK(r1.measured_extra_ops == 94);
  REQUIRE(r1.per_slot_extra_ops.size() == 3);
  CHECK(r1.per_slot_extra_ops[0] == 0);
  CHECK(r1.per_slot_extra_ops[1] == 94);
  CHECK(r1.per_slot_extra_ops[2] == 94);

  PeriodicSystem a2 = augment_periodic_input(pl);
  PeriodicMas m2 = compute_omega0(a2, 0.05);
  TradeoffReport r2 = measure(build_storage(m2, a2, StorageMode::complete),
                              build_storage(m2, a2, StorageMode::partial),
                              GovernorKind::f2);
  CHECK(r2.m == 24);
  CHECK(r2.measured_bytes_complete == 1560);
  CHECK(r2.measured_bytes_partial == 680);
  CHECK(r2.formula_bytes_saved == 880);
  CHECK(r2.formula_extra_ops == 294);
  CHECK(r2.measured_extra_ops == 294);
  CHECK(r2.per_slot_extra_ops == std::vector<std::int64_t>({0, 294, 294}));

  std::string text = report_text(r1);
  CHECK(text.find("complete=864") != std::string::npos);
  CHECK(text.find("partial=384") != std::string::npos);
  CHECK(text.find("94") != std::string::npos);
}

TEST_CASE("measure rejects mismatched storages") {
  PeriodicSystem a1 = augment_fixed_input(demo::periodic3_plant());
  PeriodicMas m1 = compute_omega0(a1, 0.05);
  MasStorage c = build_storage(m1, a1, StorageMode::complete);
  CHECK_THROWS_AS(measure(c, c, GovernorKind::f1), std::invalid_argument);
}
