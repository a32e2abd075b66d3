"""End-to-end smoke test of the python bindings."""

import os

import numpy as np
import pytest

import periodicrg as prg

DATA = os.environ.get("PRG_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


@pytest.fixture(scope="module")
def plant():
    sf = prg.load_system_file(os.path.join(DATA, "plant.json"))
    assert sf.is_plant
    return sf.plant


def test_validate_and_monodromy(plant):
    aug = prg.augment_fixed_input(plant)
    rep = prg.validate(aug)
    assert rep.ok()
    assert rep.stable
    phi = prg.monodromy(aug, 0)
    assert phi.shape == (3, 3)
    mags = sorted(abs(lam) for lam in rep.multipliers)
    assert mags[-1] == pytest.approx(0.8, abs=1e-12)


def test_mas_and_storage(plant):
    aug = prg.augment_fixed_input(plant)
    mas = prg.compute_omega0(aug, 0.05)
    assert mas.m == 22
    complete = prg.build_storage(mas, aug, prg.StorageMode.complete)
    partial = prg.build_storage(mas, aug, prg.StorageMode.partial)
    assert partial.bytes32 == 384
    for k in range(3):
        assert prg.set_equal(complete.slot_polytope(k), partial.slot_polytope(k), 1e-9)
    P0 = complete.slot_polytope(0)
    assert prg.contains(P0, np.zeros(3))
    verts = prg.expand_slot(mas, aug, 1)
    assert verts.dim() == 3

    rep = prg.measure(complete, partial, prg.GovernorKind.f1)
    assert rep.formula_bytes_saved == 480
    assert rep.measured_extra_ops == 94


def test_governed_simulation(plant):
    aug = prg.augment_fixed_input(plant)
    storage = prg.build_storage(prg.compute_omega0(aug, 0.05), aug,
                                prg.StorageMode.complete)
    ref = prg.ReferenceSignal.pulse(0.0, 0.15, 10, 0.05, 26)
    raw = prg.simulate(plant, prg.GovernorKind.none, None, ref, 60, np.zeros(2))
    gov = prg.simulate(plant, prg.GovernorKind.f1, storage, ref, 60, np.zeros(2))
    assert raw.any_violation
    assert not gov.aborted_infeasible
    assert not gov.any_violation
    assert gov.sum_tracking_error > 0.0
    csv = prg.trace_csv(gov)
    assert csv.startswith("t,slot,r,kappa,v")


def test_kappa_and_formulas():
    kappa, row = prg.solve_kappa(np.array([2.0]), np.array([1.0]))
    assert kappa == pytest.approx(0.5)
    assert row == 0
    assert prg.formula_f2(3, 2, 24).bytes_saved == 880
