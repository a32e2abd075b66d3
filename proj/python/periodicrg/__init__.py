"""Periodic-invariant maximal output admissible sets and reference governors."""

from ._core import (  # noqa: F401
    GovernorKind,
    HPolytope,
    LiftedSystem,
    MasStorage,
    PeriodicMas,
    PeriodicSystem,
    PlantWithInput,
    ReferenceSignal,
    SimulationTrace,
    StorageMode,
    SystemFile,
    TraceStep,
    TradeoffFormula,
    TradeoffReport,
    ValidationReport,
    augment_fixed_input,
    augment_periodic_input,
    build_storage,
    compute_omega0,
    contains,
    expand_slot,
    formula_f1,
    formula_f2,
    lift,
    load_system_file,
    measure,
    monodromy,
    residual,
    set_equal,
    simulate,
    solve_kappa,
    trace_csv,
    validate,
    vertices_2d,
)

__all__ = [name for name in dir() if not name.startswith("_")]
