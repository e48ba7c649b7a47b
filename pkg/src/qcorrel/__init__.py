"""Quantum correlation measures and monogamy/conservation-law verification
on small multi-qubit systems."""

from .states import (
    SubsystemLayout,
    PureState,
    DensityMatrix,
    UnitaryMatrix,
    QStateError,
    LabelError,
    KindMismatchError,
    UnsupportedDimensionError,
    InternalInconsistencyError,
    InvariantViolation,
    tensor,
    partial_trace,
    partial_transpose,
    purify,
    eigh,
    random_pure_state,
    random_unitary,
)
from .fileio import StateFormatError, save_state, load_state, load_unitary
from .measures import (
    OptimizerConfig,
    Measurement,
    MeasureResult,
    von_neumann_entropy,
    binary_entropy,
    conditional_entropy,
    mutual_information,
    classical_correlation,
    quantum_discord,
    concurrence_two_qubit,
    eof_two_qubit,
    eof_pure_bipartite,
    eof_via_koashi_winter,
    negativity,
    measurement_unitary,
)
from .monogamy import (
    CorrelationLedger,
    SsaReport,
    koashi_winter_residual,
    discord_ledger,
    focus_ledgers,
    conservation_residual,
    delta_balance,
    example_family_state,
    ssa_sweep,
)
from .dqc1 import (
    Dqc1Instance,
    Dqc1Ledger,
    build_dqc1_state,
    build_dqc1_purification,
    build_nonmaximal_dqc1,
    trace_estimate,
    dqc1_ledger,
)

__version__ = "0.1.0"

__all__ = [
    "SubsystemLayout", "PureState", "DensityMatrix", "UnitaryMatrix",
    "QStateError", "LabelError", "KindMismatchError",
    "UnsupportedDimensionError", "InternalInconsistencyError",
    "InvariantViolation", "StateFormatError",
    "tensor", "partial_trace", "partial_transpose", "purify", "eigh",
    "random_pure_state", "random_unitary",
    "save_state", "load_state", "load_unitary",
    "OptimizerConfig", "Measurement", "MeasureResult",
    "von_neumann_entropy", "binary_entropy", "conditional_entropy",
    "mutual_information", "classical_correlation", "quantum_discord",
    "concurrence_two_qubit", "eof_two_qubit", "eof_pure_bipartite",
    "eof_via_koashi_winter", "negativity", "measurement_unitary",
    "CorrelationLedger", "SsaReport", "koashi_winter_residual",
    "discord_ledger", "focus_ledgers", "conservation_residual",
    "delta_balance", "example_family_state", "ssa_sweep",
    "Dqc1Instance", "Dqc1Ledger", "build_dqc1_state",
    "build_dqc1_purification", "build_nonmaximal_dqc1", "trace_estimate",
    "dqc1_ledger",
]
