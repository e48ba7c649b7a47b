"""Tripartite identities linking entanglement of formation, discord and entropy.

For a pure three-qubit state on labels (A, B, E) the following hold exactly
(all quantities in bits, the discord arrow pointing at the measured second
index):

    r1:  E_AB + J<-_AE = S_A                      (monogamy)
    r2:  E_AB = d<-_AE + S(A|E)
    r3:  d<-_AB = E_AE - S(A|B)
    r4:  d<-_AB = E_AE - E_E(AB) + E_B(AE)
    r5:  E_AB + E_AE = d<-_AB + d<-_AE            (conservation law)

``discord_ledger`` evaluates every term numerically and reports the
residuals; in exact arithmetic all five vanish, so the observed residual is
a direct readout of optimizer and eigensolver slack.

For mixed tripartite states the identities relax to inequalities.  With

    Delta = E_AB + E_AE - d<-_AB - d<-_AE

both  S_B + S_E <= S_AB + S_AE  (strong subadditivity) and the stronger
S_B + S_E + max(0, Delta) <= S_AB + S_AE  must hold; ``delta_balance``
checks both, using the closed-form EOF on the two-qubit marginals.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .measures import (
    MeasureResult,
    OptimizerConfig,
    classical_correlation,
    eof_two_qubit,
    quantum_discord,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    InternalInconsistencyError,
    LabelError,
    PureState,
    SubsystemLayout,
    UnsupportedDimensionError,
    partial_trace,
)

#: Tolerance for inequality checks that involve only closed-form entropies.
ENTROPY_SLACK = 1e-9

#: Tolerance for inequality checks polluted by optimized discord values.
DISCORD_SLACK = 1e-3


@dataclass(frozen=True)
class CorrelationLedger:
    """Every pairwise and bipartition measure of one pure tripartite state.

    Field names use the roles (A, B, E) in the order of ``labels``; discord
    subscripts name (unmeasured, measured) in that order.  ``spreads`` maps
    the same subscripts to the restart spread of the underlying search.
    """

    labels: tuple[str, str, str]
    S_A: float
    S_B: float
    S_E: float
    S_AB: float
    S_AE: float
    S_BE: float
    E_AB: float
    E_AE: float
    E_BE: float
    J_AE: float
    delta_AB: float
    delta_AE: float
    delta_BA: float
    delta_BE: float
    E_A_BE: float
    E_B_AE: float
    E_E_AB: float
    r1: float
    r2: float
    r3: float
    r4: float
    r5: float
    spreads: dict


class _TripleParts:
    """Entropies, marginals, EOFs and (lazily) ordered-pair correlations."""

    def __init__(self, psi: PureState, cfg: OptimizerConfig | None):
        self.labels = psi.layout.labels
        self.cfg = cfg
        self.rho = {}
        self.s_single = {}
        self.s_pair = {}
        self.eof = {}
        for x in self.labels:
            self.s_single[x] = von_neumann_entropy(psi.reduced(x))
        for i in range(3):
            for j in range(i + 1, 3):
                pair = (self.labels[i], self.labels[j])
                rho = psi.reduced(pair)
                self.rho[frozenset(pair)] = rho
                self.s_pair[frozenset(pair)] = von_neumann_entropy(rho)
                self.eof[frozenset(pair)] = eof_two_qubit(rho)
        for x in self.labels:
            others = frozenset(l for l in self.labels if l != x)
            if abs(self.s_pair[others] - self.s_single[x]) > ENTROPY_SLACK:
                raise InternalInconsistencyError(
                    "pair/complement entropies disagree; the global state is not pure")
        self._cc = {}

    def cc(self, unmeasured: str, measured: str) -> MeasureResult:
        key = (unmeasured, measured)
        if key not in self._cc:
            rho = self.rho[frozenset(key)]
            self._cc[key] = classical_correlation(rho, unmeasured, measured, self.cfg)
        return self._cc[key]

    def discord(self, unmeasured: str, measured: str) -> float:
        info = (self.s_single[unmeasured] + self.s_single[measured]
                - self.s_pair[frozenset((unmeasured, measured))])
        return info - self.cc(unmeasured, measured).value


def _require_pure_qubit_triple(psi: PureState) -> tuple[str, str, str]:
    lay = psi.layout
    if len(lay.labels) != 3 or lay.dims != (2, 2, 2):
        raise UnsupportedDimensionError(
            f"need a pure state of three qubits, got dims {lay.dims}")
    return lay.labels


def _assemble_ledger(parts: _TripleParts, roles: tuple[str, str, str]) -> CorrelationLedger:
    a, b, e = roles
    s_a, s_b, s_e = (parts.s_single[x] for x in roles)
    s_ab = parts.s_pair[frozenset((a, b))]
    s_ae = parts.s_pair[frozenset((a, e))]
    s_be = parts.s_pair[frozenset((b, e))]
    e_ab = parts.eof[frozenset((a, b))]
    e_ae = parts.eof[frozenset((a, e))]
    e_be = parts.eof[frozenset((b, e))]
    j_ae = parts.cc(a, e).value
    d_ab = parts.discord(a, b)
    d_ae = parts.discord(a, e)
    d_ba = parts.discord(b, a)
    d_be = parts.discord(b, e)

    return CorrelationLedger(
        labels=roles,
        S_A=s_a, S_B=s_b, S_E=s_e, S_AB=s_ab, S_AE=s_ae, S_BE=s_be,
        E_AB=e_ab, E_AE=e_ae, E_BE=e_be,
        J_AE=j_ae,
        delta_AB=d_ab, delta_AE=d_ae, delta_BA=d_ba, delta_BE=d_be,
        E_A_BE=s_a, E_B_AE=s_b, E_E_AB=s_e,
        r1=e_ab + j_ae - s_a,
        r2=e_ab - d_ae - (s_ae - s_e),
        r3=d_ab - e_ae + (s_ab - s_b),
        r4=d_ab - (e_ae - s_e + s_b),
        r5=(e_ab + e_ae) - (d_ab + d_ae),
        spreads={"AB": parts.cc(a, b).spread, "AE": parts.cc(a, e).spread,
                 "BA": parts.cc(b, a).spread, "BE": parts.cc(b, e).spread},
    )


def koashi_winter_residual(psi: PureState, a: str, b: str, e: str,
                           cfg: OptimizerConfig | None = None) -> float:
    """E_ab + J<-_ae - S_a; zero up to optimizer slack on pure inputs."""
    labels = psi.layout.labels
    if set((a, b, e)) != set(labels) or len({a, b, e}) != 3:
        raise LabelError(f"(a, b, e) must be a permutation of {labels}")
    e_ab = eof_two_qubit(psi.reduced((a, b)))
    j_ae = classical_correlation(psi.reduced((a, e)), a, e, cfg).value
    s_a = von_neumann_entropy(psi.reduced(a))
    return e_ab + j_ae - s_a


def discord_ledger(psi: PureState, cfg: OptimizerConfig | None = None,
                   roles: tuple[str, str, str] | None = None) -> CorrelationLedger:
    """Fill the full ledger for a pure three-qubit state.

    ``roles`` reassigns which labels play (A, B, E); default is layout order.
    """
    labels = _require_pure_qubit_triple(psi)
    if roles is None:
        roles = labels
    elif set(roles) != set(labels) or len(set(roles)) != 3:
        raise LabelError(f"roles {roles} must be a permutation of {labels}")
    return _assemble_ledger(_TripleParts(psi, cfg), tuple(roles))


def focus_ledgers(psi: PureState, cfg: OptimizerConfig | None = None
                  ) -> dict[str, CorrelationLedger]:
    """One ledger per focus choice, sharing the measurement optimizations.

    The ledger for focus X uses roles (X, then the remaining labels in
    layout order), so its r5 is the conservation residual centred on X.
    """
    labels = _require_pure_qubit_triple(psi)
    parts = _TripleParts(psi, cfg)
    out = {}
    for focus in labels:
        roles = (focus,) + tuple(l for l in labels if l != focus)
        out[focus] = _assemble_ledger(parts, roles)
    return out


def conservation_residual(psi: PureState, focus: str,
                          cfg: OptimizerConfig | None = None) -> float:
    """(E_xy + E_xz) - (d<-_xy + d<-_xz) with x = focus, measuring y and z."""
    labels = _require_pure_qubit_triple(psi)
    if focus not in labels:
        raise LabelError(f"focus {focus!r} not in {labels}")
    y, z = (l for l in labels if l != focus)
    rho_xy = psi.reduced((focus, y))
    rho_xz = psi.reduced((focus, z))
    e_sum = eof_two_qubit(rho_xy) + eof_two_qubit(rho_xz)
    d_sum = (quantum_discord(rho_xy, focus, y, cfg).value
             + quantum_discord(rho_xz, focus, z, cfg).value)
    return e_sum - d_sum


@dataclass(frozen=True)
class SsaReport:
    """Entropy-inequality balance of one tripartite qubit state.

    I1 = S_AB + S_AE - S_B - S_E is the strong-subadditivity gap and
    I2 = I1 - Delta (held to 1e-12 by construction).  ``ss_holds`` checks
    I1 >= 0 at entropy precision; ``strengthened_holds`` checks
    I1 - max(0, Delta) >= 0 at discord precision.
    """

    delta: float
    delta_tilde: float
    I1: float
    I2: float
    ss_holds: bool
    strengthened_holds: bool
    E_AB: float
    E_AE: float
    delta_AB: float
    delta_AE: float
    S_AB: float
    S_AE: float
    S_B: float
    S_E: float
    spread_AB: float
    spread_AE: float


Arrow = Literal["second", "first"]


def delta_balance(rho: DensityMatrix, a: str, b: str, e: str,
                  cfg: OptimizerConfig | None = None,
                  arrow: Arrow = "second") -> SsaReport:
    """Evaluate Delta and both subadditivity inequalities on a mixed state.

    ``arrow`` selects the measured side of the two discord terms: "second"
    measures b and e respectively (the convention under which the pure-state
    conservation law makes Delta vanish), "first" measures a in both.
    """
    lay = rho.layout
    if set((a, b, e)) != set(lay.labels) or len({a, b, e}) != 3:
        raise LabelError(f"(a, b, e) must be a permutation of {lay.labels}")
    if lay.dims != (2, 2, 2):
        raise UnsupportedDimensionError(
            f"delta_balance supports qubit triples only, got dims {lay.dims}")
    if arrow not in ("second", "first"):
        raise ValueError(f"arrow must be 'second' or 'first', got {arrow!r}")

    rho_ab = partial_trace(rho, (a, b))
    rho_ae = partial_trace(rho, (a, e))
    s_ab = von_neumann_entropy(rho_ab)
    s_ae = von_neumann_entropy(rho_ae)
    s_b = von_neumann_entropy(partial_trace(rho, b))
    s_e = von_neumann_entropy(partial_trace(rho, e))

    e_ab = eof_two_qubit(rho_ab)
    e_ae = eof_two_qubit(rho_ae)
    if arrow == "second":
        dis_ab = quantum_discord(rho_ab, a, b, cfg)
        dis_ae = quantum_discord(rho_ae, a, e, cfg)
    else:
        dis_ab = quantum_discord(rho_ab, b, a, cfg)
        dis_ae = quantum_discord(rho_ae, e, a, cfg)

    delta = e_ab + e_ae - dis_ab.value - dis_ae.value
    delta_tilde = max(0.0, delta)
    i1 = s_ab + s_ae - s_b - s_e
    return SsaReport(
        delta=delta, delta_tilde=delta_tilde, I1=i1, I2=i1 - delta,
        ss_holds=bool(i1 >= -ENTROPY_SLACK),
        strengthened_holds=bool(i1 - delta_tilde >= -DISCORD_SLACK),
        E_AB=e_ab, E_AE=e_ae,
        delta_AB=dis_ab.value, delta_AE=dis_ae.value,
        S_AB=s_ab, S_AE=s_ae, S_B=s_b, S_E=s_e,
        spread_AB=dis_ab.spread, spread_AE=dis_ae.spread,
    )


def example_family_state(alpha: float, lam: float) -> DensityMatrix:
    """(1 - lam) I/8 + lam |Psi><Psi| on labels (A, B, E) with

    |Psi> = p (|101> + |011>) + alpha |000>,  p = sqrt((1 - alpha^2) / 2),

    so 2 p^2 + alpha^2 = 1 keeps |Psi> normalized for every alpha in [0, 1].
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    p = np.sqrt((1.0 - alpha * alpha) / 2.0)
    psi = np.zeros(8, dtype=complex)
    psi[0b101] = p
    psi[0b011] = p
    psi[0b000] = alpha
    rho = (1.0 - lam) * np.eye(8) / 8.0 + lam * np.outer(psi, psi.conj())
    return DensityMatrix(rho, SubsystemLayout((2, 2, 2), ("A", "B", "E")))


def ssa_sweep(lam: float, alpha_grid, cfg: OptimizerConfig | None = None,
              arrow: Arrow = "second") -> list[SsaReport]:
    """One SsaReport per grid point, in grid order.

    Grid point ``i`` runs with child seed ``cfg.seed + i`` so sweeps are
    reproducible point by point regardless of evaluation order.
    """
    cfg = cfg or OptimizerConfig()
    reports = []
    for i, alpha in enumerate(alpha_grid):
        child = replace(cfg, seed=cfg.seed + i)
        rho = example_family_state(float(alpha), lam)
        reports.append(delta_balance(rho, "A", "B", "E", child, arrow))
    return reports
