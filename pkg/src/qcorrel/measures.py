"""Entropic and correlation measures, all in bits (base-2 logarithms).

Classical correlation J<-(X|Y) is the largest drop in the entropy of X
achievable by a rank-1 projective measurement of Y,

    J = max_{basis of Y} [ S(rho_X) - sum_y p_y S(rho_X | y) ],

and quantum discord is the mutual information left over, d<- = I(X:Y) - J.
The arrow always points at the measured subsystem.

The measurement basis is the column set of a unitary built from a fixed
ordered product of two-level rotations (one rotation angle and one phase
each) followed by a diagonal phase layer, d^2 real parameters in total for
a d-dimensional measured side.  The parametrization is surjective over
measurement bases; the redundancy (diagonal phases never move projectors)
is accepted for simplicity.  The maximization runs Nelder-Mead from
several seeded random starting points and keeps the best restart, so more
restarts can only improve the value.

Limitation: the optimization is over rank-1 projective measurements, not
general POVMs.  For qubit measured sides the projective optimum is the
relevant extremal point in practice; the restart spread is reported so the
remaining optimizer slack is visible to callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.optimize

from .states import (
    DensityMatrix,
    InternalInconsistencyError,
    LabelError,
    PureState,
    UnsupportedDimensionError,
    partial_trace,
    partial_transpose,
)

#: Spectrum weights at or below this contribute nothing to entropy sums.
EIG_CUTOFF = 1e-12

#: Negative measure values above this magnitude indicate a genuine bug;
#: smaller ones are numerical noise and are clamped to zero.
NEG_FLOOR = 1e-9

#: Multi-start counts by measured dimension (used when the config does not
#: pin an explicit restart count).
DIM_RESTARTS = {2: 20, 4: 50, 8: 80}

MAX_MEASURED_DIM = 8

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


def _spectrum_entropy(w: np.ndarray) -> float:
    w = w[w > EIG_CUTOFF]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log2(w)).sum() + 0.0)  # + 0.0 normalizes -0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, in [0, log2 dim]."""
    return _spectrum_entropy(np.linalg.eigvalsh(rho.entries))


def binary_entropy(x: float) -> float:
    """Entropy of a {x, 1-x} distribution in bits."""
    x = min(max(float(x), 0.0), 1.0)
    return _spectrum_entropy(np.array([x, 1.0 - x]))


def conditional_entropy(rho: DensityMatrix, given: str) -> float:
    """S(rest | given) = S(rho) - S(rho_given); may be negative."""
    if len(rho.layout.labels) < 2:
        raise LabelError("conditional entropy needs at least two subsystems")
    s_given = von_neumann_entropy(partial_trace(rho, given))
    return von_neumann_entropy(rho) - s_given


def mutual_information(rho: DensityMatrix, pair: tuple[str, str]) -> float:
    """I(X:Y) = S_X + S_Y - S_XY on the reduced pair state."""
    x, y = pair
    pair_rho = partial_trace(rho, (x, y))
    s_x = von_neumann_entropy(partial_trace(pair_rho, x))
    s_y = von_neumann_entropy(partial_trace(pair_rho, y))
    return s_x + s_y - von_neumann_entropy(pair_rho)


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the measurement search.

    ``restarts=None`` picks the per-dimension default (20 for qubits, 50
    for dimension 4, 80 for dimension 8).  ``tol`` stops a restart once the
    simplex objective spread falls below it (bits).
    """

    restarts: int | None = None
    tol: float = 1e-8
    max_iters: int = 2000
    seed: int = 42

    def __post_init__(self):
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0.0 < self.tol <= 1e-4:
            raise ValueError("tol must be positive and at most 1e-4")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")

    def resolved_restarts(self, measured_dim: int) -> int:
        if self.restarts is not None:
            return self.restarts
        return DIM_RESTARTS.get(measured_dim, DIM_RESTARTS[MAX_MEASURED_DIM])


def measurement_unitary(params: np.ndarray, dim: int) -> np.ndarray:
    """Unitary from dim^2 angles: two-level rotations times diagonal phases."""
    params = np.asarray(params, dtype=float)
    if params.size != dim * dim:
        raise ValueError(f"expected {dim * dim} parameters, got {params.size}")
    n_rot = dim * (dim - 1) // 2
    u = np.diag(np.exp(1j * params[2 * n_rot:]))
    for k, (i, j) in enumerate(combinations(range(dim), 2)):
        theta, phi = params[2 * k], params[2 * k + 1]
        rot = np.eye(dim, dtype=complex)
        c, s = np.cos(theta), np.sin(theta)
        rot[i, i] = c
        rot[j, j] = c
        rot[i, j] = -s * np.exp(1j * phi)
        rot[j, i] = s * np.exp(-1j * phi)
        u = rot @ u
    return u


@dataclass(frozen=True)
class Measurement:
    """Complete set of rank-1 orthogonal projectors on one subsystem."""

    sub: str
    projectors: tuple[np.ndarray, ...]
    params: np.ndarray

    def __post_init__(self):
        projs = tuple(np.asarray(p, dtype=complex) for p in self.projectors)
        d = projs[0].shape[0]
        total = sum(projs)
        if np.abs(total - np.eye(d)).max() > 1e-10:
            raise InternalInconsistencyError("projectors do not sum to identity")
        for p in projs:
            if np.abs(p @ p - p).max() > 1e-10 or abs(p.trace() - 1.0) > 1e-10:
                raise InternalInconsistencyError(
                    "projector is not idempotent rank-1")
        object.__setattr__(self, "projectors", projs)
        object.__setattr__(self, "params", np.asarray(self.params, dtype=float))

    @classmethod
    def from_params(cls, sub: str, dim: int, params: np.ndarray) -> "Measurement":
        u = measurement_unitary(params, dim)
        projs = tuple(np.outer(u[:, x], u[:, x].conj()) for x in range(dim))
        return cls(sub, projs, params)


@dataclass(frozen=True)
class MeasureResult:
    """Value of an optimized measure plus diagnostics of the search."""

    value: float
    optimal_measurement: Measurement | None
    converged: bool
    spread: float
    clamped: bool = False

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise InternalInconsistencyError(f"non-finite measure value {self.value}")
        if self.spread < 0:
            raise InternalInconsistencyError(f"negative restart spread {self.spread}")


def _reduced_pair(rho: DensityMatrix, unmeasured: str, measured: str):
    if unmeasured == measured:
        raise LabelError("unmeasured and measured labels must differ")
    red = partial_trace(rho, (unmeasured, measured))
    meas_axis = red.layout.index(measured)
    return red, meas_axis


def _make_objective(red: DensityMatrix, meas_axis: int):
    """Closure computing J(params) = S(X) - sum_y p_y S(X|y)."""
    dims = red.layout.dims
    d_meas = dims[meas_axis]
    k_unm = dims[1 - meas_axis]
    t = red.entries.reshape(dims + dims)
    # C[x, a, a'] = <m_x| rho |m_x> partial inner product over the measured slot
    subs = "ex,aeAE,Ex->xaA" if meas_axis == 1 else "ex,eaEA,Ex->xaA"
    unm_label = red.layout.labels[1 - meas_axis]
    s_unmeasured = von_neumann_entropy(partial_trace(red, unm_label))

    if k_unm == 2:

        def conditional_term(c_stack: np.ndarray, p: np.ndarray) -> float:
            # closed-form eigenvalues of the unnormalized 2x2 conditionals
            a = c_stack[:, 0, 0].real
            b = c_stack[:, 1, 1].real
            off2 = np.abs(c_stack[:, 0, 1]) ** 2
            disc = np.sqrt(np.maximum((a - b) ** 2 + 4.0 * off2, 0.0))
            lam1 = np.maximum((a + b + disc) / (2.0 * p), 0.0)
            lam2 = np.maximum((a + b - disc) / (2.0 * p), 0.0)
            ent = np.zeros_like(p)
            for lam in (lam1, lam2):
                nz = lam > EIG_CUTOFF
                ent[nz] -= lam[nz] * np.log2(lam[nz])
            return float(p @ ent)

    else:

        def conditional_term(c_stack: np.ndarray, p: np.ndarray) -> float:
            w = np.linalg.eigvalsh(c_stack) / p[:, None]
            w = np.where(w > EIG_CUTOFF, w, 1.0)  # log2(1) = 0 for clipped weights
            return float(p @ (-(w * np.log2(w)).sum(axis=1)))

    def objective(params: np.ndarray) -> float:
        u = measurement_unitary(params, d_meas)
        c_stack = np.einsum(subs, u.conj(), t, u)
        p = np.einsum("xaa->x", c_stack).real
        keep = p > EIG_CUTOFF
        return s_unmeasured - conditional_term(c_stack[keep], p[keep])

    return objective, d_meas, s_unmeasured


def _maximize(red: DensityMatrix, meas_axis: int, cfg: OptimizerConfig):
    objective, d_meas, s_unmeasured = _make_objective(red, meas_axis)
    if d_meas > MAX_MEASURED_DIM:
        raise UnsupportedDimensionError(
            f"measured dimension {d_meas} above cap {MAX_MEASURED_DIM}")
    rng = np.random.default_rng(cfg.seed)
    n_params = d_meas * d_meas
    best_value = -np.inf
    best_params = None
    best_success = False
    values = []
    for _ in range(cfg.resolved_restarts(d_meas)):
        x0 = rng.uniform(0.0, 2.0 * np.pi, n_params)
        res = scipy.optimize.minimize(
            lambda x: -objective(x), x0, method="Nelder-Mead",
            options={"maxiter": cfg.max_iters, "xatol": 1e-6,
                     "fatol": cfg.tol, "adaptive": False})
        value = -res.fun
        values.append(value)
        if value > best_value:
            best_value, best_params, best_success = value, res.x, bool(res.success)
    spread = float(max(values) - min(values))
    return best_value, best_params, spread, best_success, d_meas, s_unmeasured


def classical_correlation(rho: DensityMatrix, unmeasured: str, measured: str,
                          cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Maximized one-way classical correlation J<-(unmeasured | measured).

    The returned value is a lower bound on the true maximum (the search can
    only under-optimize); it is clamped into [0, min(S_X, S_Y)] and outcomes
    with probability below 1e-12 contribute nothing.
    """
    cfg = cfg or OptimizerConfig()
    red, meas_axis = _reduced_pair(rho, unmeasured, measured)
    value, params, spread, success, d_meas, s_unm = _maximize(red, meas_axis, cfg)

    clamped = False
    if value < -NEG_FLOOR:
        raise InternalInconsistencyError(
            f"classical correlation {value} below -{NEG_FLOOR}")
    if value < 0.0:
        value, clamped = 0.0, True
    s_meas = von_neumann_entropy(partial_trace(red, measured))
    bound = min(s_unm, s_meas)
    if value > bound:
        value = min(value, bound + NEG_FLOOR)
    measurement = Measurement.from_params(measured, d_meas, params)
    return MeasureResult(float(value), measurement, success, spread, clamped)


def quantum_discord(rho: DensityMatrix, unmeasured: str, measured: str,
                    cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Discord d<-(unmeasured | measured) = I - J with the same measurement.

    Under-optimization of J only inflates the result, so the value is
    nonnegative up to numerical noise; |value| < 1e-9 is reported as 0.
    """
    cc = classical_correlation(rho, unmeasured, measured, cfg)
    info = mutual_information(rho, (unmeasured, measured))
    value = info - cc.value
    clamped = cc.clamped
    if value < -NEG_FLOOR:
        raise InternalInconsistencyError(f"discord {value} below -{NEG_FLOOR}")
    if abs(value) < NEG_FLOOR:
        value, clamped = 0.0, True
    return MeasureResult(float(value), cc.optimal_measurement, cc.converged,
                         cc.spread, clamped)


def concurrence_two_qubit(rho: DensityMatrix) -> float:
    """Wootters concurrence C = max(0, l1 - l2 - l3 - l4)."""
    if rho.layout.dims != (2, 2):
        raise UnsupportedDimensionError(
            f"concurrence needs a two-qubit layout, got dims {rho.layout.dims}")
    m = rho.entries @ _YY @ rho.entries.conj() @ _YY
    ev = np.linalg.eigvals(m).real
    lam = np.sqrt(np.maximum(ev, 0.0))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def eof_two_qubit(rho: DensityMatrix) -> float:
    """Closed-form two-qubit entanglement of formation (Wootters)."""
    c = concurrence_two_qubit(rho)
    return binary_entropy((1.0 + np.sqrt(max(1.0 - c * c, 0.0))) / 2.0)


def eof_pure_bipartite(psi: PureState, side) -> float:
    """EOF of a pure state across side | rest: the reduced-state entropy."""
    labels = psi.layout.labels
    side = (side,) if isinstance(side, str) else tuple(side)
    if not side or set(side) == set(labels):
        raise LabelError("side must be a nonempty proper subset of the labels")
    return von_neumann_entropy(psi.reduced(side))


def eof_via_koashi_winter(psi: PureState, a: str, b: str,
                          cfg: OptimizerConfig | None = None) -> MeasureResult:
    """EOF of the (a, b) marginal from the identity E_ab = d<-_aE + S(a|E).

    ``psi`` must carry exactly three subsystems; the one not named is the
    measured environment.  Because the discord search can only
    under-optimize J, the result upper-bounds the true EOF.
    """
    labels = psi.layout.labels
    if len(labels) != 3:
        raise LabelError(f"need exactly three subsystems, got {labels}")
    if a == b or a not in labels or b not in labels:
        raise LabelError(f"labels {a!r}, {b!r} must be two distinct members of {labels}")
    env = next(l for l in labels if l not in (a, b))
    rho_ae = psi.reduced((a, env))
    dis = quantum_discord(rho_ae, unmeasured=a, measured=env, cfg=cfg)
    value = dis.value + conditional_entropy(rho_ae, given=env)
    return MeasureResult(float(value), dis.optimal_measurement, dis.converged,
                         dis.spread, dis.clamped)


def negativity(rho: DensityMatrix, sub: str) -> float:
    """(||rho^{T_sub}||_1 - 1) / 2; zero for every PPT state."""
    w = np.linalg.eigvalsh(partial_transpose(rho, sub))
    value = (np.abs(w).sum() - 1.0) / 2.0
    return 0.0 if abs(value) < 1e-10 else float(value)
