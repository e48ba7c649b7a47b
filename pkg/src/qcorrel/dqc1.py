"""One-clean-qubit (DQC1) state construction and correlation bookkeeping.

The protocol's post-circuit state of the clean qubit A and the n mixed
qubits B is constructed directly in block form,

    rho_AB = [[I_n, U^dag], [U, I_n]] / 2^(n+1),

rather than simulated gate by gate.  Purifying the mixedness of B into an
environment E gives

    |psi_ABE> = sum_i c_i (|0> + e^{i theta_i} |1>)/sqrt(2) (x) |u_i> |e_i>,

with exp(i theta_i), |u_i> the eigensystem of U and c_i^2 the weights of B's
initial spectrum (uniform 1/2^n in the standard protocol).

Measuring the clean qubit recovers the trace of U.  Direct evaluation of
Tr[(sigma_x (x) I) rho_AB] on the block form gives Re Tr(U) / 2^n and the
sigma_y expectation gives +Im Tr(U) / 2^n, so the estimator returned here is

    trace_estimate = 2^n (<sigma_x> + i <sigma_y>) = Tr(U)   (exactly).

Both marginals rho_AB and rho_AE admit the explicit separable decomposition
sum_i c_i^2 |phi_i><phi_i| (x) |u_i><u_i| (resp. |e_i><e_i|), so the clean
qubit never shares entanglement with B or E; the ledger certifies this
numerically via the partial-transpose negativity (and, for n = 1, the
concurrence).  What the circuit does create is discord d<-_BA together with
a rearrangement of the B:E entanglement, tracked by the residuals

    r8:   E_BE = E_E(AB) + d<-_BA - E_A(BE)
    r9:   d<-_BE = E_E(AB) - E_A(BE)
    r10:  d<-_BA = E_BE - d<-_BE
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .measures import (
    OptimizerConfig,
    concurrence_two_qubit,
    conditional_entropy,
    eof_two_qubit,
    negativity,
    quantum_discord,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    InternalInconsistencyError,
    InvariantViolation,
    PureState,
    SubsystemLayout,
    UnsupportedDimensionError,
    partial_trace,
    random_unitary,
    UnitaryMatrix,
)

MAX_MIXED_QUBITS = 3


@dataclass(frozen=True)
class Dqc1Instance:
    """A DQC1 problem: the unitary, its eigensystem and B's initial weights.

    ``weights[i]`` is c_i^2, the population of eigenvector ``|u_i>`` in the
    initial state of B; the standard protocol uses the uniform 1/2^n.
    """

    n: int
    unitary: UnitaryMatrix
    eigenphases: np.ndarray
    eigenvectors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_MIXED_QUBITS:
            raise UnsupportedDimensionError(
                f"n must be between 1 and {MAX_MIXED_QUBITS}, got {self.n}")
        d = 2 ** self.n
        if self.unitary.dim != d:
            raise InvariantViolation(
                "shape", f"unitary dimension {self.unitary.dim} != 2^n = {d}")
        phases = np.asarray(self.eigenphases, dtype=float).reshape(d)
        vecs = np.asarray(self.eigenvectors, dtype=complex).reshape(d, d)
        weights = np.asarray(self.weights, dtype=float).reshape(d)
        recon = vecs @ np.diag(np.exp(1j * phases)) @ vecs.conj().T
        if np.abs(recon - self.unitary.entries).max() > 1e-9:
            raise InvariantViolation(
                "eigendecomposition", "U does not match V diag(e^{i theta}) V^dag")
        if weights.min() < 0.0 or abs(weights.sum() - 1.0) > 1e-12:
            raise InvariantViolation(
                "weights", f"weights must be nonnegative and sum to 1, got {weights}")
        for name, arr in (("eigenphases", phases), ("eigenvectors", vecs),
                          ("weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_unitary(cls, unitary, weights=None) -> "Dqc1Instance":
        """Build an instance from a unitary matrix (array or UnitaryMatrix).

        The eigensystem comes from a complex Schur decomposition, which is
        diagonal for unitary input and keeps the eigenvector basis
        orthonormal even inside degenerate eigenspaces.  Eigenphases land
        in (-pi, pi].
        """
        if not isinstance(unitary, UnitaryMatrix):
            unitary = UnitaryMatrix(unitary)
        d = unitary.dim
        n = d.bit_length() - 1
        if 2 ** n != d:
            raise UnsupportedDimensionError(
                f"unitary dimension {d} is not a power of two")
        t, vecs = scipy.linalg.schur(unitary.entries, output="complex")
        phases = np.angle(np.diag(t))
        if weights is None:
            weights = np.full(d, 1.0 / d)
        return cls(n, unitary, phases, vecs, np.asarray(weights, dtype=float))

    @classmethod
    def random(cls, n: int, seed: int, weights=None) -> "Dqc1Instance":
        return cls.from_unitary(random_unitary(2 ** n, seed), weights)

    @property
    def uniform_weights(self) -> bool:
        d = 2 ** self.n
        return bool(np.abs(self.weights - 1.0 / d).max() <= 1e-12)

    @property
    def exact_trace(self) -> complex:
        """Tr(U), the target of the standard protocol."""
        return complex(self.unitary.entries.trace())

    @property
    def weighted_trace(self) -> complex:
        """2^n Tr(rho_B U) = 2^n sum_i c_i^2 e^{i theta_i}.

        This is what the clean-qubit estimator returns when B starts in the
        non-maximally-mixed state with the instance's weights; it reduces to
        Tr(U) for uniform weights.
        """
        d = 2 ** self.n
        return complex(d * (self.weights * np.exp(1j * self.eigenphases)).sum())


def build_dqc1_state(inst: Dqc1Instance) -> DensityMatrix:
    """Post-circuit rho_AB in block form, labels (A, B)."""
    if not inst.uniform_weights:
        raise ValueError(
            "block form assumes the maximally mixed B; use "
            "build_nonmaximal_dqc1 for non-uniform weights")
    d = 2 ** inst.n
    u = inst.unitary.entries
    rho = np.zeros((2 * d, 2 * d), dtype=complex)
    rho[:d, :d] = np.eye(d)
    rho[d:, d:] = np.eye(d)
    rho[:d, d:] = u.conj().T
    rho[d:, :d] = u
    rho /= 2 * d
    return DensityMatrix(rho, SubsystemLayout((2, d), ("A", "B")))


def build_dqc1_purification(inst: Dqc1Instance) -> PureState:
    """Joint pure state |psi_ABE>, labels (A, B, E), dims (2, 2^n, 2^n).

    The environment eigenbasis |e_i> is the computational basis of E.  For
    uniform weights the E-marginal reproduces ``build_dqc1_state`` exactly.
    """
    d = 2 ** inst.n
    amps = np.zeros(2 * d * d, dtype=complex)
    for i in range(d):
        qubit = np.array([1.0, np.exp(1j * inst.eigenphases[i])]) / np.sqrt(2.0)
        env = np.zeros(d)
        env[i] = 1.0
        amps += np.sqrt(inst.weights[i]) * np.kron(qubit,
                                                   np.kron(inst.eigenvectors[:, i], env))
    return PureState(amps, SubsystemLayout((2, d, d), ("A", "B", "E")))


def build_nonmaximal_dqc1(inst: Dqc1Instance) -> PureState:
    """Purified protocol state for an arbitrarily weighted initial B.

    Identical to ``build_dqc1_purification`` (the formula is the same); with
    one weight equal to 1 the state is a product of A(BE) and the estimator
    sees a single eigenphase, carrying no trace information beyond it.
    """
    return build_dqc1_purification(inst)


def trace_estimate(rho_ab: DensityMatrix) -> complex:
    """Clean-qubit readout 2^n (<sigma_x> + i <sigma_y>) of an AB state.

    Equals Tr(U) exactly for states built by ``build_dqc1_state`` and
    2^n Tr(rho_B U) for the non-maximally-mixed variant.
    """
    lay = rho_ab.layout
    if len(lay.dims) != 2 or lay.dims[0] != 2:
        raise UnsupportedDimensionError(
            f"expected layout (clean qubit, register), got dims {lay.dims}")
    rho_a = partial_trace(rho_ab, lay.labels[0]).entries
    sx = float((rho_a[0, 1] + rho_a[1, 0]).real)
    sy = float((1j * (rho_a[0, 1] - rho_a[1, 0])).real)
    scale = lay.dims[1]
    return complex(scale * sx, scale * sy)


@dataclass(frozen=True)
class Dqc1Ledger:
    """Correlation bookkeeping of one DQC1 run.

    Discord-bearing fields are filled for n <= 2 and are None for n = 3
    (entropy-only coverage).  ``E_BE`` comes from the two-qubit closed form
    for n = 1; for n = 2 it is obtained through the Koashi-Winter route
    E_BE = d<-_BA + S(B|A), which makes r8 an entropy identity there while
    r9 and r10 remain genuine optimizer-vs-entropy checks.  ``E_AB`` and
    ``E_AE`` vanish by the explicit separable decomposition of the marginals
    (certified numerically by ``negativity_AB`` and, for n = 1, the
    concurrence).
    """

    n: int
    E_AB: float | None
    E_AE: float | None
    E_BE: float | None
    delta_AB: float | None
    delta_BA: float | None
    delta_AE: float | None
    delta_BE: float | None
    E_A_BE: float
    E_B_AE: float
    E_E_AB: float
    negativity_AB: float
    concurrence_AB: float | None
    trace_estimate: complex
    exact_trace: complex
    r8: float | None
    r9: float | None
    r10: float | None
    spreads: dict
    e_be_source: str

    def __post_init__(self):
        bit_fields = (self.E_AB, self.E_AE, self.E_BE, self.delta_AB,
                      self.delta_BA, self.delta_AE, self.delta_BE,
                      self.E_A_BE, self.E_B_AE, self.E_E_AB)
        for v in bit_fields:
            if v is not None and v < -1e-9:
                raise InternalInconsistencyError(
                    f"ledger holds a negative measure value {v}")


def dqc1_ledger(inst: Dqc1Instance, cfg: OptimizerConfig | None = None) -> Dqc1Ledger:
    """Build the full redistribution ledger for one instance."""
    psi = build_dqc1_purification(inst)
    rho_ab = psi.reduced(("A", "B"))
    rho_ae = psi.reduced(("A", "E"))
    rho_be = psi.reduced(("B", "E"))

    s_a = von_neumann_entropy(psi.reduced("A"))
    s_b = von_neumann_entropy(psi.reduced("B"))
    s_e = von_neumann_entropy(psi.reduced("E"))

    neg_ab = negativity(rho_ab, "A")
    conc_ab = concurrence_two_qubit(rho_ab) if inst.n == 1 else None

    estimate = trace_estimate(rho_ab)
    exact = inst.exact_trace if inst.uniform_weights else inst.weighted_trace

    if inst.n > 2:
        return Dqc1Ledger(
            n=inst.n, E_AB=None, E_AE=None, E_BE=None,
            delta_AB=None, delta_BA=None, delta_AE=None, delta_BE=None,
            E_A_BE=s_a, E_B_AE=s_b, E_E_AB=s_e,
            negativity_AB=neg_ab, concurrence_AB=conc_ab,
            trace_estimate=estimate, exact_trace=exact,
            r8=None, r9=None, r10=None, spreads={}, e_be_source="skipped")

    dis_ab = quantum_discord(rho_ab, "A", "B", cfg)
    dis_ba = quantum_discord(rho_ab, "B", "A", cfg)
    dis_ae = quantum_discord(rho_ae, "A", "E", cfg)
    dis_be = quantum_discord(rho_be, "B", "E", cfg)

    if inst.n == 1:
        e_ab = eof_two_qubit(rho_ab)
        e_ae = eof_two_qubit(rho_ae)
        e_be = eof_two_qubit(rho_be)
        source = "wootters"
    else:
        e_ab = 0.0
        e_ae = 0.0
        e_be = max(0.0, dis_ba.value + conditional_entropy(rho_ab, given="A"))
        source = "koashi-winter"

    r8 = e_be - (s_e + dis_ba.value - s_a)
    r9 = dis_be.value - (s_e - s_a)
    r10 = dis_ba.value - (e_be - dis_be.value)

    return Dqc1Ledger(
        n=inst.n, E_AB=e_ab, E_AE=e_ae, E_BE=e_be,
        delta_AB=dis_ab.value, delta_BA=dis_ba.value,
        delta_AE=dis_ae.value, delta_BE=dis_be.value,
        E_A_BE=s_a, E_B_AE=s_b, E_E_AB=s_e,
        negativity_AB=neg_ab, concurrence_AB=conc_ab,
        trace_estimate=estimate, exact_trace=exact,
        r8=r8, r9=r9, r10=r10,
        spreads={"AB": dis_ab.spread, "BA": dis_ba.spread,
                 "AE": dis_ae.spread, "BE": dis_be.spread},
        e_be_source=source)
