"""Dense quantum-state containers and linear-algebra primitives.

Index convention: subsystems are listed left to right with the leftmost
label most significant (row-major).  For dims ``(2, 2)`` the basis vector
``|a b>`` sits at flat index ``a*2 + b``, and ``tensor`` composes states in
that order via the Kronecker product.

All containers validate their defining invariants at construction time and
are immutable afterwards; every function here is a pure function of its
arguments (randomness enters only through explicit seeds).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

import numpy as np
import scipy.linalg

#: Hard cap on the total Hilbert-space dimension.  2 * 8 * 8 covers the
#: largest scenario analysed here (one clean qubit, three mixed qubits and
#: their purifying environment) while keeping dense eigensolves sub-second.
MAX_TOTAL_DIM = 128

#: Eigenvalues at or below this are treated as exact zeros (rank counting,
#: entropy sums); the threshold sits below double-precision eigensolver noise.
RANK_CUTOFF = 1e-12

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-9
NORM_ATOL = 1e-10
UNITARY_ATOL = 1e-10


class QStateError(Exception):
    """Base class for errors raised by this package."""


class LabelError(QStateError):
    """A subsystem label is unknown or used inconsistently."""


class KindMismatchError(QStateError):
    """Operands mix pure-state and density-matrix kinds."""


class UnsupportedDimensionError(QStateError):
    """The operation does not support the requested dimension."""


class InternalInconsistencyError(QStateError):
    """A computed quantity violates a bound it must satisfy."""


class InvariantViolation(QStateError):
    """A validated container rejected its input.

    ``invariant`` is a short machine-readable name ("trace", "hermitian",
    "norm", ...) surfaced by file-loading diagnostics and the CLI.
    """

    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        super().__init__(f"invariant violated: {invariant} ({detail})")


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered subsystem dimensions and their distinct labels."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if not self.dims or len(self.dims) != len(self.labels):
            raise InvariantViolation(
                "layout", "dims and labels must be nonempty and equal-length")
        if any(d < 2 for d in self.dims):
            raise InvariantViolation(
                "layout", f"every subsystem dimension must be >= 2, got {self.dims}")
        if len(set(self.labels)) != len(self.labels):
            raise InvariantViolation(
                "layout", f"labels must be distinct, got {self.labels}")
        if self.total_dim > MAX_TOTAL_DIM:
            raise UnsupportedDimensionError(
                f"total dimension {self.total_dim} exceeds cap {MAX_TOTAL_DIM}")

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(
                f"unknown subsystem label {label!r}; layout has {self.labels}"
            ) from None

    def dim_of(self, label: str) -> int:
        return self.dims[self.index(label)]

    def positions(self, labels: Iterable[str]) -> tuple[int, ...]:
        """Positions of ``labels`` in layout order (input order is ignored)."""
        wanted = {str(l) for l in labels}
        unknown = wanted - set(self.labels)
        if unknown:
            raise LabelError(
                f"unknown subsystem label(s) {sorted(unknown)}; layout has {self.labels}")
        return tuple(i for i, l in enumerate(self.labels) if l in wanted)

    def concat(self, other: "SubsystemLayout") -> "SubsystemLayout":
        return SubsystemLayout(self.dims + other.dims, self.labels + other.labels)


def _as_labels(labels) -> tuple[str, ...]:
    if isinstance(labels, str):
        return (labels,)
    return tuple(labels)


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over a subsystem layout."""

    amplitudes: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.layout.total_dim:
            raise InvariantViolation(
                "shape", f"expected {self.layout.total_dim} amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise InvariantViolation("norm", f"|psi| = {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()),
                             self.layout)

    def reduced(self, keep) -> "DensityMatrix":
        """Reduced density matrix on the kept labels."""
        return partial_trace(self.to_density(), keep)


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-one positive-semidefinite Hermitian matrix over a layout."""

    entries: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        mat = np.array(self.entries, dtype=complex)
        d = self.layout.total_dim
        if mat.shape != (d, d):
            raise InvariantViolation(
                "shape", f"expected a {d}x{d} matrix, got shape {mat.shape}")
        herm_dev = np.abs(mat - mat.conj().T).max()
        if herm_dev > HERMITIAN_ATOL:
            raise InvariantViolation(
                "hermitian", f"max |rho - rho^dag| = {herm_dev:.3e}")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise InvariantViolation("trace", f"trace = {tr!r}, expected 1")
        wmin = np.linalg.eigvalsh(mat)[0]
        if wmin < -PSD_ATOL:
            raise InvariantViolation(
                "positive", f"minimum eigenvalue {wmin:.3e} below -{PSD_ATOL}")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.layout.total_dim


@dataclass(frozen=True)
class UnitaryMatrix:
    """Square complex matrix with U U^dag = I."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.array(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvariantViolation("shape", f"expected square matrix, got {mat.shape}")
        dev = np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])).max()
        if dev > UNITARY_ATOL:
            raise InvariantViolation("unitary", f"max |U U^dag - I| = {dev:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def tensor(a, b):
    """Kronecker composition of two states of the same kind.

    The result's layout is the concatenation of the operand layouts, so the
    left operand supplies the most significant indices.
    """
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(np.kron(a.amplitudes, b.amplitudes),
                         a.layout.concat(b.layout))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(np.kron(a.entries, b.entries),
                             a.layout.concat(b.layout))
    raise KindMismatchError(
        f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not named in ``keep``.

    ``keep`` is a label or an iterable of labels; the kept subsystems retain
    their original order regardless of the order given.  The trace is
    preserved exactly up to floating-point summation (within 1e-12).
    """
    lay = rho.layout
    keep_pos = lay.positions(_as_labels(keep))
    if not keep_pos:
        raise LabelError("must keep at least one subsystem")
    n = len(lay.dims)
    t = rho.entries.reshape(lay.dims + lay.dims)
    keep_set = set(keep_pos)
    row_idx = list(range(n))
    col_idx = [n + i if i in keep_set else i for i in range(n)]
    out_idx = [i for i in keep_pos] + [n + i for i in keep_pos]
    reduced = np.einsum(t, row_idx + col_idx, out_idx)
    kept_dims = tuple(lay.dims[i] for i in keep_pos)
    kept_labels = tuple(lay.labels[i] for i in keep_pos)
    d = prod(kept_dims)
    return DensityMatrix(reduced.reshape(d, d),
                         SubsystemLayout(kept_dims, kept_labels))


def partial_transpose(rho: DensityMatrix, sub: str) -> np.ndarray:
    """Transpose the indices of one subsystem; returns a plain matrix.

    The result is Hermitian but in general not positive, which is exactly
    what the negativity needs.  Applying the operation twice returns the
    input entries bit-exactly (it is a pure permutation).
    """
    lay = rho.layout
    i = lay.index(sub)
    n = len(lay.dims)
    t = rho.entries.reshape(lay.dims + lay.dims)
    t = np.swapaxes(t, i, n + i)
    d = lay.total_dim
    return np.ascontiguousarray(t.reshape(d, d))


def purify(rho: DensityMatrix, ancilla_label: str) -> PureState:
    """Embed ``rho`` as the marginal of a pure state on layout + ancilla.

    The ancilla dimension equals the rank of ``rho`` (eigenvalues above
    ``RANK_CUTOFF``), clamped to a minimum of 2 so the ancilla is a valid
    subsystem.  Eigenvalues are placed in descending order, so a pure input
    leaves all amplitude on ancilla basis state 0.
    """
    w, v = np.linalg.eigh(rho.entries)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    significant = w > RANK_CUTOFF
    w, v = w[significant], v[:, significant]
    anc_dim = max(int(w.size), 2)
    amps = np.zeros(rho.dim * anc_dim, dtype=complex)
    for k in range(w.size):
        basis_k = np.zeros(anc_dim)
        basis_k[k] = 1.0
        amps += np.sqrt(w[k]) * np.kron(v[:, k], basis_k)
    amps /= np.linalg.norm(amps)
    lay = rho.layout
    out_layout = SubsystemLayout(lay.dims + (anc_dim,), lay.labels + (ancilla_label,))
    return PureState(amps, out_layout)


def eigh(h: np.ndarray, atol: float = 1e-8):
    """Hermitian eigendecomposition: eigenvalues ascending, eigenvector columns.

    Rejects inputs that are not square or deviate from Hermiticity by more
    than ``atol`` in any element.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvariantViolation("shape", f"expected square matrix, got {h.shape}")
    dev = np.abs(h - h.conj().T).max()
    if dev > atol:
        raise InvariantViolation("hermitian", f"max |H - H^dag| = {dev:.3e}")
    return np.linalg.eigh(h)


def random_pure_state(layout: SubsystemLayout, seed: int) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    rng = np.random.default_rng(seed)
    d = layout.total_dim
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v), layout)


def random_unitary(dim: int, seed: int) -> UnitaryMatrix:
    """Haar-random unitary via QR of a complex Ginibre matrix.

    The diagonal of the triangular factor is phase-fixed so the distribution
    is exactly the Haar measure (Mezzadri's recipe), deterministic per seed.
    """
    if dim < 1:
        raise UnsupportedDimensionError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    z /= np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return UnitaryMatrix(q * ph)
