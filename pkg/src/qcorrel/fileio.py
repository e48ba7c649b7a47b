"""JSON serialization of states and unitaries.

File schema::

    {
      "dims": [2, 2, 2],
      "labels": ["A", "B", "E"],
      "kind": "density" | "pure" | "unitary",
      "entries": [[re, im], ...]
    }

``entries`` is the row-major flattening of the matrix (or the amplitude
vector for ``"pure"``).  ``labels`` is optional for ``"unitary"`` files.
Loading validates the container invariants and rejects violating files with
a diagnostic naming the violated invariant.
"""

from __future__ import annotations

import json
from math import prod

import numpy as np

from .states import (
    DensityMatrix,
    PureState,
    QStateError,
    SubsystemLayout,
    UnitaryMatrix,
)

KINDS = ("pure", "density", "unitary")


class StateFormatError(QStateError):
    """The file is structurally malformed (before invariant validation)."""


def _encode_entries(flat: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in flat]


def _decode_entries(raw, expected: int) -> np.ndarray:
    if not isinstance(raw, list):
        raise StateFormatError("'entries' must be a list of [re, im] pairs")
    if len(raw) != expected:
        raise StateFormatError(
            f"'entries' has {len(raw)} elements, expected {expected}")
    out = np.empty(expected, dtype=complex)
    for i, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise StateFormatError(f"entries[{i}] must be a [re, im] number pair")
        out[i] = complex(pair[0], pair[1])
    return out


def save_state(obj, path) -> None:
    """Write a PureState, DensityMatrix or UnitaryMatrix as JSON."""
    if isinstance(obj, PureState):
        doc = {"dims": list(obj.layout.dims), "labels": list(obj.layout.labels),
               "kind": "pure", "entries": _encode_entries(obj.amplitudes)}
    elif isinstance(obj, DensityMatrix):
        doc = {"dims": list(obj.layout.dims), "labels": list(obj.layout.labels),
               "kind": "density", "entries": _encode_entries(obj.entries.reshape(-1))}
    elif isinstance(obj, UnitaryMatrix):
        doc = {"dims": [obj.dim], "kind": "unitary",
               "entries": _encode_entries(obj.entries.reshape(-1))}
    else:
        raise StateFormatError(f"cannot serialize object of type {type(obj).__name__}")
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _load_document(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFormatError("top-level JSON value must be an object")
    for key in ("dims", "kind", "entries"):
        if key not in doc:
            raise StateFormatError(f"missing required key '{key}'")
    if doc["kind"] not in KINDS:
        raise StateFormatError(f"unknown kind {doc['kind']!r}, expected one of {KINDS}")
    dims = doc["dims"]
    if (not isinstance(dims, list) or not dims
            or not all(isinstance(d, int) and d >= 1 for d in dims)):
        raise StateFormatError("'dims' must be a list of positive integers")
    return doc


def load_state(path):
    """Load a pure state or density matrix, validating all invariants."""
    doc = _load_document(path)
    kind = doc["kind"]
    if kind == "unitary":
        raise StateFormatError(
            "file holds a unitary; use load_unitary() for kind 'unitary'")
    if "labels" not in doc:
        raise StateFormatError("missing required key 'labels'")
    labels = doc["labels"]
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise StateFormatError("'labels' must be a list of strings")
    layout = SubsystemLayout(tuple(doc["dims"]), tuple(labels))
    d = layout.total_dim
    if kind == "pure":
        amps = _decode_entries(doc["entries"], d)
        return PureState(amps, layout)
    entries = _decode_entries(doc["entries"], d * d).reshape(d, d)
    return DensityMatrix(entries, layout)


def load_unitary(path) -> UnitaryMatrix:
    """Load a unitary matrix, validating unitarity."""
    doc = _load_document(path)
    if doc["kind"] != "unitary":
        raise StateFormatError(f"expected kind 'unitary', found {doc['kind']!r}")
    d = prod(doc["dims"])
    entries = _decode_entries(doc["entries"], d * d).reshape(d, d)
    return UnitaryMatrix(entries)
