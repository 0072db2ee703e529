"""JSON documents for ensembles, unitary families and simplex designs.

Complex numbers are written as ``[re, im]`` pairs.  Floats use Python's
shortest round-trip representation, so reading a file back reproduces the
in-memory arrays bit for bit.

Layout::

    {"dim": N, "kind": "pure" | "mixed" | "unitary" | "simplex",
     "bipartition": [NA, NB],                 # optional
     "measure": "lebesgue" | "hilbert-schmidt", "order": t,   # simplex only
     "members": [{"weight": w, "vector": [[re, im], ...]}       # pure
                 {"weight": w, "matrix": [[[re, im], ...], ...]} # mixed / unitary
                 {"weight": w, "point": [p1, ..., pN]}]}        # simplex

Weights are optional; when every member omits them they default to uniform.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .constructions.simplex import SimplexDesign
from .errors import DimensionError, ValidationError
from .moments import UnitarySet
from .qstate import (HERMITIAN_TOL, NORM_TOL, TRACE_TOL, Ensemble,
                     validate_density_matrix)

KINDS = ("pure", "mixed", "unitary", "simplex")


class SchemaError(ValidationError):
    """A document does not follow the expected layout."""


def _pairs(a):
    a = np.asarray(a)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _complex(obj, shape_hint):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{shape_hint} must be nested numeric [re, im] pairs") from None
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise SchemaError(f"{shape_hint} entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def to_document(obj) -> dict:
    """Serialisable dict for an :class:`Ensemble`, :class:`UnitarySet` or :class:`SimplexDesign`."""
    if isinstance(obj, Ensemble):
        doc = {"dim": obj.dim, "kind": obj.kind}
        if obj.bipartition is not None:
            doc["bipartition"] = list(obj.bipartition)
        key = "vector" if obj.kind == "pure" else "matrix"
        doc["members"] = [{"weight": float(w), key: _pairs(x)} for w, x in zip(obj.weights, obj.data)]
        return doc
    if isinstance(obj, UnitarySet):
        return {"dim": obj.dim, "kind": "unitary",
                "members": [{"weight": float(w), "matrix": _pairs(u)}
                            for w, u in zip(obj.weights, obj.matrices)]}
    if isinstance(obj, SimplexDesign):
        doc = {"dim": obj.N, "kind": "simplex", "measure": obj.measure}
        if obj.order is not None:
            doc["order"] = obj.order
        doc["members"] = [{"weight": float(w), "point": p.tolist()}
                          for w, p in zip(obj.weights, obj.points)]
        return doc
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _weights(members, tol):
    given = ["weight" in m for m in members]
    if any(given) and not all(given):
        raise SchemaError("either every member has a weight or none does")
    if not any(given):
        return np.full(len(members), 1.0 / len(members))
    w = np.array([m["weight"] for m in members], dtype=float)
    if (w < 0).any():
        raise ValidationError("weights must be nonnegative")
    if abs(w.sum() - 1) > max(tol, 1e-12):
        raise ValidationError(f"weights sum to {w.sum()!r}, expected 1")
    return w / w.sum() if abs(w.sum() - 1) > 1e-12 else w


def from_document(doc: dict, tolerance: float = NORM_TOL):
    """Parse and validate a document; ``tolerance`` relaxes the state checks.

    Members within ``tolerance`` of valid are accepted and renormalised.
    """
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"'kind' must be one of {KINDS}, got {kind!r}")
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise SchemaError("'members' must be a non-empty list")
    if not all(isinstance(m, dict) for m in members):
        raise SchemaError("every member must be an object")
    dim = doc.get("dim")
    w = _weights(members, tolerance)

    if kind == "simplex":
        if any("point" not in m for m in members):
            raise SchemaError("simplex members need a 'point'")
        pts = np.array([m["point"] for m in members], dtype=float)
        if dim is not None and pts.shape[1] != dim:
            raise DimensionError(f"points have length {pts.shape[1]}, 'dim' says {dim}")
        return SimplexDesign(pts, w, doc.get("measure", "lebesgue"), doc.get("order"),
                             tol=max(tolerance, 1e-12))

    key = "vector" if kind == "pure" else "matrix"
    if any(key not in m for m in members):
        raise SchemaError(f"{kind} members need a '{key}'")
    try:
        data = np.array([_complex(m[key], key) for m in members])
    except ValueError as exc:
        raise DimensionError(f"members have inconsistent shapes: {exc}") from None
    expected_ndim = 2 if kind == "pure" else 3
    if data.ndim != expected_ndim:
        raise DimensionError(f"{key} data has shape {data.shape[1:]}")
    if dim is not None and data.shape[1] != dim:
        raise DimensionError(f"members have dimension {data.shape[1]}, 'dim' says {dim}")

    if kind == "unitary":
        return UnitarySet(data, w, tol=max(tolerance, 1e-10))
    bip = doc.get("bipartition")
    bip = tuple(bip) if bip is not None else None
    if kind == "pure":
        norms = np.linalg.norm(data, axis=1)
        bad = np.abs(norms ** 2 - 1).max()
        if bad > tolerance:
            raise ValidationError(f"state vector not normalised (deviation {bad:.3e})")
        if bad > NORM_TOL:
            data = data / norms[:, None]
    else:
        for m in data:
            validate_density_matrix(m, tol=max(tolerance, 1e-12))
        # repair only what the strict checks would reject, keeping exact data bit-identical
        herm = np.abs(data - data.conj().transpose(0, 2, 1)).max()
        if herm > HERMITIAN_TOL:
            data = 0.5 * (data + data.conj().transpose(0, 2, 1))
        tr = np.trace(data, axis1=1, axis2=2).real
        if np.abs(tr - 1).max() > TRACE_TOL:
            data = data / tr[:, None, None]
    return Ensemble(kind, data, w, bip)


def dumps(obj) -> str:
    return json.dumps(to_document(obj))


def loads(text: str, tolerance: float = NORM_TOL):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_document(doc, tolerance)


def read(path, tolerance: float = NORM_TOL):
    """Load from a path, or from stdin when ``path`` is ``"-"``."""
    text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    return loads(text, tolerance)


def write(obj, path) -> None:
    text = dumps(obj) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
