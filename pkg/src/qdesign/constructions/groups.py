"""Finite matrix groups: closure under multiplication and the binary
polyhedral subgroups of SU(2)."""

import numpy as np

from ..errors import ConstructionError
from ..moments import UnitarySet


def phase_key(g, decimals=8):
    """Hashable key identifying a matrix up to a global phase."""
    flat = g.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-6))
    ph = flat[k] / abs(flat[k])
    v = np.round(flat / ph, decimals) + 0.0  # +0.0 folds -0.0 into 0.0
    return tuple(np.concatenate([v.real, v.imag]))


def exact_key(g, decimals=8):
    v = np.round(g.ravel(), decimals) + 0.0
    return tuple(np.concatenate([v.real, v.imag]))


def closure(generators, modulo_phase=False, limit=100000):
    """Every product of ``generators``; returns a list, identity first.

    With ``modulo_phase`` elements differing by a global phase are identified
    (one representative is kept).
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    key = phase_key if modulo_phase else exact_key
    eye = np.eye(gens[0].shape[0], dtype=complex)
    found = {key(eye): eye}
    frontier = [eye]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = g @ h
                k = key(x)
                if k not in found:
                    found[k] = x
                    nxt.append(x)
        if len(found) > limit:
            raise ConstructionError("group closure exceeded its size limit")
        frontier = nxt
    return list(found.values())


def _quaternion(a, b, c, d):
    # a + b i + c j + d k  ->  SU(2), with i -> -i X, j -> -i Y, k -> -i Z
    return np.array([[a - 1j * d, -c - 1j * b], [c - 1j * b, a + 1j * d]])


_PHI = (1 + np.sqrt(5)) / 2

_BINARY_GENERATORS = {
    "tetrahedral": ([_quaternion(0, 1, 0, 0), _quaternion(0.5, 0.5, 0.5, 0.5)], 24),
    "octahedral": ([_quaternion(0.5, 0.5, 0.5, 0.5),
                    _quaternion(1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0)], 48),
    "icosahedral": ([_quaternion(0.5, 0.5, 0.5, 0.5),
                     _quaternion(_PHI / 2, 1 / (2 * _PHI), 0.5, 0)], 120),
}


def binary_polyhedral_group(name: str) -> UnitarySet:
    """Binary tetrahedral (24), octahedral (48) or icosahedral (120) group.

    Being finite subgroups of SU(2) they are unitary 2-, 3- and 5-designs.
    """
    try:
        gens, order = _BINARY_GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown binary polyhedral group {name!r}") from None
    els = closure(gens)
    if len(els) != order:
        raise ConstructionError(f"binary {name} group has {len(els)} elements, expected {order}")
    return UnitarySet.uniform(np.array(els))
