"""Weyl-Heisenberg SIC in dimension three."""

import numpy as np

from ..errors import ConstructionError
from ..qstate import Ensemble


def weyl_heisenberg(d: int):
    """Clock ``Z`` and shift ``X`` with ``X|k> = |k+1 mod d>``."""
    w = np.exp(2j * np.pi / d)
    clock = np.diag(w ** np.arange(d))
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    return clock, shift


def sic_d3(tol: float = 1e-12) -> Ensemble:
    """Orbit of ``(0, 1, -1)/sqrt2`` under the nine displacement operators.

    Every pair of the nine states has squared overlap 1/4; this is checked.
    """
    clock, shift = weyl_heisenberg(3)
    fid = np.array([0, 1, -1], dtype=complex) / np.sqrt(2)
    states = np.array([np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b) @ fid
                       for a in range(3) for b in range(3)])
    ov = np.abs(states.conj() @ states.T) ** 2
    off = ov[~np.eye(9, dtype=bool)]
    if np.abs(off - 0.25).max() > tol:
        raise ConstructionError("Weyl-Heisenberg orbit is not equiangular")
    return Ensemble.uniform("pure", states)
