"""Linear-inversion tomography with a mixed-state 2-design as the POVM.

For a weighted 2-design ``{(w_i, rho_i)}`` in dimension N the effects are
``E_i = N w_i rho_i``; they sum to the identity because every 2-design is
also a 1-design.  Multiplying the 2-design identity

    sum_i w_i rho_i (x) rho_i = (N^2 I + N SWAP) / (N^4 + N^2)

by ``rho (x) I`` and tracing out the first factor gives
``sum_i p_i rho_i = (N I + rho) / (N^2 + 1)`` for ``p_i = Tr(E_i rho)``,
which is inverted in :func:`reconstruct`.  With equal weights ``1/M`` the
effects are ``(N/M) rho_i``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, UnverifiedDesignError
from .moments import DEFAULT_TOLERANCE, delta_mixed
from .qstate import DensityMatrix, Ensemble

#: minimum eigenvalue below which a reconstruction is flagged as inconsistent
PSD_FLAG = -1e-6


@dataclass(frozen=True, eq=False)
class PovmDesign:
    base: Ensemble
    effects: np.ndarray
    delta: float

    @property
    def dim(self) -> int:
        return self.base.dim

    def __len__(self):
        return self.effects.shape[0]


def make_povm(ensemble: Ensemble, tolerance: float = DEFAULT_TOLERANCE) -> PovmDesign:
    """Check that ``ensemble`` is a mixed 2-design and rescale it into a POVM."""
    ens = ensemble.as_mixed()
    report = delta_mixed(ens, 2, tolerance)
    if not report.is_design:
        raise UnverifiedDesignError(
            f"ensemble is not a mixed-state 2-design (delta = {report.delta:.3e})", report.delta)
    N = ens.dim
    effects = N * ens.weights[:, None, None] * ens.data
    effects.setflags(write=False)
    return PovmDesign(ens, effects, report.delta)


def _matrix(rho):
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def probabilities(design: PovmDesign, rho) -> np.ndarray:
    """Outcome distribution ``p_i = Tr(E_i rho)``."""
    m = _matrix(rho)
    if m.shape != (design.dim, design.dim):
        raise DimensionError(f"state of shape {m.shape} for a POVM in dimension {design.dim}")
    return np.einsum("iab,ba->i", design.effects, m).real


def reconstruct(design: PovmDesign, p, check: bool = True):
    """Invert :func:`probabilities`: ``rho = (N^2 + 1) sum_i p_i rho_i - N I``.

    The sum runs over the unscaled design states ``rho_i``, so weighted and
    uniform designs share one formula.  Returns a :class:`DensityMatrix`,
    or a bare array (with a warning) when the input statistics give a
    matrix with an eigenvalue below ``-1e-6``.
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != len(design):
        raise DimensionError(f"{p.size} probabilities for a {len(design)}-outcome POVM")
    N = design.dim
    rho = (N * N + 1) * np.einsum("i,iab->ab", p, design.base.data) - N * np.eye(N)
    rho = 0.5 * (rho + rho.conj().T)
    lo = np.linalg.eigvalsh(rho).min()
    if lo < PSD_FLAG:
        warnings.warn(f"statistics are inconsistent with any state "
                      f"(reconstruction has eigenvalue {lo:.3e})", RuntimeWarning, stacklevel=2)
        return rho
    if not check:
        return rho
    return DensityMatrix(rho, check=False)
