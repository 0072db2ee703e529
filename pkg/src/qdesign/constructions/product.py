"""Mixed-state designs as products of a spectrum design and a unitary design."""

from __future__ import annotations

import numpy as np

from ..errors import UnverifiedDesignError, ValidationError
from ..moments import UnitarySet, frame_potential_unitary
from ..qstate import Ensemble
from .simplex import SimplexDesign, in_chamber

DESIGN_TOLERANCE = 1e-9


def product_design(simplex: SimplexDesign, unitaries: UnitarySet, t: int,
                   tolerance: float = DESIGN_TOLERANCE) -> Ensemble:
    """Ensemble ``{U_j diag(l_i) U_j^dag}`` with weights ``w_i v_j``.

    ``simplex`` must already live in the ordered chamber (see
    :func:`~qdesign.constructions.simplex.restrict_to_chamber`) and
    ``unitaries`` must be a unitary t-design; both are checked.
    """
    if simplex.N != unitaries.dim:
        raise ValidationError(f"spectra of length {simplex.N} but unitaries of size {unitaries.dim}")
    for p in simplex.points:
        if not in_chamber(p):
            raise ValidationError(f"spectrum {p} lies outside the descending chamber")
    fp = frame_potential_unitary(unitaries, t, tolerance=tolerance)
    if not fp.is_design:
        raise UnverifiedDesignError(
            f"unitary family is not a {t}-design (frame potential excess {fp.delta:.3e})", fp.delta)
    U = unitaries.matrices
    lam = simplex.points.astype(complex)
    # rho[i, j] = U_j diag(lam_i) U_j^dag
    rho = np.einsum("jab,ib,jcb->ijac", U, lam, U.conj())
    w = np.outer(simplex.weights, unitaries.weights)
    N = simplex.N
    rho = rho.reshape(-1, N, N)
    rho = 0.5 * (rho + rho.conj().transpose(0, 2, 1))
    return Ensemble("mixed", rho, w.reshape(-1) / w.sum())
