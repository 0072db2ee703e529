"""Pure states, density matrices, weighted ensembles and qubit Bloch geometry.

Conventions
-----------
* Bipartite vectors are ordered ``|a b>`` -> index ``a * N_B + b``.
* The Bloch ball has radius 1/2: ``rho = I/2 + b_x X + b_y Y + b_z Z``,
  so ``purity = 1/2 + 2 |b|^2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, UnsupportedError, ValidationError

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
WEIGHT_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _check_bipartition(bipartition, dim):
    if bipartition is None:
        return None
    na, nb = (int(x) for x in bipartition)
    if na < 1 or nb < 1 or na * nb != dim:
        raise DimensionError(f"bipartition {na}x{nb} does not match dimension {dim}")
    return (na, nb)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector in C^d, optionally split as C^{N_A} (x) C^{N_B}."""

    amplitudes: np.ndarray
    bipartition: tuple[int, int] | None = None
    tol: float = field(default=NORM_TOL, repr=False)

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "bipartition", _check_bipartition(self.bipartition, amp.size))
        norm2 = float(np.vdot(amp, amp).real)
        if amp.size == 0 or abs(norm2 - 1.0) > self.tol:
            raise ValidationError(f"state is not normalised: |psi|^2 = {norm2!r}")

    @classmethod
    def normalized(cls, vector, bipartition=None):
        v = np.asarray(vector, dtype=complex).reshape(-1)
        return cls(v / np.linalg.norm(v), bipartition)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(self.projector(), self.bipartition)

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to the ``N_A x N_B`` coefficient matrix."""
        if self.bipartition is None:
            raise DimensionError("state carries no bipartition")
        return self.amplitudes.reshape(self.bipartition)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    ``check=False`` skips the invariant checks; it exists for diagnostic
    outputs such as a linear-inversion estimate from inconsistent data.
    """

    matrix: np.ndarray
    bipartition: tuple[int, int] | None = None
    tol: float = field(default=HERMITIAN_TOL, repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "bipartition", _check_bipartition(self.bipartition, m.shape[0]))
        if self.check:
            validate_density_matrix(m, self.tol)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def validate_density_matrix(m, tol=HERMITIAN_TOL, psd_tol=PSD_TOL):
    """Raise :class:`ValidationError` unless ``m`` is a valid density matrix."""
    herm = np.abs(m - m.conj().T).max()
    if herm > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(m)
    if abs(tr - 1.0) > max(tol, TRACE_TOL):
        raise ValidationError(f"trace is {tr!r}, expected 1")
    lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
    if lo < -max(psd_tol, tol):
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})")


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted family of states of a common dimension.

    Storage is stacked: ``data`` has shape ``(M, d)`` for ``kind="pure"`` and
    ``(M, N, N)`` for ``kind="mixed"``.  Use :meth:`from_states` to build one
    from :class:`PureState` / :class:`DensityMatrix` objects.
    """

    kind: str
    data: np.ndarray
    weights: np.ndarray
    bipartition: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in ("pure", "mixed"):
            raise ValidationError(f"unknown ensemble kind {self.kind!r}")
        data = np.array(self.data, dtype=complex)
        w = np.array(self.weights, dtype=float).reshape(-1)
        want_ndim = 2 if self.kind == "pure" else 3
        if data.ndim != want_ndim or data.shape[0] == 0:
            raise DimensionError(f"{self.kind} ensemble data has shape {data.shape}")
        if self.kind == "mixed" and data.shape[1] != data.shape[2]:
            raise DimensionError("mixed ensemble members must be square")
        if w.shape[0] != data.shape[0]:
            raise DimensionError(f"{w.shape[0]} weights for {data.shape[0]} members")
        if (w < 0).any():
            raise ValidationError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise ValidationError(f"weights sum to {w.sum()!r}, expected 1")
        data.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bipartition", _check_bipartition(self.bipartition, data.shape[1]))

    @classmethod
    def from_states(cls, states: Sequence, weights=None) -> "Ensemble":
        states = list(states)
        if not states:
            raise ValidationError("empty ensemble")
        if weights is None:
            weights = np.full(len(states), 1.0 / len(states))
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionError(f"members have different dimensions {sorted(dims)}")
        bip = states[0].bipartition
        if all(isinstance(s, PureState) for s in states):
            return cls("pure", np.array([s.amplitudes for s in states]), weights, bip)
        mats = [s.matrix if isinstance(s, DensityMatrix) else s.projector() for s in states]
        return cls("mixed", np.array(mats), weights, bip)

    @classmethod
    def uniform(cls, kind, data, bipartition=None) -> "Ensemble":
        n = len(data)
        return cls(kind, data, np.full(n, 1.0 / n), bipartition)

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self):
        return self.data.shape[0]

    @property
    def members(self):
        """List of ``(weight, state)`` pairs."""
        if self.kind == "pure":
            return [(float(w), PureState(v, self.bipartition, tol=1e-9))
                    for w, v in zip(self.weights, self.data)]
        return [(float(w), DensityMatrix(m, self.bipartition, tol=1e-9))
                for w, m in zip(self.weights, self.data)]

    def density_matrices(self) -> np.ndarray:
        """Stacked ``(M, N, N)`` density matrices (projectors for pure members)."""
        if self.kind == "mixed":
            return self.data
        return np.einsum("ia,ib->iab", self.data, self.data.conj())

    def as_mixed(self) -> "Ensemble":
        if self.kind == "mixed":
            return self
        return Ensemble("mixed", self.density_matrices(), self.weights, self.bipartition)

    def validate(self, tol=NORM_TOL):
        """Check every member against its invariants at tolerance ``tol``."""
        if self.kind == "pure":
            norms = np.einsum("ia,ia->i", self.data.conj(), self.data).real
            bad = np.abs(norms - 1).max()
            if bad > tol:
                raise ValidationError(f"member not normalised (deviation {bad:.3e})")
        else:
            for m in self.data:
                validate_density_matrix(m, tol)
        return self


@dataclass(frozen=True)
class BlochPoint:
    """Point of the radius-1/2 qubit Bloch ball with an attached weight."""

    x: float
    y: float
    z: float
    weight: float = 1.0

    def __post_init__(self):
        if self.weight < 0:
            raise ValidationError("negative weight")
        if self.x ** 2 + self.y ** 2 + self.z ** 2 > 0.25 + 1e-12:
            raise ValidationError("point lies outside the Bloch ball of radius 1/2")

    @property
    def coords(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def purity(self) -> float:
        return 0.5 + 2.0 * self.radius ** 2


# ------------------------------------------------------------------ operations

def _as_matrix(state):
    if isinstance(state, PureState):
        return state.projector(), state.bipartition
    if isinstance(state, DensityMatrix):
        return state.matrix, state.bipartition
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def partial_trace(state, side="B") -> DensityMatrix:
    """Trace out subsystem ``side`` (``"A"`` or ``"B"``) of a bipartite state.

    ``side="B"`` returns the reduction on A, size ``N_A``; ``side="A"`` the
    reduction on B, size ``N_B``.
    """
    side = side.upper()
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if state.bipartition is None:
        raise DimensionError("partial trace needs a bipartition")
    na, nb = state.bipartition
    if isinstance(state, PureState):
        c = state.coefficient_matrix()
        red = c @ c.conj().T if side == "B" else c.T @ c.conj()
    else:
        m = state.matrix.reshape(na, nb, na, nb)
        red = np.einsum("ajbj->ab", m) if side == "B" else np.einsum("jajb->ab", m)
    return DensityMatrix(red)


def reduce_ensemble(ensemble: Ensemble, side="B") -> Ensemble:
    """Apply :func:`partial_trace` member-wise, keeping the weights."""
    if ensemble.bipartition is None:
        raise DimensionError("ensemble carries no bipartition")
    na, nb = ensemble.bipartition
    side = side.upper()
    if ensemble.kind == "pure":
        c = ensemble.data.reshape(-1, na, nb)
        if side == "B":
            red = np.einsum("iab,icb->iac", c, c.conj())
        else:
            red = np.einsum("iba,ibc->iac", c, c.conj())
    else:
        m = ensemble.data.reshape(-1, na, nb, na, nb)
        red = np.einsum("iajbj->iab", m) if side == "B" else np.einsum("ijajb->iab", m)
    return Ensemble("mixed", red, ensemble.weights)


def schmidt_vector(state: PureState) -> np.ndarray:
    """Squared Schmidt coefficients in descending order (sum to one)."""
    if state.bipartition is None:
        raise DimensionError("Schmidt decomposition needs a bipartition")
    na, nb = state.bipartition
    if na != nb:
        raise UnsupportedError(f"non-square bipartition {na}x{nb}")
    s = np.linalg.svd(state.coefficient_matrix(), compute_uv=False) ** 2
    return np.sort(s, kind="stable")[::-1]


def bloch_point(rho, weight=1.0) -> BlochPoint:
    """Bloch coordinates ``b`` with ``rho = I/2 + b . sigma``."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    if m.shape != (2, 2):
        raise UnsupportedError(f"Bloch coordinates need a qubit, got shape {m.shape}")
    x = float(m[0, 1].real)
    y = float(-m[0, 1].imag)
    z = float((m[0, 0].real - m[1, 1].real) / 2)
    return BlochPoint(x, y, z, weight)


def bloch_vectors(matrices) -> np.ndarray:
    """Vectorised :func:`bloch_point` for an ``(M, 2, 2)`` stack."""
    m = np.asarray(matrices)
    if m.shape[1:] != (2, 2):
        raise UnsupportedError(f"Bloch coordinates need qubits, got shape {m.shape}")
    return np.stack([m[:, 0, 1].real, -m[:, 0, 1].imag,
                     (m[:, 0, 0].real - m[:, 1, 1].real) / 2], axis=1)


def density_from_bloch(b) -> DensityMatrix:
    bx, by, bz = (float(v) for v in (b.coords if isinstance(b, BlochPoint) else b))
    return DensityMatrix(np.eye(2) / 2 + bx * PAULI_X + by * PAULI_Y + bz * PAULI_Z)


def purity(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.vdot(m, m).real)


def overlap(rho, sigma) -> float:
    """Hilbert-Schmidt overlap ``Tr(rho sigma)``."""
    a = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    b = sigma.matrix if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch {a.shape} vs {b.shape}")
    # Tr(AB) = sum_ij A_ij B_ji = <A^dag, B> for Hermitian A
    return float(np.sum(a * b.T).real)


def angle_spectrum(points: Iterable, tol=1e-9):
    """Multiset of pairwise cosines between Bloch directions.

    Returns a sorted list of ``(cosine, multiplicity)`` over unordered pairs
    ``i < j``; cosines closer than ``tol`` are merged.  Points at the centre
    have no direction and are dropped with a warning.
    """
    vecs = []
    for p in points:
        v = p.coords if isinstance(p, BlochPoint) else np.asarray(p, dtype=float)
        r = np.linalg.norm(v)
        if r < 1e-12:
            warnings.warn("zero-radius Bloch point excluded from angle spectrum")
            continue
        vecs.append(v / r)
    if len(vecs) < 2:
        raise ValidationError("angle spectrum needs at least two nonzero points")
    u = np.array(vecs)
    iu = np.triu_indices(len(u), k=1)
    cos = np.sort(np.clip((u @ u.T)[iu], -1.0, 1.0))
    out = []
    for c in cos:
        if out and abs(c - out[-1][0]) <= tol:
            v, n = out[-1]
            out[-1] = (v, n + 1)
        else:
            out.append((float(c), 1))
    return out
