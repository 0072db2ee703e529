"""Complete sets of mutually unbiased bases in C^4 = C^2 (x) C^2.

Two constructions are provided: the standard finite-field set (three product
bases, two maximally entangled bases) and the iso-entangled set, in which
all twenty vectors are related to a fiducial vector by local unitaries.
The iso-entangled set is built twice - from the stored table and by
applying the change of basis T to the standard set - and the two routes
must agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConstructionError
from ..moments import UnitarySet
from ..qstate import Ensemble, PureState
from . import _data
from .groups import closure, phase_key

PHASE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MubSet:
    """Collection of orthonormal bases, stored as an ``(n_bases, d, d)`` array
    whose ``[k, j]`` row is the j-th vector of basis k."""

    vectors: np.ndarray
    labels: tuple = ()
    bipartition: tuple | None = None

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[2]

    @property
    def bases(self):
        return [[PureState(vec, self.bipartition) for vec in basis] for basis in self.vectors]

    def states(self) -> np.ndarray:
        """All vectors, basis by basis, shape ``(n_bases * d, d)``."""
        return self.vectors.reshape(-1, self.dim)

    def ensemble(self) -> Ensemble:
        return Ensemble.uniform("pure", self.states(), self.bipartition)

    def overlaps(self) -> np.ndarray:
        """Matrix of squared overlaps ``|<psi_i|psi_j>|^2``."""
        s = self.states()
        return np.abs(s.conj() @ s.T) ** 2

    def check(self, tol=1e-10):
        """Raise :class:`ConstructionError` unless the bases are orthonormal
        and mutually unbiased."""
        d = self.dim
        nb = self.vectors.shape[0]
        ov = self.overlaps()
        block = np.kron(np.eye(nb), np.ones((d, d)))
        expected = np.where(block == 1, 0.0, 1.0 / d)
        expected[np.diag_indices_from(expected)] = 1.0
        err = np.abs(ov - expected).max()
        if err > tol:
            raise ConstructionError(f"bases are not mutually unbiased (deviation {err:.3e})")
        return self


def standard_mub_d4() -> MubSet:
    """The finite-field complete set of five MUBs for two qubits."""
    z, o = np.array([1, 0], complex), np.array([0, 1], complex)
    p, m, pi, mi = z + o, z - o, z + 1j * o, z - 1j * o
    k = np.kron
    c = lambda a, b, c_, d: np.array([a, b, c_, d], complex)  # |00>,|01>,|10>,|11>
    bases = [
        [k(z, z), k(z, o), k(o, z), k(o, o)],
        [k(p, p), k(p, m), k(m, p), k(m, m)],
        [k(pi, pi), k(pi, mi), k(mi, pi), k(mi, mi)],
        [c(1, 1j, -1, 1j), c(1, -1j, -1, -1j), c(1, -1j, 1, 1j), c(1, 1j, 1, -1j)],
        [c(1, 1, -1j, 1j), c(1, 1, 1j, -1j), c(1, -1, -1j, -1j), c(1, -1, 1j, 1j)],
    ]
    v = np.array([[vec / np.linalg.norm(vec) for vec in b] for b in bases])
    labels = ("computational", "X product", "Y product", "entangled 1", "entangled 2")
    return MubSet(v, labels, (2, 2))


# ---------------------------------------------------------------- generators

def local_generator_factors():
    """Tensor factors ``(A1, B1), (A2, B2)`` with ``h_k = A_k (x) B_k``."""
    return ((_data.evaluate(_data.H1_LEFT, _data.H1_FACTOR_SCALE),
             _data.evaluate(_data.H1_RIGHT, _data.H1_FACTOR_SCALE)),
            (_data.evaluate(_data.H2_LEFT, _data.H2_FACTOR_SCALE),
             _data.evaluate(_data.H2_RIGHT, _data.H2_FACTOR_SCALE)))


def local_generators():
    (a1, b1), (a2, b2) = local_generator_factors()
    return np.kron(a1, b1), np.kron(a2, b2)


def transform():
    """The global unitary T with ``T H_sym T^dag`` made of tensor products."""
    return _data.evaluate(_data.TRANSFORM, _data.TRANSFORM_SCALE)


def symmetry_generators():
    return tuple(np.array(g, dtype=complex) for g in _data.H_SYM_GENERATORS)


def fiducial_state() -> PureState:
    return PureState(_data.evaluate(_data.FIDUCIAL, _data.FIDUCIAL_SCALE), (2, 2))


_TOKEN = re.compile(r"\(([^()]*)\)\^(\d+)|h([12])(?:\^(\d+))?")


def parse_word(word: str) -> tuple[int, ...]:
    """``"h2 h1^2 (h1 h2)^2"`` -> ``(2, 1, 1, 1, 2, 1, 2)``; ``"id"`` -> ``()``."""
    word = word.replace("_", "")
    if word.strip() == "id":
        return ()
    out = []
    pos = 0
    for m in _TOKEN.finditer(word):
        if word[pos:m.start()].strip():
            raise ValueError(f"cannot parse word {word!r}")
        pos = m.end()
        if m.group(1) is not None:
            out.extend(parse_word(m.group(1)) * int(m.group(2)))
        else:
            out.extend([int(m.group(3))] * int(m.group(4) or 1))
    if word[pos:].strip():
        raise ValueError(f"cannot parse word {word!r}")
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    """Word in the local generators h1, h2 producing table state ``target_index``.

    Letters multiply left to right as written, so the rightmost acts first on
    the fiducial vector.
    """

    letters: tuple
    target_index: int
    label: str = field(default="", compare=False)

    def factors(self):
        """Product of the tensor factors, ``(left, right)`` 2x2 unitaries."""
        gens = local_generator_factors()
        left = np.eye(2, dtype=complex)
        right = np.eye(2, dtype=complex)
        for k in self.letters:
            a, b = gens[k - 1]
            left = left @ a
            right = right @ b
        return left, right

    def matrix(self):
        left, right = self.factors()
        return np.kron(left, right)


def iso_mub_words():
    return [GroupWord(parse_word(w), j, w) for j, w in enumerate(_data.ISO_MUB_WORDS)]


def _match_within_blocks(a, b, d):
    """For each row of ``a`` the row of ``b`` in the same block equal up to phase."""
    n = a.shape[0]
    perm = np.empty(n, dtype=int)
    for start in range(0, n, d):
        ov = np.abs(a[start:start + d].conj() @ b[start:start + d].T)
        cols = ov.argmax(axis=1)
        if sorted(cols) != list(range(d)) or ov.max(axis=1).min() < 1 - PHASE_TOL:
            raise ConstructionError(f"basis block at {start} does not match up to phase")
        perm[start:start + d] = start + cols
    return perm


def iso_mub(check: bool = True):
    """Five iso-entangled MUBs in C^2 (x) C^2 and their generating words.

    Returns ``(mub, words)``.  With ``check`` the stored table is compared
    against (i) T applied to the standard bases, block by block up to phase
    and ordering inside each basis, (ii) the fiducial vector, and (iii) the
    action of every generator word on the fiducial.
    """
    table = _data.evaluate(_data.ISO_MUB_TABLE, _data.ISO_MUB_SCALE)
    mub = MubSet(table.reshape(5, 4, 4),
                 ("iso 1", "iso 2", "iso 3", "iso 4", "iso 5"), (2, 2))
    words = iso_mub_words()
    if check:
        t_states = (transform() @ standard_mub_d4().states().T).T
        _match_within_blocks(table, t_states, 4)
        fid = fiducial_state().amplitudes
        if abs(abs(np.vdot(fid, table[0])) - 1) > PHASE_TOL:
            raise ConstructionError("fiducial vector differs from the first table row")
        for w in words:
            img = w.matrix() @ fid
            if abs(abs(np.vdot(table[w.target_index], img)) - 1) > PHASE_TOL:
                raise ConstructionError(f"word {w.label!r} misses state {w.target_index}")
        mub.check()
    return mub, words


def transformed_standard_mub() -> MubSet:
    """T applied to the standard MUBs, reordered to line up with :func:`iso_mub`."""
    table = _data.evaluate(_data.ISO_MUB_TABLE, _data.ISO_MUB_SCALE)
    t_states = (transform() @ standard_mub_d4().states().T).T
    perm = _match_within_blocks(table, t_states, 4)
    return MubSet(t_states[perm].reshape(5, 4, 4), (), (2, 2))


def iso_mub_local_unitaries(side: str = "left", full: bool = False) -> UnitarySet:
    """Single-qubit factors of the local unitaries generating the iso-MUB states.

    ``full=False`` gives the 20 factors of the stored generator words (one per
    state).  ``full=True`` gives one factor for each of the 60 elements of
    the local symmetry group; every one of them maps the fiducial vector onto
    a basis vector, three per target.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    k = 0 if side == "left" else 1
    if not full:
        return UnitarySet.uniform(np.array([w.factors()[k] for w in iso_mub_words()]))
    (a1, b1), (a2, b2) = local_generator_factors()
    # close on pairs so the factors stay aligned; phase ambiguity is irrelevant
    # for unitary-design checks
    pairs = closure([np.kron(a1, b1), np.kron(a2, b2)], modulo_phase=True)
    out = []
    for g in pairs:
        r = g.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
        u, s, vh = np.linalg.svd(r)
        f = (u[:, 0] if k == 0 else vh[0]).reshape(2, 2)
        out.append(f / np.sqrt(abs(np.linalg.det(f))))
    return UnitarySet.uniform(np.array(out))


def local_symmetry_group(modulo_phase=True):
    """Elements of the group generated by h1 and h2."""
    return closure(local_generators(), modulo_phase=modulo_phase)
