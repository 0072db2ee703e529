"""Designs on the probability simplex Delta_N.

Reference moments are exact rationals for both supported measures:

* Lebesgue (flat): ``E[l^a] = (N-1)! prod a_i! / (N-1+|a|)!``;
* Hilbert-Schmidt: density proportional to ``prod_{i<j} (l_i - l_j)^2``
  (the eigenvalue law of HS-random density matrices), integrated term by
  term against the flat Dirichlet integrals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import UnsupportedError, ValidationError
from ..qstate import Ensemble

LEBESGUE = "lebesgue"
HILBERT_SCHMIDT = "hilbert-schmidt"
_MEASURE_ALIASES = {"l": LEBESGUE, "lebesgue": LEBESGUE, "flat": LEBESGUE,
                    "hs": HILBERT_SCHMIDT, "hilbert-schmidt": HILBERT_SCHMIDT,
                    "hilbertschmidt": HILBERT_SCHMIDT}

DEFAULT_TOLERANCE = 1e-10


def canonical_measure(measure: str) -> str:
    try:
        return _MEASURE_ALIASES[measure.lower()]
    except KeyError:
        raise UnsupportedError(f"unsupported simplex measure {measure!r}") from None


@dataclass(frozen=True, eq=False)
class SimplexDesign:
    """Weighted probability vectors; ``points`` has shape ``(M, N)``."""

    points: np.ndarray
    weights: np.ndarray
    measure: str = LEBESGUE
    order: int | None = None
    tol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim != 2 or p.shape[0] == 0:
            raise ValidationError(f"points must be an (M, N) array, got shape {p.shape}")
        w = np.array(self.weights, dtype=float).reshape(-1)
        if w.size != p.shape[0]:
            raise ValidationError("one weight per point required")
        if (p < -self.tol).any() or np.abs(p.sum(axis=1) - 1).max() > self.tol:
            raise ValidationError("points must be probability vectors")
        if (w < 0).any() or abs(w.sum() - 1) > 1e-12:
            raise ValidationError("weights must sum to one")
        p.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "measure", canonical_measure(self.measure))

    @property
    def N(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    @classmethod
    def from_interval(cls, xs, weights=None, measure=LEBESGUE, order=None):
        """Points ``x`` of [-1/2, 1/2] mapped to ``(1/2 + x, 1/2 - x)``."""
        xs = np.asarray(xs, dtype=float)
        if weights is None:
            weights = np.full(xs.size, 1.0 / xs.size)
        return cls(np.stack([0.5 + xs, 0.5 - xs], axis=1), weights, measure, order)

    def interval_coordinates(self) -> np.ndarray:
        if self.N != 2:
            raise UnsupportedError("interval coordinates exist only for N = 2")
        return self.points[:, 0] - 0.5

    def moment(self, exponents) -> float:
        """Weighted average of ``prod_k l_k^{a_k}``."""
        a = np.asarray(exponents, dtype=float)
        return float(self.weights @ np.prod(self.points ** a, axis=1))


# ------------------------------------------------------------- catalogue

def _sym(*xs):
    return sorted([-x for x in xs if x != 0] + [x for x in xs if x == 0] + [x for x in xs if x != 0])


_INTERVAL_CATALOG = {
    (1, 1, LEBESGUE): lambda: [0.0],
    (3, 2, LEBESGUE): lambda: _sym(1 / (2 * np.sqrt(3))),
    (3, 3, LEBESGUE): lambda: _sym(0.0, 1 / (2 * np.sqrt(2))),
    (5, 4, LEBESGUE): lambda: _sym(np.sqrt(75 - 30 * np.sqrt(5)) / 30,
                                   np.sqrt(75 + 30 * np.sqrt(5)) / 30),
    (5, 5, LEBESGUE): lambda: _sym(0.0, np.sqrt(15 - 3 * np.sqrt(11)) / 12,
                                   np.sqrt(15 + 3 * np.sqrt(11)) / 12),
    (1, 1, HILBERT_SCHMIDT): lambda: [0.0],
    (3, 2, HILBERT_SCHMIDT): lambda: _sym(np.sqrt(3 / 20)),
    (3, 3, HILBERT_SCHMIDT): lambda: _sym(0.0, 3 / (2 * np.sqrt(10))),
    (5, 4, HILBERT_SCHMIDT): lambda: _sym(np.sqrt(735 - 70 * np.sqrt(21)) / 70,
                                          np.sqrt(735 + 70 * np.sqrt(21)) / 70),
}


def interval_catalog():
    """Available ``(t, M, measure)`` triples."""
    return sorted(_INTERVAL_CATALOG)


def interval_design(t: int, M: int, measure: str) -> SimplexDesign:
    """Equal-weight M-point t-design on Delta_2 from the built-in catalogue."""
    key = (int(t), int(M), canonical_measure(measure))
    if key not in _INTERVAL_CATALOG:
        raise UnsupportedError(
            f"no catalogued interval design for t={t}, M={M}, measure={key[2]}")
    return SimplexDesign.from_interval(_INTERVAL_CATALOG[key](), measure=key[2], order=key[0])


# ---------------------------------------------------------- exact moments

def monomials(N: int, degree: int):
    """Exponent tuples of total degree exactly ``degree``."""
    return [a for a in itertools.product(range(degree + 1), repeat=N) if sum(a) == degree]


def _dirichlet(alpha, N):
    # int_{Delta_N} prod l^a dl  (up to the common simplex volume factor)
    num = 1
    for a in alpha:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(N - 1 + sum(alpha)))


@lru_cache(maxsize=None)
def _vandermonde_squared(N):
    poly = {(0,) * N: 1}
    for i, j in itertools.combinations(range(N), 2):
        nxt = {}
        for e, c in poly.items():
            for k, sign in ((i, 1), (j, -1)):
                f = list(e)
                f[k] += 1
                f = tuple(f)
                nxt[f] = nxt.get(f, 0) + sign * c
        poly = {e: c for e, c in nxt.items() if c}
    sq = {}
    for (e1, c1), (e2, c2) in itertools.product(poly.items(), repeat=2):
        e = tuple(a + b for a, b in zip(e1, e2))
        sq[e] = sq.get(e, 0) + c1 * c2
    return {e: c for e, c in sq.items() if c}


@lru_cache(maxsize=None)
def exact_moment(N: int, exponents: tuple, measure: str) -> Fraction:
    """``E[prod l_k^{a_k}]`` under the Lebesgue or Hilbert-Schmidt law on Delta_N."""
    measure = canonical_measure(measure)
    exponents = tuple(int(a) for a in exponents)
    if len(exponents) != N:
        raise ValueError("one exponent per coordinate required")
    if measure == LEBESGUE:
        return _dirichlet(exponents, N) / _dirichlet((0,) * N, N)
    weight = _vandermonde_squared(N)
    num = sum(c * _dirichlet(tuple(a + b for a, b in zip(exponents, e)), N)
              for e, c in weight.items())
    den = sum(c * _dirichlet(e, N) for e, c in weight.items())
    return num / den


@dataclass(frozen=True)
class SimplexReport:
    order: int
    deviations: dict
    max_deviation: float
    is_design: bool

    def to_dict(self):
        return {"t": self.order, "delta": self.max_deviation,
                "deviations": {str(k): v for k, v in self.deviations.items()},
                "is_design": self.is_design}


def verify_simplicial(design: SimplexDesign, t: int | None = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> SimplexReport:
    """Compare design averages of every monomial of degree <= t with the
    exact moments of the design's measure.

    ``deviations[k]`` is the largest absolute error among degree-k monomials.
    """
    t = design.order if t is None else t
    if t is None:
        raise ValueError("order t not given and design carries none")
    devs = {}
    for k in range(t + 1):
        worst = 0.0
        for a in monomials(design.N, k):
            ref = float(exact_moment(design.N, a, design.measure))
            worst = max(worst, abs(design.moment(a) - ref))
        devs[k] = worst
    top = max(devs.values())
    return SimplexReport(t, devs, top, bool(top <= tolerance))


# ---------------------------------------------------------- transformations

def decohere(ensemble: Ensemble, order: int | None = None) -> SimplexDesign:
    """Dephase every pure state to its diagonal ``|<k|psi>|^2``, keeping weights."""
    if not isinstance(ensemble, Ensemble) or ensemble.kind != "pure":
        raise TypeError("decoherence map needs a pure-state ensemble")
    p = np.abs(ensemble.data) ** 2
    return SimplexDesign(p / p.sum(axis=1, keepdims=True), ensemble.weights, LEBESGUE, order)


def spectra(ensemble: Ensemble, measure=HILBERT_SCHMIDT, order=None) -> SimplexDesign:
    """Eigenvalue vectors (descending) of the members of a mixed ensemble."""
    ev = np.linalg.eigvalsh(ensemble.density_matrices())[:, ::-1]
    ev = np.clip(ev, 0.0, None)
    return SimplexDesign(ev / ev.sum(axis=1, keepdims=True), ensemble.weights, measure, order)


def stabilizer_size(point, tol=1e-12) -> int:
    """Number of coordinate permutations fixing ``point`` (the number of
    ordering chambers containing it)."""
    p = np.sort(np.asarray(point, dtype=float))[::-1]
    size, run = 1, 1
    for a, b in zip(p[:-1], p[1:]):
        if abs(a - b) <= tol:
            run += 1
        else:
            size *= math.factorial(run)
            run = 1
    return size * math.factorial(run)


def in_chamber(point, tol=1e-12) -> bool:
    p = np.asarray(point, dtype=float)
    return bool(np.all(p[:-1] >= p[1:] - tol))


def restrict_to_chamber(design: SimplexDesign, tol=1e-12) -> SimplexDesign:
    """Keep the points with descending coordinates.

    Each kept point is weighted inversely to the number of chambers it lies
    in, then weights are renormalised.  For permutation-symmetric designs
    this preserves every symmetric moment.
    """
    keep = [i for i, p in enumerate(design.points) if in_chamber(p, tol)]
    if not keep:
        raise ValidationError("no design point lies in the ordered chamber")
    pts = design.points[keep]
    w = np.array([design.weights[i] / stabilizer_size(design.points[i], tol) for i in keep])
    return SimplexDesign(pts, w / w.sum(), design.measure, design.order)
