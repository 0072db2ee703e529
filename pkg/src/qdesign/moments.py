"""Permutation-operator moment calculus for mixed-state designs.

The Hilbert-Schmidt average of ``rho^{(x)t}`` over density matrices of size
N is the cycle sum

    omega_{N,t} = sum_sigma N^{c(sigma)} O_sigma / sum_sigma N^{2 c(sigma)},

where ``c(sigma)`` counts the cycles of ``sigma`` in S_t and ``O_sigma``
permutes the t tensor factors.  Every quantity the design test needs can be
evaluated from cycle data alone:

* ``Tr O_sigma = N^{c(sigma)}`` and ``Tr(O_sigma O_tau) = N^{c(sigma tau)}``;
* ``Tr(O_sigma rho^{(x)t}) = prod_cycles Tr(rho^len)``.

So verifying a design at fixed t costs O(M N^3 + M^2 N^2) no matter how
large N^t is.  Dense N^t x N^t realisations are kept as an oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CapacityError, DimensionError, UnsupportedError, ValidationError
from .qstate import Ensemble

MAX_ORDER = 8
MAX_DENSE = 4096
DEFAULT_TOLERANCE = 1e-10


# ------------------------------------------------------------ symmetric group

def _check_order(t):
    if t < 1:
        raise ValueError(f"order must be positive, got {t}")
    if t > MAX_ORDER:
        raise CapacityError(f"order t={t} exceeds the S_t enumeration limit {MAX_ORDER}")


@lru_cache(maxsize=None)
def permutations(t: int) -> np.ndarray:
    """All of S_t as a read-only ``(t!, t)`` array, identity first."""
    _check_order(t)
    p = np.array(list(itertools.permutations(range(t))), dtype=np.int64).reshape(-1, t)
    p.setflags(write=False)
    return p


@lru_cache(maxsize=None)
def cycle_count_table(t: int) -> np.ndarray:
    c = kernels.cycle_counts(permutations(t))
    c.setflags(write=False)
    return c


def cycle_type(sigma) -> tuple[int, ...]:
    """Cycle lengths of ``sigma`` in descending order."""
    sigma = list(sigma)
    seen = [False] * len(sigma)
    out = []
    for i in range(len(sigma)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = sigma[j]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def integer_partitions(t: int):
    """Partitions of t as descending tuples."""
    def rec(n, cap):
        if n == 0:
            yield ()
            return
        for k in range(min(n, cap), 0, -1):
            for rest in rec(n - k, k):
                yield (k,) + rest
    return list(rec(t, t))


def class_size(partition) -> int:
    """Number of permutations of the given cycle type."""
    t = sum(partition)
    denom = 1
    for k, m in _multiplicities(partition).items():
        denom *= k ** m * math.factorial(m)
    return math.factorial(t) // denom


def _multiplicities(partition):
    out = {}
    for k in partition:
        out[k] = out.get(k, 0) + 1
    return out


def class_representative(partition) -> np.ndarray:
    """Canonical permutation with consecutive cycles ``(0..k-1)(k..)...``."""
    rep = []
    start = 0
    for k in partition:
        rep.extend(range(start + 1, start + k))
        rep.append(start)
        start += k
    return np.array(rep, dtype=np.int64)


def permutation_trace(sigma, N: int) -> int:
    """``Tr O_sigma = N^{c(sigma)}`` on ``(C^N)^{(x)t}``."""
    _check_order(len(sigma))
    return int(N) ** len(cycle_type(sigma))


def moment_trace(rho_powers, sigma) -> float:
    """``Tr(O_sigma rho^{(x)t})`` from the power sums ``Tr(rho^k)``.

    ``rho_powers[k-1]`` must hold ``Tr(rho^k)`` for every cycle length k of
    ``sigma``.
    """
    out = 1.0
    for k in cycle_type(sigma):
        if k > len(rho_powers):
            raise IndexError(f"missing power sum Tr(rho^{k})")
        out *= rho_powers[k - 1]
    return out


# -------------------------------------------------------- omega and gamma

def _normaliser(N, t) -> int:
    # sum_sigma N^{2c} = N^2 (N^2+1) ... (N^2+t-1)
    out = 1
    for k in range(t):
        out *= N * N + k
    return out


@dataclass(frozen=True, eq=False)
class MomentOperator:
    """Class-function expansion ``sum_sigma coeff(sigma) O_sigma`` on (C^N)^t.

    ``cycle_coefficients`` maps permutation tuples to real coefficients.
    """

    dim: int
    order: int
    cycle_coefficients: dict = field(repr=False)
    dense: np.ndarray | None = field(default=None, repr=False)

    def coefficient(self, sigma) -> float:
        return self.cycle_coefficients.get(tuple(int(s) for s in sigma), 0.0)

    def class_coefficients(self) -> dict:
        """Coefficient per cycle type; raises if not constant on classes."""
        out = {}
        for sigma, c in self.cycle_coefficients.items():
            ct = cycle_type(sigma)
            if ct in out and abs(out[ct] - c) > 1e-14 * max(1.0, abs(c)):
                raise ValidationError(f"coefficients differ inside class {ct}")
            out.setdefault(ct, c)
        return out

    def materialize(self) -> "MomentOperator":
        if self.dense is not None:
            return self
        return MomentOperator(self.dim, self.order, self.cycle_coefficients,
                              dense_from_coefficients(self.dim, self.order, self.cycle_coefficients))

    def trace(self) -> float:
        return float(sum(c * self.dim ** len(cycle_type(s))
                         for s, c in self.cycle_coefficients.items()))


def permutation_operator(sigma, N: int) -> np.ndarray:
    """Dense ``O_sigma`` sending factor ``k`` to slot ``sigma(k)``."""
    sigma = np.asarray(sigma, dtype=np.int64)
    t = sigma.size
    _check_dense(N, t)
    idx = np.indices((N,) * t).reshape(t, -1)
    # |i_0 ... i_{t-1}>  ->  |j> with j_{sigma(k)} = i_k
    out_idx = np.empty_like(idx)
    out_idx[sigma] = idx
    rows = np.ravel_multi_index(tuple(out_idx), (N,) * t)
    cols = np.arange(N ** t)
    op = np.zeros((N ** t, N ** t))
    op[rows, cols] = 1.0
    return op


def _check_dense(N, t):
    if N ** t > MAX_DENSE:
        raise CapacityError(
            f"dense realisation needs N^t = {N ** t} > {MAX_DENSE}; use the cycle-sum path")


def dense_from_coefficients(N, t, coefficients) -> np.ndarray:
    _check_dense(N, t)
    dim = N ** t
    idx = np.indices((N,) * t).reshape(t, -1)
    cols = np.arange(dim)
    out = np.zeros((dim, dim))
    for sigma, c in coefficients.items():
        if c == 0:
            continue
        sigma = np.asarray(sigma, dtype=np.int64)
        out_idx = np.empty_like(idx)
        out_idx[sigma] = idx
        rows = np.ravel_multi_index(tuple(out_idx), (N,) * t)
        out[rows, cols] += c
    return out


def omega(N: int, t: int, materialize: bool = False) -> MomentOperator:
    """Moment operator ``omega_{N,t}``; ``materialize`` also builds the dense form."""
    _check_order(t)
    if N < 1:
        raise DimensionError(f"dimension must be positive, got {N}")
    if materialize:
        _check_dense(N, t)
    z = _normaliser(N, t)
    perms = permutations(t)
    counts = cycle_count_table(t)
    coeffs = {tuple(int(v) for v in p): N ** int(c) / z for p, c in zip(perms, counts)}
    op = MomentOperator(N, t, coeffs)
    return op.materialize() if materialize else op


def gamma_exact(N: int, t: int) -> Fraction:
    """``gamma_{N,t} = Tr omega_{N,t}^2`` as an exact rational."""
    _check_order(t)
    perms = permutations(t)
    counts = cycle_count_table(t)
    num = 0
    for part in integer_partitions(t):
        rep = class_representative(part)
        # sum_sigma N^{c(sigma)} N^{c(sigma rep)}, histogrammed for exact ints
        joint = kernels.composed_cycle_counts(perms, rep)
        hist = np.zeros((t + 1, t + 1), dtype=np.int64)
        np.add.at(hist, (counts, joint), 1)
        inner = sum(int(hist[a, b]) * N ** (a + b)
                    for a, b in zip(*np.nonzero(hist)))
        num += class_size(part) * N ** len(part) * inner
    z = _normaliser(N, t)
    return Fraction(num, z * z)


def gamma(N: int, t: int) -> float:
    """``gamma_{N,t}``, the saturation value of the mixed-state Welch bound."""
    return float(gamma_exact(N, t))


def partial_trace_omega(op: MomentOperator) -> MomentOperator:
    """Trace out the last tensor factor of a cycle-sum operator.

    ``Tr_t O_sigma = N O_{sigma'}`` if t is a fixed point, otherwise
    ``O_{sigma'}`` where ``sigma'`` splices t out of its cycle.
    """
    t = op.order
    if t < 2:
        raise UnsupportedError("cannot reduce a first-order moment operator to order 0")
    last = t - 1
    out = {}
    for sigma, c in op.cycle_coefficients.items():
        s = list(sigma)
        if s[last] == last:
            factor = op.dim
        else:
            factor = 1
            pre = s.index(last)
            s[pre] = s[last]
        key = tuple(s[:last])
        out[key] = out.get(key, 0.0) + factor * c
    reduced = MomentOperator(op.dim, t - 1, out)
    return reduced.materialize() if op.dense is not None else reduced


# ------------------------------------------------------------ design residual

@dataclass(frozen=True)
class DesignReport:
    """Outcome of the mixed-state Welch-bound test at one order."""

    t: int
    delta: float
    gamma: float
    cross_term: float
    overlap_term: float
    is_design: bool
    tolerance: float = DEFAULT_TOLERANCE

    def to_dict(self) -> dict:
        return {"t": self.t, "delta": self.delta, "gamma": self.gamma,
                "cross_term": self.cross_term, "overlap_term": self.overlap_term,
                "is_design": self.is_design, "tolerance": self.tolerance}


def power_sums(matrices, t) -> np.ndarray:
    """``Tr(rho_i^k)`` for k = 1..t, shape ``(M, t)``."""
    ev = np.linalg.eigvalsh(np.asarray(matrices))
    return np.stack([(ev ** k).sum(axis=1) for k in range(1, t + 1)], axis=1)


def omega_expectations(matrices, t) -> np.ndarray:
    """``Tr(omega_{N,t} rho_i^{(x)t})`` per member via cycle types."""
    matrices = np.asarray(matrices)
    N = matrices.shape[1]
    p = power_sums(matrices, t)
    acc = np.zeros(matrices.shape[0])
    for part in integer_partitions(t):
        term = np.full(matrices.shape[0], float(class_size(part) * N ** len(part)))
        for k in part:
            term = term * p[:, k - 1]
        acc += term
    return acc / _normaliser(N, t)


def _dense_omega_expectations(matrices, t):
    matrices = np.asarray(matrices)
    N = matrices.shape[1]
    w = omega(N, t, materialize=True).dense
    out = np.empty(matrices.shape[0])
    for i, m in enumerate(matrices):
        big = m
        for _ in range(t - 1):
            big = np.kron(big, m)
        out[i] = np.sum(w.T * big).real
    return out


def _mixed_ensemble(ensemble):
    if not isinstance(ensemble, Ensemble):
        raise TypeError("delta_mixed expects an Ensemble")
    return ensemble.density_matrices(), ensemble.weights


def delta_mixed(ensemble: Ensemble, t: int, tolerance: float = DEFAULT_TOLERANCE,
                method: str = "cycles") -> DesignReport:
    """Welch-type residual ``delta = gamma - 2 <omega, avg rho^t> + avg Tr(rho_i rho_j)^t``.

    ``delta >= 0`` always, with equality exactly for mixed-state t-designs.
    ``method="dense"`` evaluates the cross term against the dense operator
    (only for N^t <= 4096) and is meant as an independent check.
    """
    _check_order(t)
    mats, w = _mixed_ensemble(ensemble)
    N = mats.shape[1]
    if abs(w.sum() - 1.0) > 1e-12:
        raise ValidationError("ensemble weights are not normalised")
    if method == "cycles":
        expect = omega_expectations(mats, t)
    elif method == "dense":
        expect = _dense_omega_expectations(mats, t)
    else:
        raise ValueError(f"unknown method {method!r}")
    g = gamma(N, t)
    cross = 2.0 * float(w @ expect)
    # Tr(rho_i rho_j) = <vec rho_i, vec rho_j> for Hermitian members
    ov = kernels.weighted_gram_power(mats.reshape(mats.shape[0], -1), w, t)
    delta = g - cross + ov
    return DesignReport(t, delta, g, cross, ov, bool(delta <= tolerance), tolerance)


# ------------------------------------------------------- projective / unitary

@dataclass(frozen=True)
class FramePotential:
    value: float
    bound: float
    delta: float
    is_design: bool

    def __iter__(self):
        return iter((self.value, self.bound, self.delta))


def frame_potential_projective(ensemble: Ensemble, t: int,
                               tolerance: float = DEFAULT_TOLERANCE) -> FramePotential:
    """``sum_ij w_i w_j |<psi_i|psi_j>|^{2t}`` against ``1 / binom(d+t-1, t)``."""
    if not isinstance(ensemble, Ensemble) or ensemble.kind != "pure":
        raise TypeError("projective frame potential needs a pure-state ensemble")
    d = ensemble.dim
    value = kernels.weighted_gram_power(ensemble.data, ensemble.weights, 2 * t)
    bound = 1.0 / math.comb(d + t - 1, t)
    delta = value - bound
    return FramePotential(value, bound, delta, bool(delta <= tolerance))


def _longest_increasing(p) -> int:
    tails = []
    for x in p:
        lo, hi = 0, len(tails)
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(tails):
            tails.append(x)
        else:
            tails[lo] = x
    return len(tails)


@lru_cache(maxsize=None)
def haar_trace_moment(N: int, t: int) -> int:
    """Exact ``int |Tr U|^{2t} dU`` over U(N).

    Equals the number of permutations in S_t with no increasing subsequence
    longer than N.  The Monte-Carlo oracle cross-checks these values.
    """
    _check_order(t)
    if N >= t:
        return math.factorial(t)
    return sum(1 for p in permutations(t) if _longest_increasing(p) <= N)


@dataclass(frozen=True, eq=False)
class UnitarySet:
    """Weighted family of N x N unitaries."""

    matrices: np.ndarray
    weights: np.ndarray
    tol: float = field(default=1e-10, repr=False)

    def __post_init__(self):
        u = np.array(self.matrices, dtype=complex)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if u.ndim != 3 or u.shape[1] != u.shape[2] or u.shape[0] == 0:
            raise DimensionError(f"unitary stack has shape {u.shape}")
        if w.size != u.shape[0]:
            raise DimensionError("one weight per unitary required")
        if (w < 0).any() or abs(w.sum() - 1) > 1e-12:
            raise ValidationError("unitary weights must be a probability vector")
        eye = np.eye(u.shape[1])
        err = np.abs(np.einsum("iba,ibc->iac", u.conj(), u) - eye).max()
        if err > self.tol:
            raise ValidationError(f"non-unitary member (|U^dag U - I| = {err:.3e})")
        u.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "matrices", u)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, matrices) -> "UnitarySet":
        matrices = np.asarray(matrices)
        return cls(matrices, np.full(len(matrices), 1.0 / len(matrices)))

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __len__(self):
        return self.matrices.shape[0]


def frame_potential_unitary(unitaries, t: int, weights=None,
                            tolerance: float = DEFAULT_TOLERANCE) -> FramePotential:
    """``sum_ij w_i w_j |Tr(U_i^dag U_j)|^{2t}`` against the Haar moment."""
    if not isinstance(unitaries, UnitarySet):
        unitaries = (UnitarySet.uniform(unitaries) if weights is None
                     else UnitarySet(unitaries, weights))
    u = unitaries.matrices
    # Tr(U_i^dag U_j) = <vec U_i, vec U_j>
    value = kernels.weighted_gram_power(u.reshape(u.shape[0], -1), unitaries.weights, 2 * t)
    bound = float(haar_trace_moment(unitaries.dim, t))
    delta = value - bound
    return FramePotential(value, bound, delta, bool(delta <= tolerance))
