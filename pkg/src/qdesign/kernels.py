"""Hot numeric kernels.

Each kernel has a numba implementation and a pure-numpy one with the same
signature.  The public names dispatch to numba when it is importable and the
environment variable ``QDESIGN_DISABLE_NUMBA`` is not set to a truthy value;
otherwise the numpy path is used.  Both variants stay importable under the
``_numba`` / ``_numpy`` suffixes so they can be compared against each other.

Kernels
-------
cycle_counts(perms)
    Number of cycles of every row of an ``(n, t)`` permutation array.
composed_cycle_counts(perms, rho)
    Cycle counts of ``sigma o rho`` for every row ``sigma``.
weighted_gram_power(X, w, p)
    ``sum_ij w_i w_j |<x_i, x_j>|**p`` without materialising the Gram matrix.
"""

import os
import warnings

import numpy as np

_FLAG = os.environ.get("QDESIGN_DISABLE_NUMBA", "").strip().lower()

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False
    warnings.warn("numba could not be imported; falling back to numpy kernels")

USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")

# rows per block in the numpy Gram fallback; bounds memory at ~BLOCK*M floats
_GRAM_BLOCK = 2048


# ---------------------------------------------------------------- numpy path

def _cycle_counts_numpy(perms):
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    n, t = perms.shape
    if t == 0:
        return np.zeros(n, dtype=np.int64)
    # a position is the representative of its cycle iff it is the cycle minimum
    cur = np.broadcast_to(np.arange(t, dtype=np.int64), (n, t)).copy()
    low = cur.copy()
    for _ in range(t - 1):
        cur = np.take_along_axis(perms, cur, axis=1)
        np.minimum(low, cur, out=low)
    return (low == np.arange(t)).sum(axis=1).astype(np.int64)


def _composed_cycle_counts_numpy(perms, rho):
    perms = np.asarray(perms, dtype=np.int64)
    rho = np.asarray(rho, dtype=np.int64)
    return _cycle_counts_numpy(perms[:, rho])


def _weighted_gram_power_numpy(X, w, p):
    X = np.asarray(X)
    w = np.asarray(w, dtype=np.float64)
    total = 0.0
    m = X.shape[0]
    for start in range(0, m, _GRAM_BLOCK):
        blk = X[start:start + _GRAM_BLOCK]
        g = np.abs(blk.conj() @ X.T) ** p
        total += float(w[start:start + _GRAM_BLOCK] @ g @ w)
    return total


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _cycle_counts_nb(perms):
        n, t = perms.shape
        out = np.zeros(n, dtype=np.int64)
        seen = np.zeros(t, dtype=np.bool_)
        for r in range(n):
            seen[:] = False
            c = 0
            for i in range(t):
                if not seen[i]:
                    c += 1
                    j = i
                    while not seen[j]:
                        seen[j] = True
                        j = perms[r, j]
            out[r] = c
        return out

    @numba.njit(cache=True)
    def _composed_cycle_counts_nb(perms, rho):
        n, t = perms.shape
        out = np.zeros(n, dtype=np.int64)
        seen = np.zeros(t, dtype=np.bool_)
        for r in range(n):
            seen[:] = False
            c = 0
            for i in range(t):
                if not seen[i]:
                    c += 1
                    j = i
                    while not seen[j]:
                        seen[j] = True
                        j = perms[r, rho[j]]
            out[r] = c
        return out

    @numba.njit(cache=True)
    def _ipow(x, n):
        r = 1.0
        while n > 0:
            if n & 1:
                r *= x
            x *= x
            n >>= 1
        return r

    @numba.njit(cache=True)
    def _weighted_gram_power_nb(Xr, Xi, w, p):
        # |<x_i, x_j>|^p using the upper triangle only; integer powers of
        # |.|^2 when p is even, otherwise of |.|
        m, k = Xr.shape
        half = p % 2 == 0
        q = p // 2 if half else p
        total = 0.0
        for i in range(m):
            s = 0.0
            for a in range(k):
                s += Xr[i, a] * Xr[i, a] + Xi[i, a] * Xi[i, a]
            total += w[i] * w[i] * _ipow(s, p)  # <x_i, x_i> = |x_i|^2 is real
            acc = 0.0
            for j in range(i + 1, m):
                re = 0.0
                im = 0.0
                for a in range(k):
                    re += Xr[i, a] * Xr[j, a] + Xi[i, a] * Xi[j, a]
                    im += Xr[i, a] * Xi[j, a] - Xi[i, a] * Xr[j, a]
                s = re * re + im * im
                acc += w[j] * (_ipow(s, q) if half else _ipow(np.sqrt(s), q))
            total += 2.0 * w[i] * acc
        return total

    def _cycle_counts_numba(perms):
        return _cycle_counts_nb(np.ascontiguousarray(perms, dtype=np.int64))

    def _composed_cycle_counts_numba(perms, rho):
        return _composed_cycle_counts_nb(
            np.ascontiguousarray(perms, dtype=np.int64),
            np.ascontiguousarray(rho, dtype=np.int64),
        )

    def _weighted_gram_power_numba(X, w, p):
        X = np.asarray(X, dtype=np.complex128)
        w = np.ascontiguousarray(w, dtype=np.float64)
        if int(p) != p or p < 0:
            return _weighted_gram_power_numpy(X, w, p)
        return float(_weighted_gram_power_nb(np.ascontiguousarray(X.real),
                                             np.ascontiguousarray(X.imag), w, int(p)))

else:  # pragma: no cover
    _cycle_counts_numba = _cycle_counts_numpy
    _composed_cycle_counts_numba = _composed_cycle_counts_numpy
    _weighted_gram_power_numba = _weighted_gram_power_numpy


# ---------------------------------------------------------------- dispatch

if USE_NUMBA:
    cycle_counts = _cycle_counts_numba
    composed_cycle_counts = _composed_cycle_counts_numba
    weighted_gram_power = _weighted_gram_power_numba
else:
    cycle_counts = _cycle_counts_numpy
    composed_cycle_counts = _composed_cycle_counts_numpy
    weighted_gram_power = _weighted_gram_power_numpy


def backend():
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if USE_NUMBA else "numpy"
