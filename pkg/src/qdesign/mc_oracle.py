"""Monte-Carlo ground truth for the analytic formulas.

Samplers:

* Hilbert-Schmidt density matrices ``G G^dag / Tr(G G^dag)`` from a square
  complex Ginibre matrix ``G``;
* Fubini-Study pure states as normalised complex Gaussian vectors;
* Haar unitaries from the QR decomposition of a Ginibre matrix, with the
  phases of ``diag(R)`` moved into ``Q``.

Every run is split into fixed-size chunks and chunk ``k`` draws from the
k-th child of ``SeedSequence(seed)``, so the output depends only on
``(seed, count, chunk_size)`` and not on how chunks are scheduled.
Estimators reduce chunk sums in chunk order.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, UnsupportedError
from .moments import MAX_DENSE, omega

DEFAULT_SEED = 20240611
DEFAULT_CHUNK = 1 << 15


def default_seed() -> int:
    """Seed from ``QDESIGN_SEED`` when set, else a fixed default."""
    raw = os.environ.get("QDESIGN_SEED", "").strip()
    return int(raw, 0) if raw else DEFAULT_SEED


@dataclass(frozen=True)
class SamplerConfig:
    dim: int
    count: int
    seed: int = field(default_factory=default_seed)
    chunk_size: int = DEFAULT_CHUNK
    workers: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def chunks(self):
        """``(generator, size)`` for every chunk, in order."""
        n_chunks = -(-self.count // self.chunk_size)
        children = np.random.SeedSequence(self.seed).spawn(n_chunks)
        for k, ss in enumerate(children):
            size = min(self.chunk_size, self.count - k * self.chunk_size)
            yield np.random.Generator(np.random.PCG64(ss)), size


def _ginibre(rng, n, rows, cols):
    return (rng.standard_normal((n, rows, cols))
            + 1j * rng.standard_normal((n, rows, cols))) / np.sqrt(2)


def _hs_chunk(rng, n, N):
    g = _ginibre(rng, n, N, N)
    rho = g @ g.conj().transpose(0, 2, 1)
    return rho / np.trace(rho, axis1=1, axis2=2).real[:, None, None]


def _fs_chunk(rng, n, d):
    v = _ginibre(rng, n, d, 1)[..., 0]
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _haar_chunk(rng, n, N):
    q, r = np.linalg.qr(_ginibre(rng, n, N, N))
    diag = np.diagonal(r, axis1=1, axis2=2)
    return q * (diag / np.abs(diag))[:, None, :]


_SAMPLERS = {"hs": _hs_chunk, "fs": _fs_chunk, "haar": _haar_chunk}


def iter_samples(kind: str, config: SamplerConfig):
    """Yield sample batches chunk by chunk."""
    fn = _SAMPLERS[kind]
    for rng, n in config.chunks():
        yield fn(rng, n, config.dim)


def sample_hs(config: SamplerConfig) -> np.ndarray:
    """``(count, N, N)`` Hilbert-Schmidt random density matrices."""
    return np.concatenate(list(iter_samples("hs", config)))


def sample_fs(config: SamplerConfig) -> np.ndarray:
    """``(count, d)`` Fubini-Study random unit vectors."""
    return np.concatenate(list(iter_samples("fs", config)))


def sample_haar(config: SamplerConfig) -> np.ndarray:
    """``(count, N, N)`` Haar random unitaries."""
    return np.concatenate(list(iter_samples("haar", config)))


# ----------------------------------------------------------------- estimators

@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error (same shape)."""

    mean: np.ndarray
    stderr: np.ndarray
    count: int
    seed: int

    def zscore(self, exact) -> np.ndarray:
        err = np.abs(self.mean - exact)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(self.stderr > 0, err / np.where(self.stderr > 0, self.stderr, 1), 0.0)
        return np.where((self.stderr == 0) & (err > 1e-12), np.inf, z)

    def within(self, exact, sigmas=3.0) -> bool:
        return bool(np.all(self.zscore(exact) <= sigmas))


def _reduce(config, statistic):
    """Run ``statistic(rng, n) -> (sum, sum_sq)`` over chunks and combine."""
    chunks = list(config.chunks())
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            parts = list(pool.map(lambda c: statistic(*c), chunks))
    else:
        parts = [statistic(*c) for c in chunks]
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    n = config.count
    mean = total / n
    if np.iscomplexobj(mean):
        var = (total_sq.real / n - mean.real ** 2) + (total_sq.imag / n - mean.imag ** 2)
    else:
        var = total_sq / n - mean ** 2
    stderr = np.sqrt(np.clip(var, 0, None) * n / max(n - 1, 1) / n)
    return Estimate(mean, stderr, n, config.seed)


def _sums(x):
    # squares kept separately for real and imaginary parts
    if np.iscomplexobj(x):
        return x.sum(axis=0), (x.real ** 2).sum(axis=0) + 1j * (x.imag ** 2).sum(axis=0)
    return x.sum(axis=0), (x ** 2).sum(axis=0)


def _tensor_power(rho, t):
    n, N, _ = rho.shape
    out = np.ones((n, 1, 1), dtype=complex)
    for _ in range(t):
        out = np.einsum("nab,ncd->nacbd", out, rho).reshape(n, out.shape[1] * N, -1)
    return out


@dataclass(frozen=True)
class OmegaEstimate:
    estimate: Estimate
    exact: np.ndarray
    max_error: float
    max_zscore: float

    @property
    def within_3_sigma(self) -> bool:
        return bool(self.max_zscore <= 3.0)


def estimate_omega(N: int, t: int, config: SamplerConfig | None = None,
                   count: int = 10 ** 5) -> OmegaEstimate:
    """Entrywise Monte-Carlo mean of ``rho^{(x) t}`` over HS samples."""
    if N ** t > MAX_DENSE:
        raise CapacityError(f"estimate_omega needs N^t <= {MAX_DENSE}, got {N ** t}")
    config = config or SamplerConfig(N, count)
    if config.dim != N:
        raise ValueError("sampler dimension does not match N")
    # keep the per-chunk tensor-power buffer around 64 MB
    cap = max(1, (1 << 22) // (N ** (2 * t)))
    if config.chunk_size > cap:
        config = SamplerConfig(N, config.count, config.seed, cap, config.workers)

    def stat(rng, n):
        return _sums(_tensor_power(_hs_chunk(rng, n, N), t))

    est = _reduce(config, stat)
    exact = omega(N, t, materialize=True).dense
    z = est.zscore(exact)
    return OmegaEstimate(est, exact, float(np.abs(est.mean - exact).max()), float(z.max()))


def estimate_power_traces(N: int, powers, config: SamplerConfig | None = None,
                          count: int = 10 ** 5) -> dict:
    """Mean ``Tr(rho^k)`` over HS samples for each ``k`` in ``powers``."""
    powers = tuple(powers)
    config = config or SamplerConfig(N, count)

    def stat(rng, n):
        ev = np.linalg.eigvalsh(_hs_chunk(rng, n, N))
        return _sums(np.stack([(ev ** k).sum(axis=1) for k in powers], axis=1))

    est = _reduce(config, stat)
    return {k: Estimate(est.mean[i], est.stderr[i], est.count, est.seed)
            for i, k in enumerate(powers)}


def estimate_reduced_purity(N: int, config: SamplerConfig | None = None,
                            count: int = 10 ** 5) -> Estimate:
    """Mean purity of ``Tr_B |psi><psi|`` for FS-random ``psi`` in ``C^N (x) C^N``."""
    config = config or SamplerConfig(N * N, count)
    if config.dim != N * N:
        raise ValueError("sampler dimension must be N^2")

    def stat(rng, n):
        m = _fs_chunk(rng, n, N * N).reshape(n, N, N)
        red = m @ m.conj().transpose(0, 2, 1)
        return _sums(np.einsum("nab,nba->n", red, red).real)

    return _reduce(config, stat)


def estimate_haar_trace_moments(N: int, t_max: int, config: SamplerConfig | None = None,
                                count: int = 10 ** 5) -> dict:
    """Mean ``|Tr U|^{2t}`` over Haar unitaries for ``t = 1..t_max``."""
    config = config or SamplerConfig(N, count)

    def stat(rng, n):
        a = np.abs(np.trace(_haar_chunk(rng, n, N), axis1=1, axis2=2)) ** 2
        return _sums(np.stack([a ** t for t in range(1, t_max + 1)], axis=1))

    est = _reduce(config, stat)
    return {t: Estimate(est.mean[t - 1], est.stderr[t - 1], est.count, est.seed)
            for t in range(1, t_max + 1)}


def _exponents(N, degree):
    return [a for a in itertools.product(range(degree + 1), repeat=N) if 0 < sum(a) <= degree]


def estimate_simplex_moments(N: int, measure: str, degree: int,
                             config: SamplerConfig | None = None, count: int = 10 ** 5,
                             symmetrize: bool = True) -> dict:
    """Monte-Carlo ``E[prod l_k^{a_k}]`` for every exponent tuple of degree <= ``degree``.

    ``measure="hs"`` uses eigenvalues of HS samples, ``"lebesgue"`` uses flat
    Dirichlet points.  With ``symmetrize`` each sample is averaged over all
    coordinate orderings (the unordered law); otherwise eigenvalues are
    sorted in descending order.
    """
    if N not in (2, 3):
        raise UnsupportedError("simplex moment sampling supports N = 2 or 3")
    if degree > 6:
        raise UnsupportedError("degree must be at most 6")
    m = measure.lower()
    if m not in ("hs", "hilbert-schmidt", "lebesgue", "l"):
        raise UnsupportedError(f"unknown measure {measure!r}")
    hs = m in ("hs", "hilbert-schmidt")
    config = config or SamplerConfig(N, count)
    alphas = _exponents(N, degree)
    A = np.array(alphas, dtype=float)
    perms = list(itertools.permutations(range(N))) if symmetrize else [tuple(range(N))]

    def stat(rng, n):
        if hs:
            lam = np.linalg.eigvalsh(_hs_chunk(rng, n, N))[:, ::-1]
        else:
            lam = rng.dirichlet(np.ones(N), size=n)
        vals = np.zeros((n, len(alphas)))
        for p in perms:
            vals += np.prod(lam[:, None, list(p)] ** A[None], axis=2)
        return _sums(vals / len(perms))

    est = _reduce(config, stat)
    return {a: Estimate(est.mean[i], est.stderr[i], est.count, est.seed)
            for i, a in enumerate(alphas)}


def bloch_radii_hs(config: SamplerConfig) -> np.ndarray:
    """Bloch radii (radius-1/2 convention) of qubit HS samples."""
    if config.dim != 2:
        raise UnsupportedError("Bloch radii need N = 2")
    out = []
    for rho in iter_samples("hs", config):
        purity = np.einsum("nab,nba->n", rho, rho).real
        out.append(np.sqrt(np.clip((purity - 0.5) / 2, 0, None)))
    return np.concatenate(out)


def reference_values() -> dict:
    """Pinned Monte-Carlo values shipped with the package (seed, count, stderr included)."""
    import json
    from importlib import resources

    return json.loads(resources.files("qdesign").joinpath("data/mc_reference.json").read_text())
