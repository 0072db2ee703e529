"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each pair is first checked for agreement, then timed with the JIT already
warm.  Results print as a table; nothing is written to disk.
"""

import argparse
import timeit

import numpy as np

from qdesign import kernels
from qdesign.moments import class_representative, permutations


def cases(rng):
    perms = permutations(7)                      # 5040 x 7
    rho = class_representative((3, 2, 2))
    X = rng.standard_normal((2000, 16)) + 1j * rng.standard_normal((2000, 16))
    w = np.full(2000, 1 / 2000)
    yield "cycle_counts S_7", "cycle_counts", (perms,)
    yield "composed_cycle_counts S_7", "composed_cycle_counts", (perms, rho)
    yield "weighted_gram_power M=2000 d=16 p=4", "weighted_gram_power", (X, w, 4)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can run")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<40}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for label, name, arg in cases(rng):
        fast = getattr(kernels, f"_{name}_numba")
        slow = getattr(kernels, f"_{name}_numpy")
        a, b = fast(*arg), slow(*arg)           # also triggers compilation
        assert np.allclose(a, b, rtol=1e-10, atol=1e-12), label
        t_fast = min(timeit.repeat(lambda: fast(*arg), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*arg), number=1, repeat=args.repeat))
        print(f"{label:<40}{1e3 * t_slow:>12.2f}{1e3 * t_fast:>12.2f}{t_slow / t_fast:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
