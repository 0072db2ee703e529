"""Regenerate ``src/qdesign/data/mc_reference.json``.

Runs the Monte-Carlo estimators at large sample counts and stores every value
together with its seed, count and standard error.  A small-count run of each
estimator is stored as well so tests can check bitwise-level reproducibility
cheaply.

    python3 scripts/pin_mc_reference.py
"""

import json
import time
from pathlib import Path

import numpy as np

from qdesign.mc_oracle import (SamplerConfig, estimate_haar_trace_moments,
                               estimate_power_traces, estimate_simplex_moments)

SEED = 20240611
OUT = Path(__file__).resolve().parents[1] / "src" / "qdesign" / "data" / "mc_reference.json"


def _simplex(N, measure, degree, count):
    est = estimate_simplex_moments(N, measure, degree, SamplerConfig(N, count, SEED))
    return [{"exponents": list(a), "mean": float(e.mean), "stderr": float(e.stderr)}
            for a, e in est.items()]


def main():
    t0 = time.time()
    doc = {"seed": SEED, "generator": "numpy PCG64 via SeedSequence(seed).spawn per chunk",
           "chunk_size": SamplerConfig(2, 1).chunk_size}
    haar = estimate_haar_trace_moments(2, 5, SamplerConfig(2, 10 ** 6, SEED))
    doc["haar_trace_moments_u2"] = {
        "count": 10 ** 6,
        "values": {str(t): {"mean": float(e.mean), "stderr": float(e.stderr)} for t, e in haar.items()}}
    pt = estimate_power_traces(2, (2, 3), SamplerConfig(2, 10 ** 6, SEED))
    doc["hs_power_traces_n2"] = {
        "count": 10 ** 6,
        "values": {str(k): {"mean": float(e.mean), "stderr": float(e.stderr)} for k, e in pt.items()}}
    doc["hs_simplex_moments_n3"] = {"count": 10 ** 7, "degree": 3,
                                    "values": _simplex(3, "hs", 3, 10 ** 7)}
    doc["hs_simplex_moments_n2"] = {"count": 10 ** 6, "degree": 4,
                                    "values": _simplex(2, "hs", 4, 10 ** 6)}
    doc["regression"] = {"count": 20000, "N": 3, "measure": "hs", "degree": 3,
                         "values": _simplex(3, "hs", 3, 20000)}
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT} in {time.time() - t0:.1f} s")


if __name__ == "__main__":
    main()
