"""``qdesign`` command-line interface.

Every command reads JSON documents (see :mod:`qdesign.io`) from a path or
``-`` for stdin and writes to ``-o`` (stdout by default), so commands chain
with pipes::

    qdesign construct iso-mub | qdesign reduce --side B | qdesign verify --type mixed --t 3

Exit codes: 0 success, 1 other failure (or a table mismatch), 2 malformed
or invalid input, 3 unverified design, 4 capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _stringio
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io, registry
from .constructions import decohere, restrict_to_chamber, verify_simplicial
from .constructions.simplex import SimplexDesign
from .errors import (CapacityError, DimensionError, QDesignError, UnsupportedError,
                     UnverifiedDesignError, ValidationError)
from .mc_oracle import SamplerConfig, default_seed, estimate_omega, sample_hs
from .moments import (DEFAULT_TOLERANCE, UnitarySet, delta_mixed, frame_potential_projective,
                      frame_potential_unitary)
from .qstate import Ensemble, bloch_vectors, reduce_ensemble
from .tomography import make_povm, probabilities, reconstruct

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_UNVERIFIED, EXIT_CAPACITY = 0, 1, 2, 3, 4

# Reference residuals, for comparison by ``table``
TABLE2 = {
    "Standard MUB": (0, 0, 0, 3.37e-3, 8.42e-3),
    "IsoMUB": (0, 0, 0, 5.88e-5, 1.47e-4),
    "IsoSIC": (0, 0, 0, 5.39e-4, 1.35e-3),
    "Witting": (0, 0, 0, 6.25e-4, 1.56e-3),
    "Hoggar": (0, 0, 0, 3.37e-3, 8.42e-3),
}
TABLE2_ORDERS = (1, 2, 3, 4, 5)
TABLE3 = {
    "Tetrahedral": (0, 6e-3, 1.25e-2, 1.69e-2),
    "Octahedral": (0, 0, 1.14e-3, 2.85e-3),
    "Cubic": (0, 0, 5.39e-4, 1.35e-3),
    "Icosahedral": (0, 0, 5.88e-5, 1.47e-4),
    "Dodecahedral": (0, 0, 5.88e-5, 1.47e-4),
}
TABLE3_ORDERS = (2, 3, 4, 5)
TABLE3_SOLIDS = {"Tetrahedral": "platonic-tetra", "Octahedral": "platonic-octa",
                 "Cubic": "platonic-cube", "Icosahedral": "platonic-icosa",
                 "Dodecahedral": "platonic-dodeca"}
RELATIVE_TOLERANCE = 0.01
ZERO_TOLERANCE = 1e-10


def _emit(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _load(args, path=None):
    return io.read(path if path is not None else args.input, args.load_tolerance)


# ------------------------------------------------------------------ commands

def cmd_list(args):
    _emit("\n".join(registry.names()), args.output)
    return EXIT_OK


def cmd_construct(args):
    if args.config:
        obj = registry.build_product(Path(args.config).read_text())
    elif args.name:
        obj = registry.build(args.name)
    else:
        raise UnsupportedError("give a construction name or --config")
    io.write(obj, args.output)
    return EXIT_OK


def _verify_one(obj, kind, t, tol):
    if kind == "mixed":
        if not isinstance(obj, Ensemble):
            raise ValidationError("mixed-state verification needs a state ensemble")
        rep = delta_mixed(obj.as_mixed(), t, tol)
        return {"t": t, "delta": rep.delta, "gamma": rep.gamma, "cross_term": rep.cross_term,
                "overlap_term": rep.overlap_term, "is_design": rep.is_design}
    if kind == "projective":
        if not isinstance(obj, Ensemble) or obj.kind != "pure":
            raise ValidationError("projective verification needs a pure ensemble")
        fp = frame_potential_projective(obj, t, tol)
        return {"t": t, "value": fp.value, "bound": fp.bound, "delta": fp.delta,
                "is_design": fp.is_design}
    if kind == "unitary":
        if not isinstance(obj, UnitarySet):
            raise ValidationError("unitary verification needs a unitary family")
        fp = frame_potential_unitary(obj, t, tolerance=tol)
        return {"t": t, "value": fp.value, "bound": fp.bound, "delta": fp.delta,
                "is_design": fp.is_design}
    if not isinstance(obj, SimplexDesign):
        raise ValidationError("simplicial verification needs a simplex design")
    return verify_simplicial(obj, t, tol).to_dict()


def _default_type(obj):
    if isinstance(obj, UnitarySet):
        return "unitary"
    if isinstance(obj, SimplexDesign):
        return "simplicial"
    return "projective" if obj.kind == "pure" else "mixed"


def cmd_verify(args):
    obj = _load(args)
    kind = args.type or _default_type(obj)
    reports = [_verify_one(obj, kind, t, args.tolerance) for t in args.t]
    _emit(json.dumps(reports, indent=2), args.output)
    if args.strict and not all(r["is_design"] for r in reports):
        return EXIT_UNVERIFIED
    return EXIT_OK


def cmd_reduce(args):
    obj = _load(args)
    if not isinstance(obj, Ensemble):
        raise ValidationError("reduce needs a state ensemble")
    io.write(reduce_ensemble(obj, args.side), args.output)
    return EXIT_OK


def cmd_decohere(args):
    obj = _load(args)
    if not isinstance(obj, Ensemble) or obj.kind != "pure":
        raise ValidationError("decohere needs a pure-state ensemble")
    design = decohere(obj)
    if args.chamber:
        design = restrict_to_chamber(design)
    io.write(design, args.output)
    return EXIT_OK


def _read_vector(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.SchemaError(f"invalid JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("probabilities")
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) for x in data):
        raise io.SchemaError("probabilities must be a JSON array of numbers")
    return np.array(data, dtype=float)


def _povm(args):
    obj = _load(args, args.design)
    if not isinstance(obj, Ensemble):
        raise ValidationError("the measurement design must be a state ensemble")
    return make_povm(obj, args.tolerance)


def cmd_probabilities(args):
    design = _povm(args)
    state = _load(args, args.state)
    if not isinstance(state, Ensemble) or len(state) != 1:
        raise ValidationError("state file must hold exactly one state")
    p = probabilities(design, state.density_matrices()[0])
    _emit(json.dumps(p.tolist()), args.output)
    return EXIT_OK


def cmd_reconstruct(args):
    design = _povm(args)
    p = _read_vector(args.probabilities)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rho = reconstruct(design, p, check=False)
    lo = float(np.linalg.eigvalsh(rho).min())
    if lo < -1e-6:
        print(f"warning: reconstruction has eigenvalue {lo:.3e}; statistics are inconsistent",
              file=sys.stderr)
    out = Ensemble("mixed", rho[None], np.ones(1))
    io.write(out, args.output)
    return EXIT_OK


def _table_rows(which, extra):
    if which == 2:
        rows = [("Standard MUB", reduce_ensemble(registry.build("standard-mub-d4"), "B")),
                ("IsoMUB", reduce_ensemble(registry.build("iso-mub"), "B"))]
        orders, ref = TABLE2_ORDERS, TABLE2
    else:
        rows = [(label, registry.build(key)) for label, key in TABLE3_SOLIDS.items()]
        orders, ref = TABLE3_ORDERS, TABLE3
    for label, ens in extra:
        if ens.kind == "pure":
            if ens.bipartition is None:
                raise ValidationError(f"row {label!r}: pure states need a bipartition")
            ens = reduce_ensemble(ens, "B")
        rows.append((label, ens))
    return rows, orders, ref


def _reference(ref, label):
    for key, vals in ref.items():
        if label.lower().startswith(key.lower()) or key.lower().startswith(label.lower()):
            return vals
    return None


def _compare(value, expected):
    if expected == 0:
        return abs(value) <= ZERO_TOLERANCE
    return abs(value - expected) <= RELATIVE_TOLERANCE * abs(expected)


def cmd_table(args):
    extra = []
    for spec in args.row or []:
        label, sep, path = spec.partition("=")
        if not sep:
            raise UnsupportedError("--row takes LABEL=PATH")
        extra.append((label, _load(args, path)))
    rows, orders, ref = _table_rows(args.which, extra)
    results, ok = [], True
    for label, ens in rows:
        deltas = [delta_mixed(ens, t).delta for t in orders]
        expected = _reference(ref, label)
        passed = None if expected is None else all(_compare(d, e) for d, e in zip(deltas, expected))
        ok &= passed is not False
        results.append({"row": label, "t": list(orders), "delta": deltas,
                        "reference": list(expected) if expected else None, "match": passed})
    if args.json:
        _emit(json.dumps(results, indent=2), args.output)
    else:
        head = f"{'t':<14}" + "".join(f"{t:>12}" for t in orders) + "   match"
        lines = [head, "-" * len(head)]
        for r in results:
            cells = "".join(f"{(0.0 if abs(d) <= ZERO_TOLERANCE else d):>12.3e}" for d in r["delta"])
            tag = {True: "ok", False: "MISMATCH", None: "-"}[r["match"]]
            lines.append(f"{r['row']:<14}{cells}   {tag}")
        _emit("\n".join(lines), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def _merge_points(coords, weights, tol=1e-9):
    merged = []
    for c, w in zip(coords, weights):
        for m in merged:
            if np.abs(m[0] - c).max() <= tol:
                m[1] += w
                break
        else:
            merged.append([c, float(w)])
    return merged


def cmd_export_bloch(args):
    obj = _load(args)
    if not isinstance(obj, Ensemble) or obj.dim != 2:
        raise DimensionError("Bloch export needs a qubit ensemble")
    coords = bloch_vectors(obj.density_matrices())
    merged = _merge_points(coords, obj.weights)
    rows = [{"x": float(c[0]) + 0.0, "y": float(c[1]) + 0.0, "z": float(c[2]) + 0.0, "weight": w,
             "purity": 0.5 + 2 * float(c @ c)} for c, w in merged]
    if args.format == "json":
        _emit(json.dumps(rows, indent=2), args.output)
    else:
        buf = _stringio.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["x", "y", "z", "weight", "purity"],
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_sample_hs(args):
    rho = sample_hs(SamplerConfig(args.dim, args.count, args.seed))
    io.write(Ensemble.uniform("mixed", rho), args.output)
    return EXIT_OK


def cmd_estimate_omega(args):
    res = estimate_omega(args.dim, args.t, SamplerConfig(args.dim, args.count, args.seed))
    est = res.estimate
    doc = {"dim": args.dim, "t": args.t, "count": est.count, "seed": est.seed,
           "max_error": res.max_error, "max_zscore": res.max_zscore,
           "within_3_sigma": res.within_3_sigma,
           "estimate": io._pairs(est.mean), "stderr": np.asarray(est.stderr).tolist()}
    _emit(json.dumps(doc), args.output)
    return EXIT_OK


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdesign", description=__doc__.split("\n")[0])
    p.add_argument("--load-tolerance", type=float, default=1e-12,
                   help="tolerance for validating states read from files (default 1e-12)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, input_=True):
        sp = sub.add_parser(name, help=help_)
        if input_:
            sp.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
        sp.add_argument("-o", "--output", default="-", help="output file or - for stdout")
        sp.set_defaults(func=fn)
        return sp

    add("list", cmd_list, "list named constructions", input_=False)

    sp = add("construct", cmd_construct, "build a named design", input_=False)
    sp.add_argument("name", nargs="?")
    sp.add_argument("--config", help="JSON file describing a product design")

    sp = add("verify", cmd_verify, "check design conditions")
    sp.add_argument("--type", choices=["mixed", "projective", "unitary", "simplicial"])
    sp.add_argument("--t", type=int, nargs="+", default=[2])
    sp.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    sp.add_argument("--strict", action="store_true",
                    help="exit with status 3 unless every order passes")

    sp = add("reduce", cmd_reduce, "partial trace of every member")
    sp.add_argument("--side", choices=["A", "B"], default="B", help="subsystem traced out")

    sp = add("decohere", cmd_decohere, "diagonal of every pure state")
    sp.add_argument("--chamber", action="store_true", help="restrict to the ordered chamber")

    for name, fn, help_ in (("reconstruct", cmd_reconstruct, "linear-inversion tomography"),
                            ("probabilities", cmd_probabilities, "outcome distribution of a state")):
        sp = add(name, fn, help_, input_=False)
        sp.add_argument("design")
        sp.add_argument("probabilities" if name == "reconstruct" else "state")
        sp.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    sp = add("table", cmd_table, "reproduce the residual tables", input_=False)
    sp.add_argument("which", type=int, choices=[2, 3])
    sp.add_argument("--row", action="append", metavar="LABEL=PATH",
                    help="extra row from an ensemble file (pure states are reduced over B)")
    sp.add_argument("--json", action="store_true")

    sp = add("export-bloch", cmd_export_bloch, "Bloch coordinates of a qubit ensemble")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    for name, fn in (("sample-hs", cmd_sample_hs), ("estimate-omega", cmd_estimate_omega)):
        sp = add(name, fn, "Monte-Carlo sampling", input_=False)
        sp.add_argument("--dim", type=int, default=2)
        sp.add_argument("--count", type=int, default=1000)
        sp.add_argument("--seed", type=int, default=None)
        if name == "estimate-omega":
            sp.add_argument("--t", type=int, default=2)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", "unset") is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UnverifiedDesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except (ValidationError, DimensionError, io.SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (QDesignError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
