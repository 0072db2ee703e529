"""String keys for every built-in construction, as used by the CLI.

Keys::

    standard-mub-d4, iso-mub, sic-d3
    platonic-{tetra,octa,cube,icosa,dodeca}
    platonic-pure-{tetra,octa,cube,icosa,dodeca}
    interval-{L,HS}-t{T}-m{M}
    binary-{tetrahedral,octahedral,icosahedral}
    iso-mub-local-{left,right}[-full]
    product:<simplex key>:<unitary key>[:t<T>]
"""

from __future__ import annotations

import json
import re

from . import constructions as C
from .errors import UnsupportedError

_PLATONIC = {"tetra": "tetrahedron", "octa": "octahedron", "cube": "cube",
             "icosa": "icosahedron", "dodeca": "dodecahedron"}

_FIXED = {
    "standard-mub-d4": lambda: C.standard_mub_d4().ensemble(),
    "iso-mub": lambda: C.iso_mub()[0].ensemble(),
    "sic-d3": C.sic_d3,
}
for _short, _solid in _PLATONIC.items():
    _FIXED[f"platonic-{_short}"] = (lambda s=_solid: C.platonic_design(s))
    _FIXED[f"platonic-pure-{_short}"] = (lambda s=_solid: C.platonic_pure_states(s))
for _g in ("tetrahedral", "octahedral", "icosahedral"):
    _FIXED[f"binary-{_g}"] = (lambda g=_g: C.binary_polyhedral_group(g))
for _side in ("left", "right"):
    _FIXED[f"iso-mub-local-{_side}"] = (lambda s=_side: C.iso_mub_local_unitaries(s))
    _FIXED[f"iso-mub-local-{_side}-full"] = (lambda s=_side: C.iso_mub_local_unitaries(s, True))

_INTERVAL = re.compile(r"interval-(L|HS)-t(\d+)-m(\d+)$", re.IGNORECASE)


def names():
    """All fixed keys plus the catalogued interval designs."""
    out = sorted(_FIXED)
    for t, m, measure in C.interval_catalog():
        tag = "L" if measure == C.LEBESGUE else "HS"
        out.append(f"interval-{tag}-t{t}-m{m}")
    return out


def build(name: str):
    """Construct the object registered under ``name``."""
    if name in _FIXED:
        return _FIXED[name]()
    m = _INTERVAL.match(name)
    if m:
        return C.interval_design(int(m.group(2)), int(m.group(3)), m.group(1))
    if name.startswith("product:"):
        parts = name.split(":")
        if len(parts) not in (3, 4):
            raise UnsupportedError("product keys look like product:<simplex>:<unitaries>[:t<T>]")
        t = None
        if len(parts) == 4:
            if not re.fullmatch(r"t\d+", parts[3]):
                raise UnsupportedError(f"bad order suffix {parts[3]!r}")
            t = int(parts[3][1:])
        return build_product({"simplex": parts[1], "unitaries": parts[2], "t": t})
    raise UnsupportedError(f"unknown construction {name!r}; known: {', '.join(names())}")


def build_product(config):
    """Product design from a dict (or JSON text) with keys ``simplex``,
    ``unitaries`` and optional ``t`` (defaults to the simplex order)."""
    if isinstance(config, str):
        config = json.loads(config)
    simplex = build(config["simplex"])
    unitaries = build(config["unitaries"])
    if not isinstance(simplex, C.SimplexDesign):
        raise UnsupportedError(f"{config['simplex']!r} is not a simplex design")
    t = config.get("t") or simplex.order
    if t is None:
        raise UnsupportedError("product design needs an order t")
    return C.product_design(C.restrict_to_chamber(simplex), unitaries, int(t))
