"""Qubit designs built on the vertices of the five Platonic solids."""

from __future__ import annotations

import itertools

import numpy as np

from ..qstate import Ensemble

#: mixing weight at which every Platonic constellation is a mixed 2-design
PLATONIC_MIXING = (5 - np.sqrt(15)) / 10

SOLIDS = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")
_ALIASES = {"tetra": "tetrahedron", "octa": "octahedron", "hexahedron": "cube",
            "icosa": "icosahedron", "dodeca": "dodecahedron"}

_PHI = (1 + np.sqrt(5)) / 2


def canonical_solid(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in SOLIDS:
        raise ValueError(f"unknown Platonic solid {name!r}; choose from {SOLIDS}")
    return name


def solid_vertices(name: str) -> np.ndarray:
    """Unit vertex vectors of a Platonic solid, shape ``(n, 3)``.

    The tetrahedron has a vertex on +z and the other three at azimuths
    -pi/3, pi, pi/3; the remaining solids use their textbook coordinates.
    """
    name = canonical_solid(name)
    if name == "tetrahedron":
        c, s = -1 / 3, np.sqrt(8) / 3
        v = [[0, 0, 1]] + [[s * np.cos(p), s * np.sin(p), c]
                           for p in (-np.pi / 3, np.pi, np.pi / 3)]
    elif name == "octahedron":
        v = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    elif name == "cube":
        v = list(itertools.product((-1, 1), repeat=3))
    elif name == "icosahedron":
        v = []
        for a, b in itertools.product((-1, 1), repeat=2):
            v += [[0, a, b * _PHI], [a, b * _PHI, 0], [b * _PHI, 0, a]]
    else:
        v = list(itertools.product((-1, 1), repeat=3))
        for a, b in itertools.product((-1, 1), repeat=2):
            v += [[0, a / _PHI, b * _PHI], [a / _PHI, b * _PHI, 0], [b * _PHI, 0, a / _PHI]]
    v = np.array(v, dtype=float)
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _angles(n):
    theta = np.arccos(np.clip(n[:, 2], -1.0, 1.0))
    phi = np.arctan2(n[:, 1], n[:, 0])
    return theta, phi


def qubit_states(directions) -> np.ndarray:
    """Kets ``(cos th/2, e^{i ph} sin th/2)`` pointing along unit vectors."""
    th, ph = _angles(np.asarray(directions, dtype=float))
    return np.stack([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)], axis=1)


def platonic_pure_states(solid: str, rotation=None) -> Ensemble:
    """Uniform pure-state ensemble on the vertices, optionally rotated by a 3x3 matrix."""
    v = solid_vertices(solid)
    if rotation is not None:
        v = v @ np.asarray(rotation, dtype=float).T
    return Ensemble.uniform("pure", qubit_states(v))


def platonic_design(solid: str, a: float = PLATONIC_MIXING) -> Ensemble:
    """``rho = a |psi><psi| + (1 - a) |psi~><psi~|`` at every vertex.

    ``psi~`` is the antipode of ``psi``.  At the default ``a`` the states sit
    on the sphere of radius ``sqrt(3/20)`` and form a mixed 2-design.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"mixing parameter must lie in [0, 1], got {a}")
    v = solid_vertices(solid)
    th, ph = _angles(v)
    psi = np.stack([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)], axis=1)
    anti = np.stack([np.sin(th / 2), -np.exp(1j * ph) * np.cos(th / 2)], axis=1)
    rho = (a * np.einsum("ia,ib->iab", psi, psi.conj())
           + (1 - a) * np.einsum("ia,ib->iab", anti, anti.conj()))
    return Ensemble.uniform("mixed", rho)
