"""Hard-coded algebraic data for the two-qubit iso-entangled MUB construction.

Every complex number is stored as ``(a, b, c, d)`` meaning
``(a + b*sqrt5) + i*(c + d*sqrt5)`` and is evaluated once to double
precision by :func:`evaluate`.
"""

import numpy as np

SQRT5 = np.sqrt(5.0)


def evaluate(entries, scale=1.0):
    """Turn nested ``(a, b, c, d)`` tuples into a complex array."""
    arr = np.asarray(entries, dtype=float)
    re = arr[..., 0] + arr[..., 1] * SQRT5
    im = arr[..., 2] + arr[..., 3] * SQRT5
    return (re + 1j * im) * scale


# Fiducial vector: (a+, -10i, 8i - 6, a-) / 20, a_pm = -7 pm 3 sqrt5 + i(1 pm sqrt5)
FIDUCIAL = ((-7, 3, 1, 1), (0, 0, -10, 0), (-6, 0, 8, 0), (-7, -3, 1, -1))
FIDUCIAL_SCALE = 1 / 20

# Twenty iso-entangled states, five blocks of four (one block per basis),
# columns |00>, |01>, |10>, |11>; common factor 1/20.
ISO_MUB_TABLE = (
    # basis 1
    ((-7, 3, 1, 1), (0, 0, -10, 0), (-6, 0, 8, 0), (-7, -3, 1, -1)),
    ((-7, 3, 1, 1), (0, 0, 10, 0), (6, 0, -8, 0), (-7, -3, 1, -1)),
    ((-7, -3, 1, -1), (10, 0, 0, 0), (8, 0, 6, 0), (-7, 3, 1, 1)),
    ((-7, -3, 1, -1), (-10, 0, 0, 0), (-8, 0, -6, 0), (-7, 3, 1, 1)),
    # basis 2
    ((-2, 1, 11, 2), (-5, 0, 5, 0), (7, 0, -1, 0), (-2, -1, 11, -2)),
    ((3, 4, -4, 3), (-5, 0, -5, 0), (1, 0, 7, 0), (3, -4, -4, -3)),
    ((3, -2, -4, 1), (-15, 0, 5, 0), (-1, 0, -7, 0), (3, 2, -4, -1)),
    ((3, -2, -4, 1), (5, 0, 5, 0), (15, 0, 5, 0), (3, 2, -4, -1)),
    # basis 3
    ((-2, 1, 11, 2), (5, 0, -5, 0), (-7, 0, 1, 0), (-2, -1, 11, -2)),
    ((3, 4, -4, 3), (5, 0, 5, 0), (-1, 0, -7, 0), (3, -4, -4, -3)),
    ((3, -2, -4, 1), (15, 0, -5, 0), (1, 0, 7, 0), (3, 2, -4, -1)),
    ((3, -2, -4, 1), (-5, 0, -5, 0), (-15, 0, -5, 0), (3, 2, -4, -1)),
    # basis 4
    ((-2, -1, 11, -2), (-5, 0, -5, 0), (-1, 0, -7, 0), (-2, 1, 11, 2)),
    ((3, -4, -4, -3), (5, 0, -5, 0), (7, 0, -1, 0), (3, 4, -4, 3)),
    ((3, 2, -4, -1), (-5, 0, -15, 0), (-7, 0, 1, 0), (3, -2, -4, 1)),
    ((3, 2, -4, -1), (-5, 0, 5, 0), (5, 0, -15, 0), (3, -2, -4, 1)),
    # basis 5
    ((-2, -1, 11, -2), (5, 0, 5, 0), (1, 0, 7, 0), (-2, 1, 11, 2)),
    ((3, -4, -4, -3), (-5, 0, 5, 0), (-7, 0, 1, 0), (3, 4, -4, 3)),
    ((3, 2, -4, -1), (5, 0, 15, 0), (7, 0, -1, 0), (3, -2, -4, 1)),
    ((3, 2, -4, -1), (5, 0, -5, 0), (-5, 0, 15, 0), (3, -2, -4, 1)),
)
ISO_MUB_SCALE = 1 / 20

# Generator words reaching each table row from the fiducial; read as matrix
# products, so the rightmost letter acts first.
ISO_MUB_WORDS = (
    "id",
    "h2 h1^2 h2 h1 h2",
    "h2 h1 h2 h1 h2 h1^2 h2",
    "h1 h2 h1^2 h2 h1 h2",
    "h1^2 h2 h1 h2",
    "h1 h2 h1 h2 h1^2 h2",
    "h2 h1 h2 h1^2 h2 h1 h2",
    "h2",
    "h2 h1 h2 h1^2 h2 h1 h2 h1^2 h2",
    "h2 h1 h2 h1 h2",
    "h1 h2 h1^2 h2",
    "h2 h1^2 h2",
    "h2 h1 h2",
    "h2 h1^2 h2 h1 h2 h1^2 h2",
    "h1^2 h2 h1 h2 h1^2 h2",
    "h1 h2",
    "(h1 h2)^2",
    "h1^2 h2",
    "(h1 h2 h1^2 h2)^2",
    "h2 h1 h2 h1^2 h2",
)

# Global change of basis T mapping the standard MUBs onto the table; factor 1/20.
TRANSFORM = (
    ((7, -3, -1, -1), (7, 3, -1, 1), (7, 3, -1, 1), (1, 1, 7, -3)),
    ((0, 0, 10, 0), (10, 0, 0, 0), (-10, 0, 0, 0), (10, 0, 0, 0)),
    ((6, 0, -8, 0), (8, 0, 6, 0), (-8, 0, -6, 0), (-8, 0, -6, 0)),
    ((7, 3, -1, 1), (7, -3, -1, -1), (7, -3, -1, -1), (1, -1, 7, 3)),
)
TRANSFORM_SCALE = 1 / 20

# Local generators h1 = A1 (x) B1, h2 = A2 (x) B2 (unnormalised factors).
H1_LEFT = ((5, 0, 0, 0), (0, 1, 0, -2)), ((0, -2, 0, 1), (0, 0, -5, 0))
H1_RIGHT = ((5, 0, 0, 0), (0, 1, 0, 2)), ((0, -2, 0, -1), (0, 0, 5, 0))
H1_FACTOR_SCALE = 1 / np.sqrt(50.0)
H2_LEFT = ((0, 0, 5, 5), (5, 3, -10, 4)), ((-5, -3, -10, 4), (0, 0, -5, -5))
H2_RIGHT = ((0, 0, -5, 5), (-5, 3, -10, -4)), ((5, -3, -10, -4), (0, 0, 5, -5))
H2_FACTOR_SCALE = 1 / 20

# Generators of the order-60 symmetry subgroup before the change of basis.
H_SYM_GENERATORS = (
    np.array([[-1, 1, -1j, -1j], [1, -1, -1j, -1j], [1j, 1j, 1, -1], [1j, 1j, -1, 1]]) / 2,
    np.array([[1j, 1j, 1j, 1j], [-1, 1, -1, 1], [-1, -1, 1, 1], [-1j, 1j, 1j, -1j]]) / 2,
)
