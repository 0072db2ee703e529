import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import polynomial as P

import oracles
from qdesign.constructions import (decohere, interval_catalog, interval_design, iso_mub,
                                   platonic_pure_states, restrict_to_chamber, sic_d3,
                                   standard_mub_d4, verify_simplicial)
from qdesign.constructions.simplex import (SimplexDesign, canonical_measure, exact_moment,
                                           in_chamber, monomials, spectra, stabilizer_size)
from qdesign.errors import UnsupportedError, ValidationError
from qdesign.mc_oracle import SamplerConfig, estimate_simplex_moments, reference_values
from qdesign.qstate import Ensemble


def _interval_expectation(a, b, moment_of_x):
    # E[(1/2 + x)^a (1/2 - x)^b] from the moments of x
    poly = P.polymul(P.polypow([0.5, 1.0], a), P.polypow([0.5, -1.0], b))
    return sum(c * moment_of_x(k) for k, c in enumerate(poly))


# ---------------------------------------------------------------- exact moments

@pytest.mark.parametrize("a,b", [(1, 0), (2, 0), (1, 1), (3, 0), (2, 2), (4, 1), (3, 3)])
def test_interval_moments_against_quadrature(a, b):
    assert float(exact_moment(2, (a, b), "hs")) == pytest.approx(
        _interval_expectation(a, b, oracles.hs_interval_moment), abs=1e-13)
    assert float(exact_moment(2, (a, b), "lebesgue")) == pytest.approx(
        _interval_expectation(a, b, oracles.lebesgue_interval_moment), abs=1e-13)


@pytest.mark.parametrize("a", [(1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 1, 1), (3, 0, 0), (2, 1, 0),
                               (4, 0, 0), (2, 2, 1)])
def test_triangle_moments_against_quadrature(a):
    assert float(exact_moment(3, a, "lebesgue")) == pytest.approx(
        oracles.lebesgue_simplex3_moment(a), abs=1e-12)
    assert float(exact_moment(3, a, "hs")) == pytest.approx(
        oracles.hs_simplex3_moment(a), abs=1e-11)


def test_exact_moment_values():
    assert exact_moment(2, (2, 0), "hs") == Fraction(2, 5)
    assert exact_moment(2, (2, 0), "lebesgue") == Fraction(1, 3)
    assert exact_moment(4, (0, 0, 0, 0), "hs") == 1
    with pytest.raises(ValueError):
        exact_moment(3, (1, 0), "hs")


@given(st.integers(2, 4), st.integers(0, 3))
@settings(max_examples=20)
def test_moments_symmetric_under_relabelling(N, degree):
    for a in monomials(N, degree):
        for measure in ("hs", "lebesgue"):
            assert exact_moment(N, a, measure) == exact_moment(N, tuple(reversed(a)), measure)


def test_monomials_count():
    assert len(monomials(3, 2)) == math.comb(4, 2)
    assert all(sum(a) == 3 for a in monomials(4, 3))


def test_measure_aliases():
    assert canonical_measure("HS") == "hilbert-schmidt"
    assert canonical_measure("L") == "lebesgue"
    with pytest.raises(UnsupportedError):
        canonical_measure("bures")


# ---------------------------------------------------------------- catalogue

@pytest.mark.parametrize("key", interval_catalog())
def test_catalogued_designs_meet_their_order_only(key):
    t, M, measure = key
    d = interval_design(t, M, measure)
    assert len(d) == M
    assert verify_simplicial(d).is_design
    assert not verify_simplicial(d, t + 1).is_design


def test_hs_interval_examples():
    x = interval_design(3, 2, "hs").interval_coordinates()
    np.testing.assert_allclose(sorted(x), [-math.sqrt(3 / 20), math.sqrt(3 / 20)], atol=1e-15)
    assert verify_simplicial(interval_design(1, 1, "lebesgue")).deviations[1] == 0.0
    leb = interval_design(3, 2, "lebesgue").interval_coordinates()
    assert float(np.mean(leb ** 2)) == pytest.approx(1 / 12, abs=1e-15)


def test_missing_catalogue_entry():
    with pytest.raises(UnsupportedError):
        interval_design(7, 4, "hs")


def test_report_dict():
    d = verify_simplicial(interval_design(3, 3, "hs")).to_dict()
    assert d["t"] == 3 and d["is_design"] and set(d["deviations"]) == {"0", "1", "2", "3"}


def test_simplex_design_validation():
    with pytest.raises(ValidationError):
        SimplexDesign([[0.6, 0.6]], [1.0])
    with pytest.raises(ValidationError):
        SimplexDesign([[0.5, 0.5]], [0.5])
    with pytest.raises(UnsupportedError):
        SimplexDesign([[1, 0, 0]], [1.0]).interval_coordinates()


# ---------------------------------------------------------------- decoherence

def test_decohered_octahedron_is_simpson_rule():
    d = decohere(platonic_pure_states("octahedron"))
    x = np.round(d.interval_coordinates(), 12)
    vals, inv = np.unique(x, return_inverse=True)
    mass = np.bincount(inv, weights=d.weights)
    np.testing.assert_allclose(vals, [-0.5, 0, 0.5], atol=1e-12)
    np.testing.assert_allclose(mass * 6, [1, 4, 1], atol=1e-12)
    assert verify_simplicial(d, 3).is_design


def _rotation_taking(a, b):
    a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
    v, c = np.cross(a, b), a @ b
    K = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + K + K @ K / (1 + c)


def test_rotated_octahedron_gives_gauss_points():
    rot = _rotation_taking(np.ones(3), np.array([0, 0, 1.0]))
    d = decohere(platonic_pure_states("octahedron", rotation=rot))
    np.testing.assert_allclose(np.sort(np.abs(d.interval_coordinates())), math.sqrt(3) / 6,
                               atol=1e-12)
    assert verify_simplicial(d, 3).is_design


@pytest.mark.parametrize("ensemble,t", [
    (lambda: standard_mub_d4().ensemble(), 2),
    (lambda: iso_mub()[0].ensemble(), 2),
    (sic_d3, 2),
    (lambda: platonic_pure_states("icosahedron"), 5),
])
def test_decohered_projective_designs_are_simplex_designs(ensemble, t):
    assert verify_simplicial(decohere(ensemble()), t).is_design


def test_decohere_needs_pure_states():
    with pytest.raises(TypeError):
        decohere(Ensemble("mixed", np.array([np.eye(2) / 2]), [1.0]))


def test_spectra_descending():
    ens = Ensemble("mixed", np.array([np.diag([0.2, 0.8]), np.diag([0.7, 0.3])]), [0.5, 0.5])
    np.testing.assert_allclose(spectra(ens).points, [[0.8, 0.2], [0.7, 0.3]], atol=1e-15)


# ---------------------------------------------------------------- chamber

def test_stabilizer_and_chamber():
    assert stabilizer_size([0.5, 0.5]) == 2
    assert stabilizer_size([1 / 3] * 3) == 6
    assert stabilizer_size([0.5, 0.25, 0.25]) == 2
    assert in_chamber([0.6, 0.4]) and not in_chamber([0.4, 0.6])


def test_restriction_weights_by_stabiliser():
    r = restrict_to_chamber(interval_design(3, 3, "hs"))
    np.testing.assert_allclose(r.points[:, 0] >= r.points[:, 1], True)
    order = np.argsort(r.points[:, 0])
    np.testing.assert_allclose(r.weights[order], [1 / 3, 2 / 3], atol=1e-15)


@given(st.sampled_from(interval_catalog()))
def test_restriction_keeps_symmetric_moments(key):
    d = interval_design(*key)
    r = restrict_to_chamber(d)
    for k in range(1, key[0] + 1):
        power_sum = lambda s: float(s.weights @ (s.points ** k).sum(axis=1))
        assert power_sum(r) == pytest.approx(power_sum(d), abs=1e-14)


def test_restriction_requires_a_point_in_the_chamber():
    with pytest.raises(ValidationError):
        restrict_to_chamber(SimplexDesign([[0.2, 0.8]], [1.0]))


# ---------------------------------------------------------------- Monte-Carlo agreement

@pytest.mark.parametrize("key,N", [("hs_simplex_moments_n3", 3), ("hs_simplex_moments_n2", 2)])
def test_pinned_samples_agree_with_exact_moments(key, N):
    block = reference_values()[key]
    for v in block["values"]:
        exact = float(exact_moment(N, tuple(v["exponents"]), "hs"))
        if v["stderr"] < 1e-9:
            # first moments are 1/N for every sample after symmetrisation
            assert v["mean"] == pytest.approx(exact, abs=1e-9)
        else:
            assert abs(v["mean"] - exact) <= 3 * v["stderr"], v["exponents"]


def test_regression_block_reproduces_exactly():
    ref = reference_values()
    block = ref["regression"]
    cfg = SamplerConfig(block["N"], block["count"], ref["seed"], ref["chunk_size"])
    est = estimate_simplex_moments(block["N"], block["measure"], block["degree"], cfg)
    for v in block["values"]:
        got = est[tuple(v["exponents"])]
        assert float(got.mean) == pytest.approx(v["mean"], rel=1e-12, abs=1e-15)
        assert float(got.stderr) == pytest.approx(v["stderr"], rel=1e-9, abs=1e-15)


def test_lebesgue_sampler_matches_dirichlet_moments():
    est = estimate_simplex_moments(3, "lebesgue", 2, SamplerConfig(3, 200_000, 11))
    for a, e in est.items():
        assert e.within(float(exact_moment(3, a, "lebesgue")), 4.0), a


def test_sampler_limits():
    with pytest.raises(UnsupportedError):
        estimate_simplex_moments(4, "hs", 2, SamplerConfig(4, 10))
    with pytest.raises(UnsupportedError):
        estimate_simplex_moments(3, "bures", 2, SamplerConfig(3, 10))
