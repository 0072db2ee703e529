import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from qdesign.errors import DimensionError, UnsupportedError, ValidationError
from qdesign.qstate import (BlochPoint, DensityMatrix, Ensemble, PureState, angle_spectrum,
                            bloch_point, density_from_bloch, overlap, partial_trace, purity,
                            reduce_ensemble, schmidt_vector)

R = math.sqrt(3 / 20)


def ket(*amps, bip=(2, 2)):
    return PureState.normalized(np.array(amps, dtype=complex), bip)


def random_state(seed, na, nb):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(na * nb) + 1j * rng.standard_normal(na * nb)
    return PureState.normalized(v, (na, nb))


# ---------------------------------------------------------------- partial trace

def test_bell_state_reduces_to_maximally_mixed():
    red = partial_trace(ket(1, 0, 0, 1), "B")
    np.testing.assert_allclose(red.matrix, np.eye(2) / 2, atol=1e-15)


def test_fiducial_reduction_purity_and_radius():
    psi = PureState(oracles.fiducial(), (2, 2))
    for side in ("A", "B"):
        red = partial_trace(psi, side)
        assert purity(red) == pytest.approx(4 / 5, abs=1e-12)
        assert bloch_point(red).radius == pytest.approx(R, abs=1e-12)


def test_product_state_reduction():
    zero_plus = np.kron([1, 0], np.array([1, 1]) / math.sqrt(2))
    red = partial_trace(PureState(zero_plus, (2, 2)), "B")
    np.testing.assert_allclose(red.matrix, [[1, 0], [0, 0]], atol=1e-15)
    other = partial_trace(PureState(zero_plus, (2, 2)), "A")
    np.testing.assert_allclose(other.matrix, np.full((2, 2), 0.5), atol=1e-15)


def test_partial_trace_needs_bipartition():
    with pytest.raises(DimensionError):
        partial_trace(PureState(np.array([1, 0, 0, 0])), "B")


def test_density_matrix_and_pure_paths_agree():
    psi = random_state(3, 2, 3)
    dm = DensityMatrix(psi.projector(), (2, 3))
    for side in ("A", "B"):
        np.testing.assert_allclose(partial_trace(psi, side).matrix, partial_trace(dm, side).matrix,
                                   atol=1e-14)


def test_reduce_ensemble_matches_memberwise_partial_trace():
    states = [random_state(s, 2, 3) for s in range(5)]
    ens = Ensemble.from_states(states)
    for side in ("A", "B"):
        red = reduce_ensemble(ens, side)
        for m, s in zip(red.data, states):
            np.testing.assert_allclose(m, partial_trace(s, side).matrix, atol=1e-14)
        mixed = reduce_ensemble(ens.as_mixed(), side)
        np.testing.assert_allclose(mixed.data, red.data, atol=1e-14)


@given(st.integers(2, 4), st.integers(0, 2 ** 32 - 1))
def test_reduction_spectra_agree_and_are_valid(n, seed):
    psi = random_state(seed, n, n)
    a = np.linalg.eigvalsh(partial_trace(psi, "A").matrix)
    b = np.linalg.eigvalsh(partial_trace(psi, "B").matrix)
    np.testing.assert_allclose(np.sort(a), np.sort(b), atol=1e-10)
    assert abs(a.sum() - 1) <= 1e-12 and a.min() >= -1e-10


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_partial_trace_preserves_trace_for_rectangular_splits(na, nb, seed):
    psi = random_state(seed, na, nb)
    for side, size in (("B", na), ("A", nb)):
        red = partial_trace(psi, side).matrix
        assert red.shape == (size, size)
        assert abs(np.trace(red) - 1) <= 1e-12


# ---------------------------------------------------------------- Schmidt

def test_schmidt_examples():
    np.testing.assert_allclose(schmidt_vector(ket(1, 0, 0, 0)), [1, 0], atol=1e-15)
    np.testing.assert_allclose(schmidt_vector(ket(1, 0, 0, 1)), [0.5, 0.5], atol=1e-15)
    fid = PureState(oracles.fiducial(), (2, 2))
    np.testing.assert_allclose(schmidt_vector(fid), [0.5 + R, 0.5 - R], atol=1e-12)


def test_schmidt_requires_square_split():
    with pytest.raises(UnsupportedError):
        schmidt_vector(random_state(0, 2, 3))


@given(st.integers(2, 4), st.integers(0, 2 ** 32 - 1))
def test_schmidt_vector_sorted_and_normalised(n, seed):
    lam = schmidt_vector(random_state(seed, n, n))
    assert np.all(np.diff(lam) <= 0)
    assert abs(lam.sum() - 1) <= 1e-12
    np.testing.assert_allclose(np.sort(lam), np.sort(np.linalg.eigvalsh(
        partial_trace(random_state(seed, n, n), "B").matrix)), atol=1e-10)


# ---------------------------------------------------------------- Bloch geometry

def test_bloch_point_examples():
    assert bloch_point(np.diag([1, 0])).coords.tolist() == [0, 0, 0.5]
    assert bloch_point(np.eye(2) / 2).coords.tolist() == [0, 0, 0]
    rho1 = oracles.tetrahedral_reference()[0]
    np.testing.assert_allclose(bloch_point(rho1).coords, [0, 0, -R], atol=1e-15)


def test_bloch_point_rejects_qutrits():
    with pytest.raises(UnsupportedError):
        bloch_point(np.eye(3) / 3)


def test_bloch_point_outside_ball_rejected():
    with pytest.raises(ValidationError):
        BlochPoint(0.5, 0.5, 0.0)


@given(st.tuples(*[st.floats(-1, 1)] * 3), st.floats(0, 0.5))
def test_purity_from_bloch_radius(direction, r):
    d = np.array(direction)
    if np.linalg.norm(d) < 1e-6:
        return
    b = r * d / np.linalg.norm(d)
    rho = density_from_bloch(b)
    assert purity(rho) == pytest.approx(0.5 + 2 * b @ b, abs=1e-12)
    np.testing.assert_allclose(bloch_point(rho).coords, b, atol=1e-15)


# ---------------------------------------------------------------- purity / overlap

def test_purity_and_overlap_examples():
    assert purity(np.eye(2) / 2) == pytest.approx(0.5)
    assert overlap(np.diag([1, 0]), np.diag([0, 1])) == 0.0
    a, b = oracles.tetrahedral_reference()[[1, 3]]
    assert overlap(a, b) == pytest.approx(overlap(b, a), abs=1e-15)


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionError):
        overlap(np.eye(2) / 2, np.eye(3) / 3)


# ---------------------------------------------------------------- angle spectrum

def test_angle_spectrum_examples():
    assert angle_spectrum([[0, 0, 0.5], [0, 0, -0.5]]) == [(-1.0, 1)]
    from qdesign.constructions import solid_vertices
    spec = angle_spectrum(solid_vertices("tetrahedron") / 2)
    assert len(spec) == 1 and spec[0][1] == 6
    assert spec[0][0] == pytest.approx(-1 / 3, abs=1e-12)


def test_angle_spectrum_drops_centre_with_warning():
    with pytest.warns(UserWarning):
        spec = angle_spectrum([[0, 0, 0], [0, 0, 0.5], [0, 0.5, 0]])
    assert spec == [(0.0, 1)]


# ---------------------------------------------------------------- validation

def test_invariants_enforced():
    with pytest.raises(ValidationError):
        PureState(np.array([1, 1]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.eye(2))
    with pytest.raises(DimensionError):
        PureState(np.array([1, 0, 0]), (2, 2))
    with pytest.raises(ValidationError):
        Ensemble("mixed", np.array([np.eye(2) / 2] * 2), [0.5, 0.6])
    with pytest.raises(DimensionError):
        Ensemble.from_states([PureState(np.array([1, 0])), PureState(np.array([1, 0, 0]))])


def test_tiny_negative_eigenvalue_tolerated():
    DensityMatrix(np.diag([1 + 5e-11, -5e-11]) + 0j)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        Ensemble.uniform("pure", np.eye(3)).validate()


def test_ensemble_members_roundtrip():
    ens = Ensemble.uniform("pure", np.eye(2))
    ws, states = zip(*ens.members)
    assert ws == (0.5, 0.5)
    assert isinstance(states[0], PureState)
    assert ens.as_mixed().members[0][1].dim == 2
