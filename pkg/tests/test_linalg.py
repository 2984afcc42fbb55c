import numpy as np
import pytest

from ncdiff.errors import ShapeError
from ncdiff.linalg import (
    dagger,
    inner,
    lift_to_slots,
    rank_nullspace,
    span_projector,
)


def test_dagger():
    a = np.array([[1.0, 2.0 + 1j], [3.0, 4j]])
    assert np.allclose(dagger(a), a.conj().T)


def test_inner_pauli_norm():
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    assert inner(s1, s1) == pytest.approx(2.0)


def test_inner_conjugate_linearity():
    rng = np.random.default_rng(0)
    f = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert inner(2j * f, g) == pytest.approx(-2j * inner(f, g))
    assert inner(f, g) == pytest.approx(np.conj(inner(g, f)))


def test_inner_shape_mismatch():
    with pytest.raises(ShapeError):
        inner(np.eye(2), np.eye(3))


def test_rank_nullspace_basic():
    M = np.array([[1.0, 1.0], [2.0, 2.0]])
    res = rank_nullspace(M)
    assert res.rank == 1
    assert res.nullspace.shape == (2, 1)
    assert np.allclose(M @ res.nullspace, 0.0)


def test_rank_full():
    res = rank_nullspace(np.eye(4))
    assert res.rank == 4
    assert res.nullspace.shape == (4, 0)


def test_rank_deterministic_phase():
    # The null-space basis must come back with a fixed sign convention.
    M = np.array([[1.0, 1j]])
    res = rank_nullspace(M)
    v = res.nullspace[:, 0]
    lead = v[np.argmax(np.abs(v) > 1e-12)]
    assert lead.imag == pytest.approx(0.0, abs=1e-12)
    assert lead.real > 0


def test_rank_reports_gap():
    M = np.diag([1.0, 1e-3, 1e-14])
    res = rank_nullspace(M)
    assert res.rank == 2
    assert res.gap == pytest.approx(1e-11, rel=1e-6)


def test_lift_to_slots():
    # Pair operator on slots (q, q+1) of a p-fold product, n = 2.
    Q = np.arange(16, dtype=complex).reshape(4, 4)
    assert np.allclose(lift_to_slots(Q, 3, 1), np.kron(Q, np.eye(2)))
    assert np.allclose(lift_to_slots(Q, 3, 2), np.kron(np.eye(2), Q))
    assert np.allclose(lift_to_slots(Q, 2, 1), Q)


def test_lift_to_slots_bounds():
    with pytest.raises(IndexError):
        lift_to_slots(np.eye(4), 2, 2)


def test_span_projector():
    cols = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).T
    P = span_projector(np.array([[1.0], [1.0], [0.0]]))
    assert np.allclose(P, P @ P)
    assert np.allclose(P, P.conj().T)
    assert np.trace(P).real == pytest.approx(1.0)
    v = np.array([1.0, 1.0, 0.0])
    assert np.allclose(P @ v, v)
