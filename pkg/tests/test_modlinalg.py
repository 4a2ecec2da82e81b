import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from filtra.modlinalg import (
    FpMatrix,
    Subspace,
    full_space,
    inv_matrix,
    inv_mod,
    is_prime,
    nullspace,
    rref,
    solve_nullspace,
)


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)
    assert not is_prime(0)


def test_inv_mod():
    for p in (2, 3, 5, 251):
        for x in range(1, min(p, 40)):
            assert (x * inv_mod(x, p)) % p == 1


def test_rref_examples():
    eye = np.eye(3, dtype=np.int64)
    r, piv = rref(eye, 5)
    assert np.array_equal(r, eye) and piv == [0, 1, 2]

    r, piv = rref(np.array([[2, 4], [1, 2]]), 5)
    assert np.array_equal(r, np.array([[1, 2], [0, 0]]))
    assert piv == [0]

    z = np.zeros((2, 3), dtype=np.int64)
    r, piv = rref(z, 3)
    assert np.array_equal(r, z) and piv == []


def test_nullspace_examples():
    assert nullspace(np.eye(4, dtype=np.int64), 3).shape[0] == 0
    assert nullspace(np.zeros((4, 4), dtype=np.int64), 3).shape[0] == 4
    ns = nullspace(np.array([[1, 1]]), 2)
    assert ns.shape == (1, 2)
    assert np.array_equal(ns[0], np.array([1, 1]))


sq = arrays(np.int64, (4, 4), elements=st.integers(0, 4))


@given(sq, st.sampled_from([2, 3, 5]))
@settings(max_examples=50)
def test_rank_nullity(a, p):
    a = a % p
    _, piv = rref(a, p)
    ns = nullspace(a, p)
    assert len(piv) + ns.shape[0] == 4
    # nullspace rows actually annihilate
    assert not ((a @ ns.T) % p).any()


@given(sq, st.sampled_from([2, 3, 5]))
@settings(max_examples=30)
def test_rref_idempotent(a, p):
    a = a % p
    r1, piv1 = rref(a, p)
    r2, piv2 = rref(r1, p)
    assert np.array_equal(r1, r2) and piv1 == piv2


def test_subspace_examples():
    v = Subspace(2, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    zero = Subspace(2, 4, None)
    assert v.sum(zero) == v
    assert v.intersect(v) == v
    w = Subspace(2, 4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    meet = v.intersect(w)
    assert meet.dim == 1 and meet.contains([0, 1, 0, 0])


def test_subspace_symmetric_mod2():
    s = Subspace(2, 2, [[1, 1]])
    assert s.dim == 1 and s.contains([1, 1]) and not s.contains([1, 0])


def test_subspace_dim_formula():
    rng = np.random.default_rng(7)
    for p in (2, 3, 5):
        for _ in range(10):
            v = Subspace(p, 5, rng.integers(0, p, (2, 5)))
            w = Subspace(p, 5, rng.integers(0, p, (3, 5)))
            assert v.sum(w).dim + v.intersect(w).dim == v.dim + w.dim


def test_subspace_le_and_reduce():
    v = Subspace(3, 3, [[1, 0, 0], [0, 1, 0]])
    w = Subspace(3, 3, [[1, 1, 0]])
    assert w.le(v) and not v.le(w)
    assert v.reduce([1, 2, 0]) is None
    left = v.reduce([1, 1, 1])
    assert left is not None and left[2] % 3 != 0


def test_subspace_matrix_image():
    v = Subspace(2, 3, [[1, 0, 0], [0, 1, 0]])
    m = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    img = v.matrix_image(m)
    assert img.dim == 1 and img.contains([0, 0, 1])


def test_full_space():
    f = full_space(3, 4)
    assert f.dim == 4 and f.contains([2, 1, 0, 2])


def test_inv_matrix():
    rng = np.random.default_rng(3)
    for p in (2, 3, 5):
        for _ in range(10):
            a = np.eye(4, dtype=np.int64)
            # random unipotent upper triangular is always invertible
            a[np.triu_indices(4, 1)] = rng.integers(0, p, 6)
            inv = inv_matrix(a, p)
            assert np.array_equal((a @ inv) % p, np.eye(4, dtype=np.int64))
    with pytest.raises(Exception):
        inv_matrix(np.zeros((2, 2), dtype=np.int64), 2)


def test_solve_nullspace_matches_nullspace():
    rng = np.random.default_rng(11)
    for p in (2, 5):
        rows = rng.integers(0, p, (6, 4))
        got = solve_nullspace(rows, p, 4)
        want = nullspace(rows, p)
        assert got.dim == want.shape[0]
        for r in want:
            assert got.contains(r)


def test_fpmatrix_ops():
    a = FpMatrix(2, np.array([[1, 1], [0, 1]]))
    b = a @ a
    assert np.array_equal(b.array, np.eye(2, dtype=np.int64))
    assert a == FpMatrix(2, np.array([[1, 1], [0, 1]]))
    assert a.nullspace().dim == 0
