import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xppt.ptstructure import (
    PtClassification, classify, parity_table, ppt_check, ppt_mask, pt_permute_index,
)
from xppt.quadrature import dense_from_x, dense_partial_transpose, jacobi_eigenvalues
from xppt.xstate import Dims, DomainError, XState

from .conftest import SMALL_DIMS, brute_partial_transpose, random_xstate

GRID = [(m, n) for m in range(2, 13) for n in range(2, 13)]


def test_permute_examples():
    assert pt_permute_index(Dims(2, 3), 1, 6) == (4, 3)
    assert pt_permute_index(Dims(2, 3), 2, 5) == (5, 2)


def test_permute_2x2_against_dense():
    m, n = 2, 2
    mat = np.zeros((4, 4))
    mat[0, 3] = 1.0
    moved = brute_partial_transpose(mat, m, n)
    (r, c), = np.argwhere(moved == 1.0)
    assert (r + 1, c + 1) == (3, 2) == pt_permute_index(Dims(2, 2), 1, 4)


@pytest.mark.parametrize("m, n", [(2, 3), (3, 4), (5, 2), (3, 3)])
def test_permute_matches_brute_force_everywhere(m, n):
    dims = Dims(m, n)
    N = dims.N
    for row in range(1, N + 1):
        mat = np.zeros((N, N))
        mat[row - 1, N - row] = 1.0
        (r, c), = np.argwhere(brute_partial_transpose(mat, m, n) == 1.0)
        assert pt_permute_index(dims, row, N + 1 - row) == (r + 1, c + 1)


def test_permute_rejects_off_antidiagonal():
    with pytest.raises(DomainError):
        pt_permute_index(Dims(2, 2), 1, 1)
    with pytest.raises(DomainError):
        pt_permute_index(Dims(2, 2), 0, 5)


@given(st.integers(2, 12), st.integers(2, 12), st.data())
def test_permute_is_involution(m, n, data):
    dims = Dims(m, n)
    row = data.draw(st.integers(1, dims.N))
    col = dims.N + 1 - row
    for sub in (1, 2):
        image = pt_permute_index(dims, row, col, sub)
        assert sum(image) == dims.N + 1
        assert pt_permute_index(dims, *image, sub) == (row, col)


@pytest.mark.parametrize("m, n, counts", [
    (2, 2, (1, 0, 0)), (2, 3, (1, 1, 0)), (3, 3, (1, 2, 1)), (4, 4, (4, 0, 0)),
])
def test_classify_examples(m, n, counts):
    assert classify(Dims(m, n)).counts == counts


def test_classify_listings():
    assert classify(Dims(2, 2)).quadruples == ((1, 4, 2, 3),)
    cls = classify(Dims(2, 3))
    assert cls.quadruples == ((1, 6, 3, 4),)
    assert cls.fixed_pairs == ((2, 5),)
    assert classify(Dims(3, 3)).center == 5


@pytest.mark.parametrize("m, n", GRID)
def test_classify_counts_grid(m, n):
    cls = classify(Dims(m, n))
    A, B, C = cls.counts
    assert cls.counts == parity_table(m, n)
    assert 4 * A + 2 * B + C == m * n
    assert A == (m // 2) * (n // 2)
    covered = sorted([q[0] for q in cls.quadruples] + [q[2] for q in cls.quadruples]
                     + [p[0] for p in cls.fixed_pairs])
    assert covered == list(range(1, cls.dims.P + 1))
    for i, j, k, l in cls.quadruples:
        assert i + j == k + l == m * n + 1
        assert i == min(i, j, k, l) and i < k


@pytest.mark.parametrize("m, n", GRID)
def test_classification_independent_of_subsystem(m, n):
    d = Dims(m, n)
    assert classify(d).partition() == classify(d, subsystem=2).partition()
    assert classify(d).counts == classify(d, subsystem=2).counts


def test_ppt_check_examples():
    cls = classify(Dims(2, 2))
    assert ppt_check(XState(Dims(2, 2), [0.1, 0.2, 0.3, 0.4], [0, 0]), cls)
    assert ppt_check(XState(Dims(2, 2), [0.25] * 4, [0.2, 0]), cls)
    s = XState(Dims(2, 2), [0.4, 0.05, 0.05, 0.5], [0.3, 0.04])
    assert not ppt_check(s, cls)
    # oracle: dense partial transpose has a negative eigenvalue
    pt = brute_partial_transpose(dense_from_x(s).entries, 2, 2)
    assert np.linalg.eigvalsh(pt)[0] < 0


def test_ppt_check_dims_mismatch():
    with pytest.raises(DomainError):
        ppt_check(XState(Dims(2, 2), [0.25] * 4, [0, 0]), classify(Dims(2, 3)))


@pytest.mark.parametrize("dims", SMALL_DIMS, ids=str)
def test_ppt_check_matches_dense_oracle(dims):
    rng = np.random.default_rng(100 + dims.N)
    states = [random_xstate(dims, rng) for _ in range(1000)]
    dense = np.stack([dense_from_x(s).entries for s in states])
    oracle = jacobi_eigenvalues(dense_partial_transpose(dense, dims))[:, 0] >= -1e-10
    cls1, cls2 = classify(dims), classify(dims, subsystem=2)
    fast1 = np.array([ppt_check(s, cls1) for s in states])
    fast2 = np.array([ppt_check(s, cls2) for s in states])
    np.testing.assert_array_equal(fast1, oracle)
    np.testing.assert_array_equal(fast2, oracle)
    batch = ppt_mask(np.stack([s.diag for s in states]), np.stack([s.offdiag for s in states]), cls1)
    np.testing.assert_array_equal(batch, fast1)
    assert 0 < oracle.mean() < 1


def test_classification_json_roundtrip():
    cls = classify(Dims(3, 3))
    data = json.loads(cls.to_json())
    assert data == {"m": 3, "n": 3, "A": 1, "B": 2, "C": 1, "quadruples": [[1, 9, 3, 7]],
                    "fixed_pairs": [[2, 8], [4, 6]], "center": 5}
    assert PtClassification.from_dict(data) == cls
