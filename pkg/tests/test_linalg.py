import numpy as np
import pytest

import linalg


def test_row_reduce_gf2():
    result = linalg.row_reduce(np.array([[1, 1, 0], [1, 1, 0], [0, 1, 1]]), 2)
    assert result.rank == 2
    assert result.pivots == (0, 1)
    assert result.matrix.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_row_reduce_gf3():
    result = linalg.row_reduce(np.array([[1, 2], [2, 1]]), 3)
    assert result.rank == 1
    assert result.matrix.tolist() == [[1, 2]]


def test_row_reduce_wide_gf2_matches_odd_path_shape():
    rng = np.random.default_rng(7)
    mat = rng.integers(0, 2, size=(12, 37))
    result = linalg.row_reduce(mat, 2)
    assert result.matrix.shape == (result.rank, 37)
    for r, col in enumerate(result.pivots):
        assert result.matrix[:, col].tolist() == [int(i == r) for i in range(result.rank)]


def test_empty_matrix():
    result = linalg.row_reduce(np.zeros((0, 4), dtype=np.uint8), 5)
    assert result.rank == 0
    assert result.matrix.shape == (0, 4)


@pytest.mark.parametrize('p', [2, 3, 5])
def test_nullspace_annihilates(p):
    rng = np.random.default_rng(p)
    mat = rng.integers(0, p, size=(4, 9))
    basis = linalg.nullspace(mat, p)
    assert basis.shape[0] == 9 - linalg.rank(mat, p)
    assert not ((mat @ basis.astype(np.int64).T) % p).any()


def test_inverse_mod_3():
    inv = linalg.inverse(np.array([[1, 1], [0, 1]]), 3)
    assert inv.tolist() == [[1, 2], [0, 1]]
    with pytest.raises(ValueError):
        linalg.inverse(np.array([[1, 1], [1, 1]]), 2)


def test_coordinates_and_span():
    basis = np.array([[1, 0, 1], [0, 1, 1]])
    vectors = np.array([[1, 1, 2], [2, 0, 2]])
    coords = linalg.coordinates(basis, vectors, 3)
    assert coords.tolist() == [[1, 1], [2, 0]]
    assert linalg.in_span(basis, np.array([1, 2, 0]), 3)
    assert not linalg.in_span(basis, np.array([0, 0, 1]), 3)
    with pytest.raises(ValueError):
        linalg.coordinates(basis, np.array([[0, 0, 1]]), 3)


def test_extend_basis():
    base = np.array([[1, 1, 0]])
    candidates = np.array([[1, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    taken = linalg.extend_basis(base, candidates, 2)
    assert taken.tolist() == [[1, 0, 0], [0, 0, 1]]
    assert linalg.extend_basis(base, base, 2).shape == (0, 3)
