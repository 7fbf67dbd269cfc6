"""Shared pytest fixtures."""
import os
from itertools import permutations

import numpy as np
import pytest

os.environ.setdefault('ALOOP_ENV', 'testing')

import config  # noqa: E402
import constructions  # noqa: E402
import loops  # noqa: E402
from models import GfSpec, Permutation, TergParams  # noqa: E402


@pytest.fixture
def klein():
    return loops.elementary_abelian(2)


@pytest.fixture
def z4():
    return loops.cyclic_group(4)


@pytest.fixture
def q2():
    """Q_2 = G(g) over the Klein group, g(e1) = e2 and g(e2) = e1 + e2."""
    return constructions.build_qn(2)


@pytest.fixture
def gf_klein_ab(klein):
    """G(f) over the Klein group with f = g * ab, g swapping a and b."""
    f = Permutation((3, 1, 2, 0))
    return constructions.build_gf(GfSpec(klein, f))


@pytest.fixture
def terg3():
    return {(a, b): constructions.build_terg(TergParams(3, a, b))
            for a in range(3) for b in range(3)}


@pytest.fixture
def order6_loop():
    """A nonassociative commutative loop of order 6."""
    rows = np.array([
        [0, 1, 2, 3, 4, 5],
        [1, 0, 3, 2, 5, 4],
        [2, 3, 4, 5, 0, 1],
        [3, 2, 5, 4, 1, 0],
        [4, 5, 0, 1, 3, 2],
        [5, 4, 1, 0, 2, 3],
    ])
    return loops.from_rows(6, rows)


@pytest.fixture
def tmp_catalog(tmp_path, monkeypatch):
    """Point the testing configuration at a scratch catalog directory."""
    path = tmp_path / 'catalog'
    monkeypatch.setattr(config.TestingConfig, 'CATALOG_DIR', str(path))
    return path


@pytest.fixture
def s3():
    """The symmetric group on three points; 0 is the identity."""
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return loops.from_rows(6, rows)


@pytest.fixture
def gf_klein_swap(klein):
    """G(g) over the Klein group with g swapping a and b."""
    g = Permutation((0, 2, 1, 3))
    return constructions.build_gf(GfSpec(klein, g))
