import numpy as np
import pytest

import cocycles
import constructions
import isomorphism
import loops
import structure
from errors import InvalidParameters, NotALoop, OrbitSpaceTooLarge
from models import CocycleVector, ExtensionSpec, Permutation, TergParams


def test_layout_sizes():
    assert cocycles.CocycleLayout.build(4, 2).size == 6
    assert cocycles.CocycleLayout.build(4, 2, zero_diagonal=True).size == 3
    assert cocycles.CocycleLayout.build(4, 2, symmetric=False).size == 9


def test_layout_encode_checks_shape_of_cocycle():
    layout = cocycles.CocycleLayout.build(4, 2, zero_diagonal=True)
    values = np.zeros((4, 4), dtype=np.int64)
    values[1, 1] = 1
    with pytest.raises(InvalidParameters):
        layout.encode(values)
    values = np.zeros((4, 4), dtype=np.int64)
    values[1, 2] = 1
    with pytest.raises(InvalidParameters):
        layout.encode(values)
    values[2, 1] = 1
    theta = layout.to_cocycle(layout.encode(values))
    assert np.array_equal(theta.values, values)


def test_cocycle_space_requires_commutative_a_loop(order6_loop):
    with pytest.raises(NotALoop):
        cocycles.cocycle_space(order6_loop, 2)


def test_cocycle_space_over_klein(klein):
    C = cocycles.cocycle_space(klein, 2)
    B = cocycles.coboundary_space(klein, 2, C.layout)
    assert B.dim <= C.dim
    for theta in C.vectors():
        assert cocycles.satisfies_cocycle_identity(klein, theta)
        L = constructions.build_central_extension(ExtensionSpec(klein, 2, theta))
        assert loops.is_commutative(L)
        assert structure.is_A_loop(L)
    for theta in B.vectors():
        assert cocycles.is_in_span(C, theta)
    # some extensions of the Klein group are nonassociative
    assert C.dim > B.dim


def test_group_cocycles_are_a_loop_cocycles(z4):
    C = cocycles.cocycle_space(z4, 2)
    G = cocycles.group_cocycle_space(z4, 2)
    for theta in G.vectors():
        assert constructions.is_group_cocycle(z4, theta)
        assert cocycles.is_in_span(C, theta)


def test_terg_cocycle_satisfies_identity():
    K, mu, nu = constructions.terg_cocycle(TergParams(3, 1, 0))
    assert cocycles.satisfies_cocycle_identity(K, mu)
    assert cocycles.satisfies_cocycle_identity(K, mu + nu)


def test_identity_detects_bad_cocycle(z4):
    values = np.zeros((4, 4), dtype=np.int64)
    values[1, 1] = 1
    theta = CocycleVector(4, 2, values)
    L = constructions.build_central_extension(ExtensionSpec(z4, 2, theta))
    assert cocycles.satisfies_cocycle_identity(z4, theta) == (
        loops.is_commutative(L) and structure.is_A_loop(L))


def test_act_with_identity(klein):
    theta = cocycles.cocycle_space(klein, 2).vectors()[0]
    assert cocycles.act(theta, Permutation.identity(4)) == theta


def test_image_indices_and_orbit_labels():
    assert cocycles._image_indices(np.eye(2, dtype=np.int64), 3).tolist() == list(range(9))
    swap = np.array([[0, 1], [1, 0]])
    img = cocycles._image_indices(swap, 2)
    assert img.tolist() == [0, 2, 1, 3]
    labels = cocycles._orbit_labels([img], 4)
    assert labels.tolist() == [0, 1, 1, 3]


def test_orbit_limit(klein):
    C = cocycles.cocycle_space(klein, 2)
    B = cocycles.coboundary_space(klein, 2, C.layout)
    gens = structure.automorphism_group(klein).generators
    with pytest.raises(OrbitSpaceTooLarge):
        cocycles.complement_and_orbits(C, B, gens, orbit_limit=1)
    result = cocycles.complement_and_orbits(C, B, gens)
    assert result.orbit_sizes.sum() == 2 ** len(result.complement)


def test_order8_extensions_with_nontrivial_center(klein, z4):
    reports = cocycles.classify_extensions([klein, z4], 2, labels=['klein', 'z4'])
    assert [r.base for r in reports] == ['klein', 'z4']
    found = [rec for r in reports for rec in r.classes]
    assert len(found) == 3
    for rec in found:
        assert rec.id.startswith('8.')
        assert rec.flags['center'] > 1
        assert rec.provenance['family'] == 'extension'
    tables = [rec.table for rec in found]
    assert isomorphism.deduplicate(tables) == [0, 1, 2]
