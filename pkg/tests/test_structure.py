from itertools import permutations

import numpy as np
import pytest

import constructions
import loops
import structure
from errors import (
    DegreeMismatch, NotCommutative, NotNormal, NotSubloop, SquaringNotBijective
)
from models import GfSpec, Permutation, SubloopHandle, TergParams


def test_groups_are_a_loops(klein, s3):
    assert structure.is_A_loop(klein)
    assert structure.is_A_loop(s3)


def test_gf_loops_are_a_loops(q2, gf_klein_swap, gf_klein_ab):
    for L in (q2, gf_klein_swap, gf_klein_ab):
        assert loops.is_commutative(L)
        assert not loops.is_associative(L)
        assert structure.is_A_loop(L)
        assert structure.check_A_identity(L)


def test_nonassociative_order_six_is_not_an_a_loop(order6_loop):
    assert not structure.is_A_loop(order6_loop)
    assert not structure.check_A_identity(order6_loop)


def test_a_identity_scan_needs_commutativity(s3):
    with pytest.raises(NotCommutative):
        structure.check_A_identity(s3)


def test_inner_generators_of_commutative_loop(q2):
    for x in range(q2.order):
        assert structure.inner_generator(q2, 'Tx', x).is_identity()
        assert structure.is_automorphism(q2, structure.inner_generator(q2, 'Lxy', x, 3))
    with pytest.raises(ValueError):
        structure.inner_generator(q2, 'Qx', 1)


def test_permutation_groups(klein, s3):
    assert structure.inner_mapping_group(klein).order() == 1
    assert structure.multiplication_group(klein).order() == 4
    assert structure.mlt_order(klein) == 4
    assert structure.automorphism_group(klein).order() == 6
    # Inn(S3) consists of the conjugations
    assert structure.inner_mapping_group(s3).order() == 6
    assert structure.mlt_order(s3) == 36


def test_mlt_order_matches_generated_group(q2):
    assert structure.mlt_order(q2) == structure.multiplication_group(q2).order()


def test_generated_group_validates_degrees():
    with pytest.raises(DegreeMismatch):
        structure.generated_group([])
    with pytest.raises(DegreeMismatch):
        structure.generated_group([Permutation((1, 0)), Permutation((0, 2, 1))])
    group = structure.generated_group([Permutation((1, 0, 2)), Permutation((1, 0, 2))])
    assert len(group.generators) == 1
    assert group.order() == 2


def test_nuclei(klein, q2, gf_klein_swap):
    for kind in ('left', 'middle', 'right', 'center'):
        assert structure.nucleus(klein, kind).size == 4
    assert structure.nucleus(q2, 'center').size == 1
    assert structure.nucleus(q2, 'middle').size == 4
    assert structure.nucleus(gf_klein_swap, 'center').members == (0, 3)
    with pytest.raises(ValueError):
        structure.nucleus(klein, 'outer')


def test_element_invariants_shape(q2):
    inv = structure.element_invariants(q2)
    assert inv.shape == (8, 10)
    assert inv[0, 0] == 1


def test_subloops_and_quotients(z4):
    S = structure.subloop_generated(z4, [2])
    assert S.members == (0, 2)
    assert structure.is_normal(z4, S)
    Q = structure.quotient(z4, S)
    assert Q.order == 2
    assert loops.is_associative(Q)


def test_quotient_by_central_subloop(gf_klein_swap):
    Z = structure.nucleus(gf_klein_swap, 'center')
    Q = structure.quotient(gf_klein_swap, Z)
    assert Q.order == 4
    assert loops.is_associative(Q)


def test_quotient_rejects_bad_subsets(z4, s3):
    with pytest.raises(NotSubloop):
        structure.quotient(z4, SubloopHandle(z4, (0, 1)))
    # a transposition generates a non-normal subgroup of S3
    transposition = next(x for x in range(1, 6) if loops.element_order(s3, x) == 2)
    with pytest.raises(NotNormal):
        structure.quotient(s3, structure.subloop_generated(s3, [transposition]))


def test_bruck_associate_of_odd_abelian_group_is_itself():
    Z5 = loops.cyclic_group(5)
    B = structure.bruck_associate(Z5)
    assert np.array_equal(B.table, Z5.table)
    assert structure.is_left_bol(B)


def test_bruck_associate_of_terg_is_left_bol(terg3):
    for key in ((0, 0), (1, 0), (1, 1)):
        assert structure.is_left_bol(structure.bruck_associate(terg3[key]))


def test_bruck_associate_errors(klein, s3):
    with pytest.raises(NotCommutative):
        structure.bruck_associate(s3)
    with pytest.raises(SquaringNotBijective):
        structure.bruck_associate(klein)


def test_center_of_prime_index(q2, gf_klein_swap):
    assert not structure.has_center_of_prime_index(q2)
    assert not structure.has_center_of_prime_index(gf_klein_swap)
    assert structure.has_center_of_prime_index(loops.cyclic_group(7)) is False


def test_pq_structure(s3):
    assert structure.satisfies_pq_structure(s3, 2, 3)
    Z6 = loops.direct_product(loops.cyclic_group(2), loops.cyclic_group(3))
    assert not structure.satisfies_pq_structure(Z6, 2, 3)


def test_terg_structure(terg3):
    L = terg3[(0, 0)]
    assert structure.inner_mapping_group(L).order() == 9
    assert structure.nucleus(L, 'center').size == 3
    assert structure.nucleus(L, 'left').members == structure.nucleus(L, 'center').members
    assert structure.nucleus(L, 'middle').size == 9
    Q = structure.quotient(L, structure.nucleus(L, 'center'))
    assert Q.order == 9 and loops.is_associative(Q)
    assert loops.exponent(Q) == 3


def test_terg_exponents():
    assert loops.exponent(constructions.build_terg(TergParams(5))) == 5
    assert loops.exponent(constructions.build_terg(TergParams(3))) == 9


def test_terg_generated_by_two_elements():
    L = constructions.build_terg(TergParams(2))
    seed = [constructions.terg_index(2, (0, 1, 0)), constructions.terg_index(2, (0, 0, 1))]
    assert structure.subloop_generated(L, seed).size == 8
    assert structure.subloop_generated(L, []).members == (0,)


def test_automorphisms_of_z4(z4):
    assert structure.automorphism_group(z4).order() == 2
    assert not structure.is_automorphism(z4, Permutation((0, 2, 1, 3)))


def test_gf_with_squares_moved_is_not_an_a_loop():
    Z8 = loops.cyclic_group(8)
    g = Permutation(tuple(3 * x % 8 for x in range(8)))
    L = constructions.build_gf(GfSpec(Z8, g))
    assert loops.is_commutative(L)
    assert not structure.check_A_identity(L)
    assert not structure.is_A_loop(L)


@pytest.mark.parametrize('a, b', [(a, b) for a in range(3) for b in range(3)])
def test_a_identity_scan_agrees_on_terg3(terg3, a, b):
    L = terg3[(a, b)]
    assert structure.check_A_identity(L) == structure.is_A_loop(L) is True


def test_a_identity_scan_agrees_with_inner_maps(klein, z4, order6_loop):
    Z8 = loops.cyclic_group(8)
    samples = [
        order6_loop,
        constructions.build_qn(3),
        constructions.build_trilinear_extension(
            constructions.symmetrize_13(constructions.newforms_form(3))),
        constructions.build_gf(GfSpec(Z8, Permutation(tuple(3 * x % 8 for x in range(8))))),
        loops.direct_product(constructions.build_terg(TergParams(2, 1, 1)), loops.cyclic_group(3)),
    ]
    for G in (klein, z4):
        samples += [constructions.build_gf(GfSpec(G, Permutation(images)))
                    for images in permutations(range(4))]
    verdicts = set()
    for L in samples:
        assert L.order <= 27
        verdict = structure.is_A_loop(L)
        assert structure.check_A_identity(L) == verdict
        verdicts.add(verdict)
    assert verdicts == {True, False}
