from itertools import permutations, product

import numpy as np
import pytest

import constructions
import isomorphism
import loops
import structure
from errors import (
    CatalogMissing, DimensionTooSmall, HypothesisViolated, Infeasible, InvalidParameters,
    NotAbelianGroup, NotBijection, NotGroupCocycle, OutOfRange
)
from models import CocycleVector, ExtensionSpec, GfSpec, Permutation, TergParams


# ========== G(f) ==========

def test_gf_with_identity_map_is_a_group(klein):
    L = constructions.build_gf(GfSpec(klein, Permutation.identity(4)))
    assert L.order == 8
    assert loops.is_associative(L)


def test_gf_rejects_bad_inputs(klein, s3):
    with pytest.raises(NotAbelianGroup):
        constructions.build_gf(GfSpec(s3, Permutation.identity(6)))
    with pytest.raises(NotBijection):
        constructions.build_gf(GfSpec(klein, Permutation.identity(3)))


def test_gf_conditions_recover_decomposition(klein):
    g = Permutation((0, 2, 1, 3))
    cond = constructions.gf_conditions(GfSpec(klein, g))
    assert cond['P1'] and cond['P2'] and cond['P3']
    assert cond['decomposition'] == (g, 0)

    f = Permutation((3, 1, 2, 0))
    cond = constructions.gf_conditions(GfSpec(klein, f))
    assert cond['decomposition'] == (g, 3)


def test_gf_candidates_are_a_loops(z4):
    for spec in constructions.gf_candidates(z4):
        L = constructions.build_gf(spec)
        assert loops.is_commutative(L)
        assert structure.is_A_loop(L)


@pytest.mark.slow
def test_gf_over_gf2_cubed_has_five_classes():
    found = constructions.enumerate_gf_aloops(loops.elementary_abelian(3))
    assert len(found) == 5
    assert all(not loops.is_associative(L) for L in found)


def test_linear_map(klein):
    g = constructions.linear_map(2, [2, 3])
    assert g.images == (0, 2, 3, 1)
    assert structure.is_automorphism(klein, g)
    with pytest.raises(NotBijection):
        constructions.linear_map(2, [1, 1])


def test_qn(q2):
    assert q2.order == 8
    assert loops.exponent(q2) == 2
    assert structure.nucleus(q2, 'center').size == 1
    with pytest.raises(InvalidParameters):
        constructions.build_qn(1)


def _assert_conditions_match_a_loop_scan(G):
    for images in permutations(range(G.order)):
        spec = GfSpec(G, Permutation(images))
        cond = constructions.gf_conditions(spec)
        is_a = structure.is_A_loop(constructions.build_gf(spec))
        assert (cond['P1'] and cond['P2'] and cond['P3']) == is_a, images
        assert (cond['decomposition'] is not None) == is_a, images


@pytest.mark.parametrize('order', [2, 3, 4])
def test_gf_conditions_match_a_loop_scan(order):
    for G in loops.abelian_groups(order):
        _assert_conditions_match_a_loop_scan(G)


@pytest.mark.slow
@pytest.mark.parametrize('order', [5, 6, 7, 8])
def test_gf_conditions_match_a_loop_scan_up_to_eight(order):
    for G in loops.abelian_groups(order):
        _assert_conditions_match_a_loop_scan(G)


def _translated_center_cases(G):
    T = G.table.astype(np.intp)
    for g in isomorphism.automorphisms(G):
        if g.is_identity():
            continue
        fixed = tuple(int(x) for x in np.nonzero(g.array == np.arange(G.order))[0])
        for t in range(G.order):
            yield g, Permutation.from_array(T[g.array, t]), fixed


@pytest.mark.parametrize('G', [
    loops.elementary_abelian(2),
    loops.cyclic_group(4),
    loops.direct_product(loops.cyclic_group(2), loops.cyclic_group(4)),
], ids=['klein', 'z4', 'z2xz4'])
def test_translating_f_keeps_the_center(G):
    for g, f, fixed in _translated_center_cases(G):
        center_g = structure.nucleus(constructions.build_gf(GfSpec(G, g)), 'center').members
        center_f = structure.nucleus(constructions.build_gf(GfSpec(G, f)), 'center').members
        assert center_g == fixed
        assert center_f == fixed


# ========== Trilinear forms ==========

def test_newforms_needs_dimension_three():
    with pytest.raises(DimensionTooSmall):
        constructions.newforms_form(2)


def test_unsymmetrized_newforms_violates_hypothesis():
    with pytest.raises(HypothesisViolated):
        constructions.trilinear_cocycle(constructions.newforms_form(3))


def test_trilinear_extension_properties():
    form = constructions.symmetrize_13(constructions.newforms_form(3))
    assert constructions.is_13_symmetric(form)
    Q = constructions.build_trilinear_extension(form)
    assert Q.order == 16
    assert structure.is_A_loop(Q)
    assert not loops.is_associative(Q)
    assert loops.exponent(Q) == 2
    middle = structure.nucleus(Q, 'middle').members
    assert len(middle) == 2
    assert middle == structure.nucleus(Q, 'center').members


def test_trilinear_nucleus_report_keys():
    form = constructions.symmetrize_13(constructions.newforms_form(3))
    report = constructions.trilinear_nucleus_report(form)
    assert report['middle_nucleus'] == (0, 1)
    assert isinstance(report['matches_yxz_xzy'], bool)
    assert isinstance(report['matches_yxz_yzx'], bool)


# ========== Terg ==========

def test_overflow_indicator():
    assert constructions.overflow_indicator(2, 3, 5) == 1
    assert constructions.overflow_indicator(1, 3, 5) == 0
    with pytest.raises(OutOfRange):
        constructions.overflow_indicator(5, 0, 5)


def test_terg_index_round_trip():
    assert constructions.terg_index(3, (1, 2, 0)) == 15
    assert constructions.terg_triple(3, 15) == (1, 2, 0)


def test_terg_product_over_z2():
    L = constructions.build_terg(TergParams(2, 0, 0))
    x = constructions.terg_index(2, (1, 1, 1))
    y = constructions.terg_index(2, (0, 1, 1))
    assert constructions.terg_triple(2, loops.multiply(L, x, y)) == (1, 0, 0)


def test_terg_params_validation():
    with pytest.raises(InvalidParameters):
        TergParams(1)
    with pytest.raises(OutOfRange):
        TergParams(3, 3, 0)


def test_terg3_elements_of_order_nine(terg3):
    counts = [loops.order_histogram(terg3[key]).get(9, 0)
              for key in ((0, 0), (1, 0), (1, 1), (2, 0))]
    assert counts == [12, 6, 24, 18]
    for L in terg3.values():
        assert structure.is_A_loop(L)
        assert not loops.is_associative(L)


def test_terg_closed_form_powers(terg3):
    for (a, b), L in terg3.items():
        params = TergParams(3, a, b)
        for x in product(range(3), repeat=3):
            for m in range(11):
                expected = loops.power(L, constructions.terg_index(3, x), m)
                assert constructions.terg_power(params, x, m) == constructions.terg_triple(3, expected)


TERG_PARAMS = [(n, a, b) for n in (2, 3) for a in range(n) for b in range(n)]


@pytest.mark.parametrize('n, a, b', TERG_PARAMS)
def test_terg_left_division_closed_form(n, a, b):
    L = constructions.build_terg(TergParams(n, a, b))
    ov = constructions.overflow_indicator
    for x in product(range(n), repeat=3):
        for y in product(range(n), repeat=3):
            d2, d3 = (y[1] - x[1]) % n, (y[2] - x[2]) % n
            first = (y[0] - x[0] - d3 * x[2] * y[1] - a * ov(x[1], d2, n) - b * ov(x[2], d3, n)) % n
            got = loops.divide(L, 'left', constructions.terg_index(n, x), constructions.terg_index(n, y))
            assert constructions.terg_triple(n, got) == (first, d2, d3)


@pytest.mark.parametrize('n, a, b', TERG_PARAMS)
def test_terg_inner_mappings_closed_form(n, a, b):
    L = constructions.build_terg(TergParams(n, a, b))
    z1, z2, z3 = constructions._triples(n)
    for x in product(range(n), repeat=3):
        for y in product(range(n), repeat=3):
            # L_{y,x}(z) = xy\x(yz)
            phi = structure.inner_generator(L, 'Lxy', constructions.terg_index(n, y),
                                            constructions.terg_index(n, x))
            first = (z1 + y[2] * (x[2] * z2 - x[1] * z3)) % n
            assert np.array_equal(phi.array, first * n * n + z2 * n + z3)


@pytest.mark.parametrize('n', [2, 3])
def test_terg_is_a_central_extension(n):
    for a, b in product(range(n), repeat=2):
        K, mu, nu = constructions.terg_cocycle(TergParams(n, a, b))
        assert constructions.is_group_cocycle(K, nu)
        theta = constructions.add_group_cocycle(K, mu, nu)
        ext = constructions.build_central_extension(ExtensionSpec(K, n, theta))
        relabel = constructions.extension_to_terg(n).array
        terg = constructions.build_terg(TergParams(n, a, b))
        assert np.array_equal(relabel[ext.table], terg.table[np.ix_(relabel, relabel)])


def test_add_group_cocycle_rejects_non_cocycle():
    K, mu, nu = constructions.terg_cocycle(TergParams(3, 1, 1))
    assert not constructions.is_group_cocycle(K, mu)
    with pytest.raises(NotGroupCocycle):
        constructions.add_group_cocycle(K, nu, mu)


def test_ter_ring_over_z2_is_terg():
    assert np.array_equal(constructions.build_ter_ring([2]).table,
                          constructions.build_terg(TergParams(2, 0, 0)).table)
    with pytest.raises(InvalidParameters):
        constructions.build_ter_ring([1])


# ========== Central extensions ==========

def test_zero_cocycle_gives_direct_product(klein):
    ext = constructions.build_central_extension(ExtensionSpec(klein, 3, CocycleVector.zero(4, 3)))
    assert np.array_equal(ext.table, loops.direct_product(klein, loops.cyclic_group(3)).table)


def test_cocycle_must_be_normalized():
    values = np.ones((4, 4), dtype=np.int64)
    with pytest.raises(InvalidParameters):
        CocycleVector(4, 2, values)


# ========== Middle nucleus parameters ==========

def test_middle_nucleus_feasibility():
    assert not constructions.middle_nucleus_feasible(3, 1)
    assert constructions.middle_nucleus_feasible(4, 3)
    assert constructions.middle_nucleus_feasible(4, 1)
    assert constructions.middle_nucleus_feasible(4, 2)


def test_achieve_parameters():
    with pytest.raises(Infeasible):
        constructions.achieve_parameters(3, 1)
    with pytest.raises(InvalidParameters):
        constructions.achieve_parameters(2, 0)
    for k, l in ((4, 3), (4, 1), (5, 1)):
        L = constructions.achieve_parameters(k, l)
        assert L.order == 2 ** k
        assert structure.nucleus(L, 'middle').size == 2 ** l
        assert loops.exponent(L) == 2
        assert not loops.is_associative(L)


def test_achieve_parameters_needs_order16_catalog():
    with pytest.raises(CatalogMissing):
        constructions.achieve_parameters(4, 2)
    with pytest.raises(CatalogMissing):
        constructions.achieve_parameters(4, 2, order16=[loops.elementary_abelian(4)])


def test_symmetrized_newforms_has_no_symmetric_slice():
    form = constructions.symmetrize_13(constructions.newforms_form(3))
    assert constructions.lowdimension_witness(form) is None
    assert not constructions.symmetrize_13(form).values.any()
