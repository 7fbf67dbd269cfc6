import numpy as np
import pytest

import loops
from errors import InvalidElement, NoNeutral, NotLatin, NotPowerAssociative


def test_from_rows_relabels_neutral_to_zero():
    L = loops.from_rows(2, [[1, 0], [0, 1]])
    assert L.table.tolist() == [[0, 1], [1, 0]]


def test_from_rows_rejects_repeated_column():
    with pytest.raises(NotLatin):
        loops.from_rows(2, [[0, 1], [0, 1]])


def test_from_rows_rejects_missing_neutral():
    # x*y = -x-y over Z_3 is a quasigroup without identity
    with pytest.raises(NoNeutral):
        loops.from_rows(3, [[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_from_rows_rejects_entries_out_of_range():
    with pytest.raises(InvalidElement):
        loops.from_rows(2, [[0, 5], [5, 0]])
    with pytest.raises(InvalidElement):
        loops.from_rows(3, [[0, 1], [1, 0]])


def test_divisions_and_powers_in_z5():
    Z5 = loops.cyclic_group(5)
    assert loops.multiply(Z5, 3, 4) == 2
    assert loops.divide(Z5, 'left', 2, 1) == 4
    assert loops.divide(Z5, 'right', 2, 1) == 4
    assert loops.inverse(Z5, 2) == 3
    assert loops.power(Z5, 2, 3) == 1
    assert loops.power(Z5, 2, 0) == 0


def test_divide_rejects_unknown_side_and_element(z4):
    with pytest.raises(ValueError):
        loops.divide(z4, 'up', 1, 1)
    with pytest.raises(InvalidElement):
        loops.multiply(z4, 4, 0)


def test_divisions_in_noncommutative_loop(s3):
    for x in range(6):
        for y in range(6):
            assert loops.multiply(s3, x, loops.divide(s3, 'left', x, y)) == y
            assert loops.multiply(s3, loops.divide(s3, 'right', x, y), x) == y


def test_predicates(klein, s3, order6_loop):
    assert loops.is_commutative(klein) and loops.is_associative(klein)
    assert not loops.is_commutative(s3) and loops.is_associative(s3)
    assert loops.is_commutative(order6_loop)
    assert not loops.is_associative(order6_loop)


def test_element_orders_and_exponent():
    Z6 = loops.direct_product(loops.cyclic_group(2), loops.cyclic_group(3))
    assert loops.order_histogram(Z6) == {1: 1, 2: 1, 3: 2, 6: 2}
    assert loops.element_order(Z6, 4) == 6
    assert loops.exponent(Z6) == 6
    assert loops.exponent(loops.elementary_abelian(3)) == 2


def test_element_orders_need_power_associativity(order6_loop):
    assert not loops.is_power_associative(order6_loop)
    with pytest.raises(NotPowerAssociative):
        loops.element_orders(order6_loop)


def test_direct_product_encoding():
    Z2, Z3 = loops.cyclic_group(2), loops.cyclic_group(3)
    P = loops.direct_product(Z2, Z3)
    # (1, 2) * (1, 2) = (0, 1)
    assert loops.multiply(P, 1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1


def test_abelian_group_counts():
    assert [len(loops.abelian_groups(n)) for n in (8, 16, 24, 27, 32)] == [3, 5, 3, 3, 7]
    for G in loops.abelian_groups(16):
        assert G.order == 16
        assert loops.is_commutative(G) and loops.is_associative(G)


def test_closure_of_generator(z4):
    assert loops.closure(z4.table, [2]).tolist() == [0, 2]
    assert loops.closure(z4.table, [1]).tolist() == [0, 1, 2, 3]


def test_table_is_read_only(klein):
    with pytest.raises(ValueError):
        klein.table[0, 0] = 1
    assert klein.table.dtype == np.uint8
