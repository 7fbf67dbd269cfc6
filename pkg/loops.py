"""
Loop-core: Cayley-table loops, divisions, element orders and products.
Every constructor in the package funnels through ``from_rows`` so the
Latin-square and neutral-element axioms are checked on every build path.
"""
import logging
from math import lcm
from typing import Iterable, List, Sequence

import numpy as np
from sympy import factorint
from sympy.utilities.iterables import partitions

from errors import InvalidElement, NoNeutral, NotLatin, NotPowerAssociative
from models import LoopTable, table_dtype

logger = logging.getLogger(__name__)


# ========== Construction ==========

def from_rows(n: int, rows) -> LoopTable:
    """
    Build a loop from a Cayley table, relabeling the neutral element to 0.

    Args:
        n: Order of the loop
        rows: n x n integer array of element indices

    Returns:
        Validated LoopTable

    Raises:
        InvalidElement: an entry lies outside 0..n-1
        NotLatin: a row or column repeats a value
        NoNeutral: no two-sided identity exists
    """
    arr = np.asarray(rows, dtype=np.int64)
    if arr.shape != (n, n) or n < 1:
        raise InvalidElement(f'expected a {n}x{n} table, got shape {arr.shape}')
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidElement(f'entries must lie in 0..{n - 1}')

    ref = np.arange(n)
    bad_rows = np.nonzero((np.sort(arr, axis=1) != ref).any(axis=1))[0]
    if bad_rows.size:
        raise NotLatin(f'row {int(bad_rows[0])} repeats a value')
    bad_cols = np.nonzero((np.sort(arr, axis=0) != ref[:, None]).any(axis=0))[0]
    if bad_cols.size:
        raise NotLatin(f'column {int(bad_cols[0])} repeats a value')

    left = (arr == ref[None, :]).all(axis=1)
    right = (arr == ref[:, None]).all(axis=0)
    neutral = np.nonzero(left & right)[0]
    if neutral.size == 0:
        raise NoNeutral('no two-sided neutral element')
    e = int(neutral[0])
    if e != 0:
        swap = ref.copy()
        swap[0], swap[e] = e, 0
        # swap is an involution, so relabeling is table'[s(x), s(y)] = s(table[x, y])
        relabeled = np.empty_like(arr)
        relabeled[np.ix_(swap, swap)] = swap[arr]
        arr = relabeled
    return LoopTable(arr.astype(table_dtype(n)))


def trivial_loop() -> LoopTable:
    return LoopTable(np.zeros((1, 1), dtype=np.uint8))


def cyclic_group(n: int) -> LoopTable:
    """Z_n with element k the residue k."""
    ref = np.arange(n)
    return from_rows(n, (ref[:, None] + ref[None, :]) % n)


def elementary_abelian(dim: int) -> LoopTable:
    """GF(2)^dim with elements as bitmasks under XOR."""
    n = 1 << dim
    ref = np.arange(n)
    return from_rows(n, ref[:, None] ^ ref[None, :])


def direct_product(L1: LoopTable, L2: LoopTable) -> LoopTable:
    """
    Componentwise product; pair (x1, x2) is encoded as x1 * |L2| + x2.
    """
    n1, n2 = L1.order, L2.order
    T1 = L1.table.astype(np.int64)
    T2 = L2.table.astype(np.int64)
    prod = T1[:, None, :, None] * n2 + T2[None, :, None, :]
    return from_rows(n1 * n2, prod.reshape(n1 * n2, n1 * n2))


def direct_product_all(factors: Sequence[LoopTable]) -> LoopTable:
    result = trivial_loop()
    for factor in factors:
        result = direct_product(result, factor) if result.order > 1 else factor
    return result


def abelian_groups(order: int) -> List[LoopTable]:
    """
    One abelian group per isomorphism type of the given order.

    Each type is a product of cyclic groups of prime-power order, read off
    the partitions of the prime exponents.
    """
    per_prime = []
    for prime, exp in sorted(factorint(order).items()):
        choices = []
        for part in partitions(exp):
            sizes = sorted((prime ** k for k, mult in part.items() for _ in range(mult)),
                           reverse=True)
            choices.append(sizes)
        per_prime.append(sorted(choices, reverse=True))

    groups = [[]]
    for choices in per_prime:
        groups = [g + c for g in groups for c in choices]
    return [direct_product_all([cyclic_group(m) for m in sizes]) for sizes in groups]


# ========== Multiplication and Divisions ==========

def _check(L: LoopTable, *elements: int):
    for x in elements:
        if not 0 <= x < L.order:
            raise InvalidElement(f'{x} is not an element of a loop of order {L.order}')


def multiply(L: LoopTable, x: int, y: int) -> int:
    _check(L, x, y)
    return int(L.table[x, y])


def divide(L: LoopTable, side: str, x: int, y: int) -> int:
    """
    Left: x\\y, so that x*(x\\y) = y. Right: y/x, so that (y/x)*x = y.
    """
    _check(L, x, y)
    if side == 'left':
        return int(L.ldiv[x, y])
    if side == 'right':
        return int(L.rdiv[y, x])
    raise ValueError(f'side must be left or right, got {side!r}')


def inverse(L: LoopTable, x: int) -> int:
    """Two-sided inverse x\\0; equals 0/x in power-associative loops."""
    _check(L, x)
    return int(L.ldiv[x, 0])


def power(L: LoopTable, x: int, m: int) -> int:
    """Left power x^m with x^{k+1} = x * x^k."""
    _check(L, x)
    result = 0
    for _ in range(m):
        result = int(L.table[x, result])
    return result


# ========== Global Predicates ==========

def is_commutative(L: LoopTable) -> bool:
    return bool(np.array_equal(L.table, L.table.T))


def is_associative(L: LoopTable) -> bool:
    return L.cached('associative', lambda: _associative(L.table))


def _associative(T: np.ndarray, chunk: int = 64) -> bool:
    n = T.shape[0]
    for start in range(0, n, chunk):
        xs = np.arange(start, min(n, start + chunk))
        left = T[T[xs, :], :]                 # (xy)z over x, y, z
        right = T[xs[:, None, None], T[None, :, :]]   # x(yz)
        if not np.array_equal(left, right):
            return False
    return True


def closure(T: np.ndarray, seed: Iterable[int]) -> np.ndarray:
    """Sorted multiplication closure of seed together with 0."""
    n = T.shape[0]
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    inside[list(seed)] = True
    while True:
        members = np.nonzero(inside)[0]
        products = T[np.ix_(members, members)]
        if inside[products].all():
            return members
        inside[products.ravel()] = True


def is_power_associative(L: LoopTable) -> bool:
    """True iff every single-generated subloop is associative."""
    def compute():
        T = L.table
        seen = set()
        for x in range(L.order):
            members = closure(T, [x])
            key = members.tobytes()
            if key in seen:
                continue
            seen.add(key)
            sub = T[np.ix_(members, members)]
            # relabel to positions so the sub-table is a table of its own
            pos = np.empty(L.order, dtype=np.intp)
            pos[members] = np.arange(members.size)
            if not _associative(pos[sub]):
                return False
        return True
    return L.cached('power_associative', compute)


# ========== Orders ==========

def element_orders(L: LoopTable) -> np.ndarray:
    """
    Orders of all elements, computed with left powers.

    Raises:
        NotPowerAssociative: orders are undefined
    """
    if not is_power_associative(L):
        raise NotPowerAssociative('element orders need a power-associative loop')

    def compute():
        n = L.order
        T = L.table
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        powers = idx.copy()
        for k in range(1, n + 1):
            hit = (powers == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            powers = T[idx, powers]
        return orders
    return L.cached('element_orders', compute)


def element_order(L: LoopTable, x: int) -> int:
    _check(L, x)
    return int(element_orders(L)[x])


def exponent(L: LoopTable) -> int:
    return int(lcm(*(int(o) for o in np.unique(element_orders(L)))))


def order_histogram(L: LoopTable) -> dict:
    """{order: number of elements of that order}."""
    values, counts = np.unique(element_orders(L), return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
