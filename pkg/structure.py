"""
Structure analysis: inner mappings, permutation groups, automorphisms,
nuclei, subloops, quotients and the Bruck associate.
"""
import logging
from typing import Iterable, List

import numpy as np
from sympy import isprime

import loops
from errors import (
    DegreeMismatch, InvalidElement, LoopError, NotALoop, NotCommutative, NotNormal,
    NotSubloop, SquaringNotBijective
)
from models import LoopTable, Permutation, PermutationGroup, SubloopHandle

logger = logging.getLogger(__name__)

# associator blocks are processed this many cells at a time
_BLOCK = 1 << 22


# ========== Inner Mappings ==========

def left_translation(L: LoopTable, x: int) -> Permutation:
    return Permutation.from_array(L.table[x, :])


def right_translation(L: LoopTable, x: int) -> Permutation:
    return Permutation.from_array(L.table[:, x])


def inner_generator(L: LoopTable, kind: str, x: int, y: int = 0) -> Permutation:
    """
    One of the standard generators of Inn(L).

    Args:
        kind: 'Lxy' for (yx)\\(y(xz)), 'Rxy' for ((zx)y)/(xy), 'Tx' for x\\(zx)
    """
    n = L.order
    if not (0 <= x < n and 0 <= y < n):
        raise InvalidElement(f'({x}, {y}) outside a loop of order {n}')
    T, LD, RD = L.table, L.ldiv, L.rdiv
    if kind == 'Lxy':
        images = LD[T[y, x], T[y, T[x, :]]]
    elif kind == 'Rxy':
        images = RD[T[T[:, x], y], T[x, y]]
    elif kind == 'Tx':
        images = LD[x, T[:, x]]
    else:
        raise ValueError(f'unknown inner generator kind {kind!r}')
    return Permutation.from_array(images)


def _left_inner_block(L: LoopTable, x: int) -> np.ndarray:
    """Rows y -> L_{x,y} for a fixed x."""
    T, LD = L.table, L.ldiv
    return LD[T[:, x][:, None], T[:, T[x, :]]]


def _right_inner_block(L: LoopTable, x: int) -> np.ndarray:
    """Rows y -> R_{x,y} for a fixed x."""
    n = L.order
    T, RD = L.table, L.rdiv
    zx_y = T[T[:, x][None, :], np.arange(n)[:, None]]   # [y, z] = (zx)y
    return RD[zx_y, T[x, :][:, None]]


def inner_maps(L: LoopTable) -> np.ndarray:
    """
    All distinct generators L_{x,y}, R_{x,y}, T_x as rows of an array.
    """
    def compute():
        T, LD = L.table, L.ldiv
        commutative = loops.is_commutative(L)
        blocks = [np.arange(L.order)[None, :]]
        for x in range(L.order):
            blocks.append(np.unique(_left_inner_block(L, x), axis=0))
            if not commutative:
                blocks.append(np.unique(_right_inner_block(L, x), axis=0))
        if not commutative:
            blocks.append(LD[np.arange(L.order)[:, None], T.T])
        return np.unique(np.concatenate(blocks).astype(np.intp), axis=0)
    return L.cached('inner_maps', compute)


# ========== Automorphisms ==========

def _automorphism_mask(T: np.ndarray, maps: np.ndarray) -> np.ndarray:
    """For each row P of maps: does P(xy) = P(x)P(y) hold for all x, y?"""
    n = T.shape[0]
    out = np.empty(len(maps), dtype=bool)
    step = max(1, _BLOCK // (n * n))
    for start in range(0, len(maps), step):
        P = maps[start:start + step]
        lhs = P[:, T]
        rhs = T[P[:, :, None], P[:, None, :]]
        out[start:start + step] = (lhs == rhs).all(axis=(1, 2))
    return out


def is_automorphism(L: LoopTable, perm: Permutation) -> bool:
    if perm.degree != L.order:
        raise DegreeMismatch(f'permutation of degree {perm.degree} on a loop of order {L.order}')
    return bool(_automorphism_mask(L.table, perm.array[None, :])[0])


def check_A_identity(L: LoopTable) -> bool:
    """
    Scan xy\\x(yu) * xy\\x(yv) = xy\\x(y*uv) over all x, y, u, v.

    Raises:
        NotCommutative: the identity characterizes A-loops only for commutative loops
    """
    if not loops.is_commutative(L):
        raise NotCommutative('the A identity scan expects a commutative loop')
    T, LD = L.table, L.ldiv
    idx = np.arange(L.order)
    for x in range(L.order):
        # rows y: u -> (xy)\(x(yu))
        phi = LD[T[x, :][:, None], T[x, T[idx, :]]]
        if not _automorphism_mask(T, phi.astype(np.intp)).all():
            return False
    return True


def is_A_loop(L: LoopTable) -> bool:
    """True iff every inner mapping generator is an automorphism."""
    return L.cached('a_loop', lambda: bool(_automorphism_mask(L.table, inner_maps(L)).all()))


# ========== Permutation Groups ==========

def generated_group(gens: List[Permutation], degree: int = None) -> PermutationGroup:
    """
    Group generated by gens; redundant generators are dropped on the way.

    Raises:
        DegreeMismatch: generators act on different sets
    """
    if degree is None:
        if not gens:
            raise DegreeMismatch('cannot infer the degree of an empty generator list')
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f'generator of degree {g.degree}, expected {degree}')
    group = PermutationGroup([], degree)
    for g in gens:
        if g.is_identity() or group.contains(g):
            continue
        group = PermutationGroup(group.generators + [g], degree)
    return group


def _group_from_rows(rows: np.ndarray, degree: int) -> PermutationGroup:
    return generated_group([Permutation.from_array(r) for r in rows], degree)


def inner_mapping_group(L: LoopTable) -> PermutationGroup:
    return L.cached('inn', lambda: _group_from_rows(inner_maps(L), L.order))


def multiplication_group(L: LoopTable) -> PermutationGroup:
    """Mlt(L) = <L_x, R_x>."""
    def compute():
        rows = np.concatenate([L.table, L.table.T]).astype(np.intp)
        return _group_from_rows(np.unique(rows, axis=0), L.order)
    return L.cached('mlt', compute)


def mlt_order(L: LoopTable) -> int:
    """|Mlt(L)| = |L| * |Inn(L)|, as Inn(L) is the stabilizer of 0 in Mlt(L)."""
    return L.order * inner_mapping_group(L).order()


def automorphism_group(L: LoopTable) -> PermutationGroup:
    """Aut(L) from the full backtracking enumeration."""
    from isomorphism import automorphisms

    def compute():
        auts = automorphisms(L)
        group = PermutationGroup([], L.order)
        for a in auts:
            if group.order() == len(auts):
                break
            if not group.contains(a):
                group = PermutationGroup(group.generators + [a], L.order)
        return group
    return L.cached('aut', compute)


# ========== Nuclei ==========

def associator_counts(L: LoopTable) -> np.ndarray:
    """
    counts[k, e] = number of associating triples (x, y, z), i.e. (xy)z = x(yz),
    with e in position k (0: x, 1: y, 2: z).
    """
    def compute():
        T = L.table
        n = L.order
        counts = np.zeros((3, n), dtype=np.int64)
        step = max(1, _BLOCK // (n * n))
        for start in range(0, n, step):
            xs = np.arange(start, min(n, start + step))
            ok = T[T[xs, :], :] == T[xs[:, None, None], T[None, :, :]]
            counts[0, xs] = ok.sum(axis=(1, 2))
            counts[1] += ok.sum(axis=(0, 2))
            counts[2] += ok.sum(axis=(0, 1))
        return counts
    return L.cached('associator_counts', compute)


def commutant(L: LoopTable) -> np.ndarray:
    return (L.table == L.table.T).all(axis=1)


def nucleus(L: LoopTable, kind: str) -> SubloopHandle:
    """
    Args:
        kind: 'left', 'middle', 'right' or 'center'
    """
    full = associator_counts(L) == L.order ** 2
    if kind == 'left':
        mask = full[0]
    elif kind == 'middle':
        mask = full[1]
    elif kind == 'right':
        mask = full[2]
    elif kind == 'center':
        mask = full.all(axis=0) & commutant(L)
    else:
        raise ValueError(f'unknown nucleus kind {kind!r}')
    return SubloopHandle(L, tuple(int(i) for i in np.nonzero(mask)[0]))


def element_invariants(L: LoopTable) -> np.ndarray:
    """
    One row per element of isomorphism-invariant data: order (0 when undefined),
    nucleus and center membership, associator counts, number of square roots
    and size of the commutant row.
    """
    def compute():
        n = L.order
        counts = associator_counts(L)
        full = counts == n * n
        comm = L.table == L.table.T
        center = full.all(axis=0) & comm.all(axis=1)
        if loops.is_power_associative(L):
            orders = loops.element_orders(L)
        else:
            orders = np.zeros(n, dtype=np.int64)
        roots = np.bincount(np.diagonal(L.table).astype(np.intp), minlength=n)
        return np.column_stack([
            orders, full[0], full[1], full[2], center,
            counts[0], counts[1], counts[2], roots, comm.sum(axis=1),
        ]).astype(np.int64)
    return L.cached('element_invariants', compute)


# ========== Subloops and Quotients ==========

def subloop_generated(L: LoopTable, seed: Iterable[int]) -> SubloopHandle:
    seed = list(seed)
    for x in seed:
        if not 0 <= x < L.order:
            raise InvalidElement(f'{x} outside a loop of order {L.order}')
    return SubloopHandle(L, tuple(int(i) for i in loops.closure(L.table, seed)))


def _require_subloop(L: LoopTable, S: SubloopHandle):
    members = S.array
    inside = np.zeros(L.order, dtype=bool)
    inside[members] = True
    if not inside[0] or not inside[L.table[np.ix_(members, members)]].all():
        raise NotSubloop(f'{S!r} is not closed under multiplication')
    return inside


def is_normal(L: LoopTable, S: SubloopHandle) -> bool:
    """Invariance of S under every inner mapping generator."""
    inside = _require_subloop(L, S)
    return bool(inside[inner_maps(L)[:, S.array]].all())


def quotient(L: LoopTable, S: SubloopHandle) -> LoopTable:
    """
    Coset loop L/S; cosets are numbered by their smallest member.

    Raises:
        NotNormal: S is not a normal subloop
    """
    if not is_normal(L, S):
        raise NotNormal(f'{S!r} is not normal')
    T = L.table
    label = T[:, S.array].min(axis=1)
    reps = np.unique(label)
    index = np.full(L.order, -1, dtype=np.int64)
    index[reps] = np.arange(reps.size)
    table = index[label[T[np.ix_(reps, reps)]]]
    return loops.from_rows(reps.size, table)


# ========== Bruck Associate and Related Predicates ==========

def is_left_bol(L: LoopTable) -> bool:
    """x(y(xz)) = (x(yx))z for all x, y, z."""
    T = L.table
    n = L.order
    step = max(1, _BLOCK // (n * n))
    for start in range(0, n, step):
        xs = np.arange(start, min(n, start + step))
        x = xs[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        lhs = T[x, T[y, T[x, z]]]
        rhs = T[T[x, T[y, x]], z]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def bruck_associate(L: LoopTable) -> LoopTable:
    """
    (L, o) with x o y = (x^-1 \\ x y^2)^(1/2).

    Raises:
        NotCommutative, NotALoop: L must be a commutative A-loop
        SquaringNotBijective: square roots are not unique
    """
    if not loops.is_commutative(L):
        raise NotCommutative('Bruck associate needs a commutative loop')
    squares = np.diagonal(L.table).astype(np.intp)
    if np.unique(squares).size != L.order:
        raise SquaringNotBijective('squaring is not a bijection')
    if not is_A_loop(L):
        raise NotALoop('Bruck associate needs an A-loop')
    T, LD = L.table, L.ldiv
    n = L.order
    sqrt = np.empty(n, dtype=np.intp)
    sqrt[squares] = np.arange(n)
    inv = LD[:, 0]
    x = np.arange(n)[:, None]
    table = sqrt[LD[inv[:, None], T[x, squares[None, :]]]]
    result = loops.from_rows(n, table)
    if not is_left_bol(result):
        raise LoopError('Bruck associate fails the left Bol identity')
    return result


def has_center_of_prime_index(L: LoopTable) -> bool:
    return bool(isprime(L.order // nucleus(L, 'center').size))


def satisfies_pq_structure(L: LoopTable, p0: int, p1: int) -> bool:
    """
    Is there i in {0, 1} and a normal subloop S of order p_i such that every
    element outside S has order p_{1-i}?
    """
    if L.order != p0 * p1 or not loops.is_power_associative(L):
        return False
    orders = loops.element_orders(L)
    for small, other in ((p0, p1), (p1, p0)):
        for x in np.nonzero(orders == small)[0]:
            S = subloop_generated(L, [int(x)])
            if S.size != small or not is_normal(L, S):
                continue
            outside = np.ones(L.order, dtype=bool)
            outside[S.array] = False
            if (orders[outside] == other).all():
                return True
    return False
