"""
Isomorphism and isotopism testing with invariant-based pruning, plus the
specialized criteria for G(f) loops and the Terg family.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime
from sympy.ntheory import is_quad_residue

import constructions
import loops
import structure
from errors import CNotInvertible, InvalidParameters, IsGroup, LoopError, NoWitness
from models import (
    GfSpec, InvariantFingerprint, IsotopismTriple, LoopTable, Permutation, TergParams
)

logger = logging.getLogger(__name__)


# ========== Fingerprints ==========

def quick_fingerprint(L: LoopTable) -> InvariantFingerprint:
    """Group-free invariants; cheap enough to compute for every isotope."""
    def compute():
        counts = structure.associator_counts(L)
        full = counts == L.order ** 2
        center = structure.nucleus(L, 'center').size
        hist = None
        if loops.is_power_associative(L):
            hist = tuple(sorted(loops.order_histogram(L).items()))
        profile = tuple(sorted(map(tuple, counts.T.tolist())))
        return InvariantFingerprint(
            order=L.order,
            commutative=loops.is_commutative(L),
            order_histogram=hist,
            left_nucleus=int(full[0].sum()),
            middle_nucleus=int(full[1].sum()),
            right_nucleus=int(full[2].sum()),
            center=center,
            squares=int(np.unique(np.diagonal(L.table)).size),
            associator_profile=profile,
        )
    return L.cached('quick_fingerprint', compute)


def fingerprint(L: LoopTable, mlt_limit: int = 128, with_aut: bool = False) -> InvariantFingerprint:
    """
    Full invariant vector. |Inn| and |Mlt| are filled in up to order mlt_limit,
    |Aut| only on request.
    """
    quick = quick_fingerprint(L)
    inn = mlt = aut = None
    if L.order <= mlt_limit:
        inn = structure.inner_mapping_group(L).order()
        mlt = L.order * inn
    if with_aut:
        aut = len(automorphisms(L))
    return InvariantFingerprint(**{**quick.__dict__, 'inn': inn, 'mlt': mlt, 'aut': aut})


# ========== Backtracking Search ==========

def _invariant_classes(L1: LoopTable, L2: LoopTable) -> Tuple[np.ndarray, np.ndarray]:
    """Joint class ids of element invariants in L1 and L2."""
    inv1 = structure.element_invariants(L1)
    inv2 = structure.element_invariants(L2)
    _, ids = np.unique(np.concatenate([inv1, inv2]), axis=0, return_inverse=True)
    ids = ids.reshape(-1)
    return ids[:L1.order], ids[L1.order:]


def _closure_program(T: np.ndarray, inside: np.ndarray, gen: int) -> List[Tuple[np.ndarray, ...]]:
    """
    Rounds of (targets, lefts, rights) extending the closure by gen; each
    target is the product of two earlier elements. Updates inside in place.
    """
    inside[gen] = True
    rounds = []
    while True:
        members = np.nonzero(inside)[0]
        products = T[np.ix_(members, members)]
        fresh = ~inside[products]
        if not fresh.any():
            return rounds
        rows, cols = np.nonzero(fresh)
        values = products[rows, cols]
        values, first = np.unique(values, return_index=True)
        rounds.append((values.astype(np.intp), members[rows[first]], members[cols[first]]))
        inside[values] = True


def _generator_plan(L: LoopTable, classes: np.ndarray):
    """Greedy generator sequence (rarest invariant class first) with closure programs."""
    T = L.table
    n = L.order
    freq = np.bincount(classes)
    rank = np.lexsort((np.arange(n), freq[classes]))
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    plan = []
    while not inside.all():
        gen = int(next(x for x in rank if not inside[x]))
        program = _closure_program(T, inside, gen)
        plan.append((gen, program, np.nonzero(inside)[0]))
    return plan


def _search(L1: LoopTable, L2: LoopTable, find_all: bool) -> List[np.ndarray]:
    n = L1.order
    if n != L2.order:
        return []
    c1, c2 = _invariant_classes(L1, L2)
    if not np.array_equal(np.sort(c1), np.sort(c2)):
        return []
    plan = _generator_plan(L1, c1)
    T1 = L1.table.astype(np.intp)
    T2 = L2.table.astype(np.intp)
    found = []

    def extend(level: int, phi: np.ndarray, used: np.ndarray) -> bool:
        if level == len(plan):
            found.append(phi.copy())
            return not find_all
        gen, program, members = plan[level]
        for cand in np.nonzero((c2 == c1[gen]) & ~used)[0]:
            trial = phi.copy()
            trial[gen] = cand
            for targets, lefts, rights in program:
                trial[targets] = T2[trial[lefts], trial[rights]]
            images = trial[members]
            if not (c2[images] == c1[members]).all():
                continue
            if np.unique(images).size != members.size:
                continue
            if not np.array_equal(trial[T1[np.ix_(members, members)]],
                                  T2[np.ix_(images, images)]):
                continue
            mark = np.zeros(n, dtype=bool)
            mark[images] = True
            if extend(level + 1, trial, mark):
                return True
        return False

    phi = np.full(n, -1, dtype=np.intp)
    phi[0] = 0
    used = np.zeros(n, dtype=bool)
    used[0] = True
    if c2[0] == c1[0]:
        extend(0, phi, used)
    return found


def find_isomorphism(L1: LoopTable, L2: LoopTable) -> Optional[Permutation]:
    """
    An isomorphism L1 -> L2, or None when none exists (proof by exhaustion).
    """
    if L1.order != L2.order or quick_fingerprint(L1) != quick_fingerprint(L2):
        return None
    found = _search(L1, L2, find_all=False)
    if not found:
        return None
    phi = Permutation.from_array(found[0])
    if not np.array_equal(phi.array[L1.table], L2.table[np.ix_(phi.array, phi.array)]):
        raise LoopError('isomorphism search returned an uncertified map')
    return phi


def is_isomorphic(L1: LoopTable, L2: LoopTable) -> bool:
    return find_isomorphism(L1, L2) is not None


def automorphisms(L: LoopTable) -> List[Permutation]:
    """All automorphisms of L, sorted by image list."""
    def compute():
        return sorted(Permutation.from_array(p) for p in _search(L, L, find_all=True))
    return L.cached('automorphisms', compute)


def deduplicate(tables: Sequence[LoopTable]) -> List[int]:
    """
    Indices of pairwise non-isomorphic representatives, first occurrence kept.
    """
    buckets: Dict[InvariantFingerprint, List[int]] = {}
    keep = []
    for i, L in enumerate(tables):
        key = quick_fingerprint(L)
        reps = buckets.setdefault(key, [])
        if any(find_isomorphism(tables[j], L) is not None for j in reps):
            continue
        reps.append(i)
        keep.append(i)
    return keep


# ========== Isotopy ==========

def principal_isotope(L: LoopTable, a: int, b: int) -> LoopTable:
    """x o y = (x/b)(a\\y); the neutral element a*b is relabeled to 0."""
    T = L.table.astype(np.intp)
    n = L.order
    xb = L.rdiv[:, b].astype(np.intp)
    ay = L.ldiv[a, :].astype(np.intp)
    return loops.from_rows(n, T[xb[:, None], ay[None, :]])


def _isotopes(L: LoopTable):
    for a in range(L.order):
        for b in range(L.order):
            yield a, b, principal_isotope(L, a, b)


def are_isotopic(L1: LoopTable, L2: LoopTable) -> bool:
    """True iff L2 is isomorphic to a principal isotope of L1."""
    if L1.order != L2.order:
        return False
    target = quick_fingerprint(L2)
    seen = set()
    for _, _, iso in _isotopes(L1):
        if iso.key() in seen:
            continue
        seen.add(iso.key())
        if quick_fingerprint(iso) == target and find_isomorphism(iso, L2) is not None:
            return True
    return False


def isotopy_classes(tables: Sequence[LoopTable]) -> List[int]:
    """
    Class id per table (the index of the class's first member) for a list of
    pairwise non-isomorphic commutative loops.
    """
    parent = list(range(len(tables)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    buckets: Dict[InvariantFingerprint, List[int]] = {}
    for i, L in enumerate(tables):
        buckets.setdefault(quick_fingerprint(L), []).append(i)

    for i, L in enumerate(tables):
        seen = set()
        for _, _, iso in _isotopes(L):
            if iso.key() in seen or not loops.is_commutative(iso):
                continue
            seen.add(iso.key())
            for j in buckets.get(quick_fingerprint(iso), []):
                if find(j) == find(i):
                    continue
                if find_isomorphism(iso, tables[j]) is not None:
                    ri, rj = find(i), find(j)
                    parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(len(tables))]


def certify_isotopism(L1: LoopTable, L2: LoopTable, triple: IsotopismTriple) -> bool:
    """gamma(x*y) = alpha(x) o beta(y) for all x, y."""
    al, be, ga = triple.alpha.array, triple.beta.array, triple.gamma.array
    return bool(np.array_equal(ga[L1.table], L2.table[np.ix_(al, be)]))


# ========== G(f) Criteria ==========

def gf_isomorphic(G: LoopTable, f1: Permutation, f2: Permutation) -> bool:
    """
    Is there psi in Aut(G) with h = f2^-1 psi f1 satisfying h(x) = h(1) psi(x)
    and h(1) a square?

    Raises:
        IsGroup: G(f1) or G(f2) is associative
    """
    Q1 = constructions.build_gf(GfSpec(G, f1))
    Q2 = constructions.build_gf(GfSpec(G, f2))
    if loops.is_associative(Q1) or loops.is_associative(Q2):
        raise IsGroup('the G(f) criterion needs nonassociative loops')
    T = G.table.astype(np.intp)
    squares = set(np.diagonal(T).tolist())
    f2_inv = f2.inverse().array
    for psi in automorphisms(G):
        h = f2_inv[psi.array[f1.array]]
        if int(h[0]) in squares and np.array_equal(h, T[h[0], psi.array]):
            return True
    return False


def gf_isotopy_witness(G: LoopTable, g: Permutation, t1: int, t2: int) -> IsotopismTriple:
    """
    Isotopism G(g t1) -> G(g t2) from an element z with g(z) = z^-1 t1^-1 t2.

    Raises:
        InvalidParameters: g is not an automorphism or t1, t2 are not fixed by g
        NoWitness: no such z
    """
    if not structure.is_automorphism(G, g) or g(t1) != t1 or g(t2) != t2:
        raise InvalidParameters('g must be an automorphism fixing t1 and t2')
    T = G.table.astype(np.intp)
    inv = G.ldiv[:, 0].astype(np.intp)
    m = G.order
    target = T[inv, T[inv[t1], t2]]          # z -> z^-1 t1^-1 t2
    hits = np.nonzero(g.array == target)[0]
    if hits.size == 0:
        raise NoWitness(f'no z with g(z) = z^-1 t1^-1 t2 for t1={t1}, t2={t2}')
    z = int(hits[0])

    x = np.arange(m)
    alpha = np.concatenate([x, m + T[x, inv[z]]])
    beta = np.concatenate([T[z, x], m + x])
    gamma = np.concatenate([T[z, x], m + x])
    triple = IsotopismTriple(Permutation.from_array(alpha), Permutation.from_array(beta),
                             Permutation.from_array(gamma))
    Q1 = constructions.build_gf(GfSpec(G, Permutation.from_array(T[g.array, t1])))
    Q2 = constructions.build_gf(GfSpec(G, Permutation.from_array(T[g.array, t2])))
    if not certify_isotopism(Q1, Q2, triple):
        raise LoopError('isotopism witness failed certification')
    return triple


# ========== Terg Isomorphisms ==========

def terg_iso_map(p1: TergParams, p2: TergParams, A: int, B: int, C: int) -> Optional[Permutation]:
    """
    The map x -> (x1, x2, 0) * (A, B, C)^{x3} computed in the target loop,
    returned when it is an isomorphism Terg(p1) -> Terg(p2), else None.

    Raises:
        CNotInvertible: C = 0
        InvalidParameters: moduli differ or are not prime
    """
    n = p1.n
    if p2.n != n or not isprime(n):
        raise InvalidParameters('terg_iso_map needs equal prime moduli')
    if C % n == 0:
        raise CNotInvertible('C must be nonzero')
    Q1 = constructions.build_terg(p1)
    Q2 = constructions.build_terg(p2)
    T2 = Q2.table.astype(np.intp)
    base = constructions.terg_index(n, (A, B, C))
    powers = [0]
    for _ in range(n - 1):
        powers.append(int(T2[base, powers[-1]]))
    x1, x2, x3 = (c for c in constructions._triples(n))
    images = T2[x1 * n * n + x2 * n, np.array(powers)[x3]]
    if np.unique(images).size != Q1.order:
        return None
    if not np.array_equal(images[Q1.table], T2[np.ix_(images, images)]):
        return None
    return Permutation.from_array(images)


def _certified(Q1: LoopTable, Q2: LoopTable, images: np.ndarray) -> bool:
    return bool(np.array_equal(images[Q1.table], Q2.table.astype(np.intp)[np.ix_(images, images)]))


def terg_scaling_isos(p: int) -> List[Tuple[TergParams, TergParams, Permutation]]:
    """
    Certified maps ((c/b) x1, (c/b) x2, x3) between Terg(p, 0, b) and
    Terg(p, 0, c), and (u^2 x1, x2, u x3) between Terg(p, a1, 0) and
    Terg(p, a1 u^2, 0) for odd p.
    """
    out = []
    x1, x2, x3 = constructions._triples(p)
    units = [u for u in range(1, p) if np.gcd(u, p) == 1]
    for b in units:
        Q1 = constructions.build_terg(TergParams(p, 0, b))
        for c in units:
            if c == b:
                continue
            r = (c * pow(b, -1, p)) % p
            images = ((r * x1) % p) * p * p + ((r * x2) % p) * p + x3
            Q2 = constructions.build_terg(TergParams(p, 0, c))
            if not _certified(Q1, Q2, images):
                raise LoopError(f'scaling map Terg({p},0,{b}) -> Terg({p},0,{c}) is not an isomorphism')
            out.append((TergParams(p, 0, b), TergParams(p, 0, c), Permutation.from_array(images)))
    if p % 2 == 1:
        for a1 in range(1, p):
            Q1 = constructions.build_terg(TergParams(p, a1, 0))
            reached = {a1}
            for u in range(2, p):
                a2 = (a1 * u * u) % p
                if a2 in reached:
                    continue
                reached.add(a2)
                images = ((u * u * x1) % p) * p * p + x2 * p + (u * x3) % p
                Q2 = constructions.build_terg(TergParams(p, a2, 0))
                if not _certified(Q1, Q2, images):
                    raise LoopError(f'residue map Terg({p},{a1},0) -> Terg({p},{a2},0) is not an isomorphism')
                out.append((TergParams(p, a1, 0), TergParams(p, a2, 0), Permutation.from_array(images)))
    return out


def quadratic_residue(a: int, p: int) -> bool:
    """Nonzero a is a square mod p."""
    return a % p != 0 and bool(is_quad_residue(a, p))
