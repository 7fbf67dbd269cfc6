"""
Explicit loop constructions: G(f), Q_n, trilinear-form extensions,
Terg(Z_n, a, b), the ring version Ter(R), general central extensions,
group-cocycle addition and realization of middle-nucleus parameters.

Encodings (most significant coordinate first):
    G(f)               x -> x, bar(x) -> |G| + x
    central extension  (x, a) -> x * m + a
    Terg / Ter(R)      (x1, x2, x3) -> x1 * n^2 + x2 * n + x3
    GF(2)^n            sum of e_i -> bitmask with e_i = 1 << (i - 1)
"""
import logging
from itertools import product
from math import comb, prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import loops
import structure
from errors import (
    CatalogMissing, DimensionTooSmall, HypothesisViolated, Infeasible, InvalidParameters,
    LoopError, NotAbelianGroup, NotBijection, NotGroupCocycle, OutOfRange
)
from models import (
    CocycleVector, ExtensionSpec, GfSpec, LoopTable, Permutation, TergParams, TrilinearForm
)

logger = logging.getLogger(__name__)


# ========== G(f) Constructions ==========

def _require_abelian_group(G: LoopTable):
    if not (loops.is_commutative(G) and loops.is_associative(G)):
        raise NotAbelianGroup(f'{G!r} is not an abelian group')


def build_gf(spec: GfSpec) -> LoopTable:
    """
    G(f) on G u bar(G): x*y = xy, x*bar(y) = bar(x)*y = bar(xy), bar(x)*bar(y) = f(xy).

    Raises:
        NotAbelianGroup: G is not an abelian group
        NotBijection: f does not act on G
    """
    G = spec.G
    _require_abelian_group(G)
    m = G.order
    if spec.f.degree != m:
        raise NotBijection(f'f has degree {spec.f.degree}, |G| = {m}')
    T = G.table.astype(np.int64)
    f = spec.f.array
    table = np.block([[T, T + m], [T + m, f[T]]])
    return loops.from_rows(2 * m, table)


def gf_conditions(spec: GfSpec) -> Dict:
    """
    Evaluate (P1) f(xy) = f(x)f(y)f(1)^-1, (P2) f(x^2) = x^2 f(1) and
    (P3) f^2(x)^2 f(x)^-2 = f^2(1) over all of G.

    Returns:
        Dict with keys P1, P2, P3 and decomposition ((g, t) or None)
    """
    G = spec.G
    _require_abelian_group(G)
    T = G.table.astype(np.intp)
    inv = G.ldiv[:, 0].astype(np.intp)
    sq = np.diagonal(T)
    f = spec.f.array
    f1 = f[0]
    ff = f[f]

    p1 = bool((f[T] == T[T[f[:, None], f[None, :]], inv[f1]]).all())
    p2 = bool((f[sq] == T[sq, f1]).all())
    p3 = bool((T[sq[ff], inv[sq[f]]] == ff[0]).all())

    decomposition = None
    if p1 and p2 and ff[0] == sq[f1]:
        g = T[f, inv[f1]]
        t = int(f1)
        if not (structure._automorphism_mask(T, g[None, :])[0]
                and (g[sq] == sq).all() and g[t] == t):
            raise LoopError('decomposition f = g t violates the A-loop conditions on g and t')
        decomposition = (Permutation.from_array(g), t)
    return {'P1': p1, 'P2': p2, 'P3': p3, 'decomposition': decomposition}


def gf_candidates(G: LoopTable) -> List[GfSpec]:
    """
    All specs f = g t with g in Aut(G) fixing every square and t a fixed point
    of g; these are exactly the G(f) that are commutative A-loops.
    """
    from isomorphism import automorphisms

    _require_abelian_group(G)
    T = G.table.astype(np.intp)
    sq = np.diagonal(T)
    specs = []
    for g in automorphisms(G):
        ga = g.array
        if not (ga[sq] == sq).all():
            continue
        for t in np.nonzero(ga == np.arange(G.order))[0]:
            f = Permutation.from_array(T[ga, int(t)])
            specs.append(GfSpec(G, f, g, int(t)))
    return specs


def enumerate_gf_aloops(G: LoopTable) -> List[LoopTable]:
    """
    Nonassociative commutative A-loops G(f), pairwise non-isomorphic.
    """
    from isomorphism import deduplicate

    built = [build_gf(spec) for spec in gf_candidates(G)]
    built = [L for L in built if not loops.is_associative(L)]
    keep = deduplicate(built)
    logger.debug('G(f) over order %d: %d candidates, %d classes', G.order, len(built), len(keep))
    return [built[i] for i in keep]


def linear_map(n: int, images: Sequence[int]) -> Permutation:
    """The linear map of GF(2)^n sending e_i to images[i - 1]."""
    size = 1 << n
    out = np.zeros(size, dtype=np.int64)
    for i, img in enumerate(images):
        bit = (np.arange(size) >> i) & 1
        out ^= bit * img
    try:
        return Permutation.from_array(out)
    except NotBijection:
        raise NotBijection(f'images {list(images)} are linearly dependent')


def build_qn(n: int) -> LoopTable:
    """Q_n = G(g) over GF(2)^n with g(e_i) = e_{i+1}, g(e_n) = e_1 + e_n."""
    if n < 2:
        raise InvalidParameters(f'Q_n needs n >= 2, got {n}')
    images = [1 << (i + 1) for i in range(n - 1)] + [1 | (1 << (n - 1))]
    g = linear_map(n, images)
    return build_gf(GfSpec(loops.elementary_abelian(n), g, g, 0))


# ========== Trilinear Forms ==========

def _bits(n: int) -> np.ndarray:
    """bits[x, i] = coefficient of e_{i+1} in x."""
    return ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)


def evaluate_form(form: TrilinearForm) -> np.ndarray:
    """Full value table g(x, y, z) over GF(2)^n."""
    X = _bits(form.n)
    return np.einsum('ai,bj,ck,ijk->abc', X, X, X, form.values.astype(np.int64)) & 1


def newforms_form(n: int) -> TrilinearForm:
    """g(e_i, e_i, e_{i+1}) = 1 cyclically, all other basis values 0."""
    if n < 3:
        raise DimensionTooSmall(f'for n = {n} some g(x,-,-) is always symmetric')
    values = np.zeros((n, n, n), dtype=np.uint8)
    for i in range(n):
        values[i, i, (i + 1) % n] = 1
    return TrilinearForm(n, values)


def symmetrize_13(form: TrilinearForm) -> TrilinearForm:
    """g'(x, y, z) = g(x, y, z) + g(z, y, x)."""
    return TrilinearForm(form.n, form.values ^ form.values.transpose(2, 1, 0))


def trilinear_cocycle(form: TrilinearForm) -> CocycleVector:
    """
    theta(x, y) = g(x, x + y, y).

    Raises:
        HypothesisViolated: theta is not symmetric
    """
    size = 1 << form.n
    g = evaluate_form(form)
    x = np.arange(size)[:, None]
    y = np.arange(size)[None, :]
    theta = g[x, x ^ y, y]
    if not np.array_equal(theta, theta.T):
        raise HypothesisViolated('g(x, x+y, y) = g(y, x+y, x) fails')
    return CocycleVector(size, 2, theta, symmetric=True)


def build_trilinear_extension(form: TrilinearForm) -> LoopTable:
    """GF(2)^n extended by GF(2) with theta(x, y) = g(x, x + y, y)."""
    K = loops.elementary_abelian(form.n)
    return build_central_extension(ExtensionSpec(K, 2, trilinear_cocycle(form)))


def trilinear_nucleus_report(form: TrilinearForm) -> Dict:
    """
    Compare the middle nucleus of the extension with the two printed criteria
    g(y,x,z) = g(x,z,y) and g(y,x,z) = g(y,z,x).
    """
    Q = build_trilinear_extension(form)
    g = evaluate_form(form)
    first = (g == g.transpose(1, 2, 0)).all(axis=(1, 2))    # g[y,x,z] vs g[x,z,y]
    second = (g == g.transpose(0, 2, 1)).all(axis=(1, 2))   # g[y,x,z] vs g[y,z,x]

    def lift(mask):
        # (y, b) -> 2y + b
        return tuple(sorted(2 * int(y) + b for y in np.nonzero(mask)[0] for b in (0, 1)))

    computed = structure.nucleus(Q, 'middle').members
    return {
        'middle_nucleus': computed,
        'criterion_yxz_xzy': lift(first),
        'criterion_yxz_yzx': lift(second),
        'matches_yxz_xzy': lift(first) == computed,
        'matches_yxz_yzx': lift(second) == computed,
    }


def induced_symmetric(form: TrilinearForm) -> np.ndarray:
    """mask[x]: is the bilinear form g(x, -, -) symmetric?"""
    g = evaluate_form(form)
    return (g == g.transpose(0, 2, 1)).all(axis=(1, 2))


def lowdimension_witness(form: TrilinearForm) -> Optional[int]:
    """Smallest x != 0 with g(x, -, -) symmetric, or None."""
    hits = np.nonzero(induced_symmetric(form))[0]
    hits = hits[hits != 0]
    return int(hits[0]) if hits.size else None


def is_13_symmetric(form: TrilinearForm) -> bool:
    return bool(np.array_equal(form.values, form.values.transpose(2, 1, 0)))


# ========== Terg(Z_n, a, b) ==========

def overflow_indicator(x: int, y: int, n: int) -> int:
    """(x, y)_n: 1 when x + y >= n, else 0."""
    if not (0 <= x < n and 0 <= y < n):
        raise OutOfRange(f'({x}, {y}) outside Z_{n}')
    return int(x + y >= n)


def terg_index(n: int, x: Tuple[int, int, int]) -> int:
    return (x[0] % n) * n * n + (x[1] % n) * n + (x[2] % n)


def terg_triple(n: int, index: int) -> Tuple[int, int, int]:
    return index // (n * n), (index // n) % n, index % n


def _triples(n: int):
    idx = np.arange(n ** 3)
    return idx // (n * n), (idx // n) % n, idx % n


def build_terg(params: TergParams) -> LoopTable:
    """
    (x1+y1+(x2+y2)x3y3 + a(x2,y2)_n + b(x3,y3)_n, x2+y2, x3+y3).
    """
    n, a, b = params.n, params.a, params.b
    x1, x2, x3 = (c[:, None] for c in _triples(n))
    y1, y2, y3 = (c[None, :] for c in _triples(n))
    first = (x1 + y1 + (x2 + y2) * x3 * y3
             + a * (x2 + y2 >= n) + b * (x3 + y3 >= n)) % n
    table = first * n * n + ((x2 + y2) % n) * n + (x3 + y3) % n
    return loops.from_rows(n ** 3, table)


def terg_power(params: TergParams, x: Tuple[int, int, int], m: int) -> Tuple[int, int, int]:
    """Closed form of x^m in Terg(Z_n, a, b)."""
    n, a, b = params.n, params.a, params.b
    x1, x2, x3 = (c % n for c in x)

    def t(xi):
        return sum(overflow_indicator(xi, (k * xi) % n, n) for k in range(1, m))

    first = m * x1 + 2 * comb(m + 1, 3) * x2 * x3 * x3 + a * t(x2) + b * t(x3)
    return first % n, (m * x2) % n, (m * x3) % n


def terg_cocycle(params: TergParams) -> Tuple[LoopTable, CocycleVector, CocycleVector]:
    """
    Split Terg as a central extension of Z_n by K = Z_n x Z_n (index x2 * n + x3).

    Returns:
        (K, mu, nu) with mu = (x2+y2) x3 y3 and nu = a(x2,y2)_n + b(x3,y3)_n
    """
    n, a, b = params.n, params.a, params.b
    K = loops.direct_product(loops.cyclic_group(n), loops.cyclic_group(n))
    idx = np.arange(n * n)
    x2, x3 = (idx // n)[:, None], (idx % n)[:, None]
    y2, y3 = (idx // n)[None, :], (idx % n)[None, :]
    mu = (x2 + y2) * x3 * y3
    nu = a * (x2 + y2 >= n) + b * (x3 + y3 >= n)
    return (K, CocycleVector(n * n, n, mu, symmetric=True),
            CocycleVector(n * n, n, nu, symmetric=True))


def extension_to_terg(n: int) -> Permutation:
    """Relabeling of extension indices ((x2 n + x3) n + x1) to Terg indices."""
    idx = np.arange(n ** 3)
    k, x1 = idx // n, idx % n
    x2, x3 = k // n, k % n
    return Permutation.from_array(x1 * n * n + x2 * n + x3)


# ========== Ter(R) for R a product of cyclic rings ==========

def build_ter_ring(moduli: Sequence[int]) -> LoopTable:
    """
    Ter(R) on R^3 with (x1+y1+(x2+y2)x3y3, x2+y2, x3+y3), R = Z_m1 x ... x Z_mk.
    Ring elements use mixed radix with the first factor most significant.
    """
    moduli = list(moduli)
    if not moduli or min(moduli) < 1 or prod(moduli) < 2:
        raise InvalidParameters(f'ring moduli {moduli} must be >= 1 with product >= 2')
    r = prod(moduli)
    comps = np.array(list(product(*(range(m) for m in moduli))), dtype=np.int64)
    mods = np.array(moduli, dtype=np.int64)
    weights = np.array([prod(moduli[i + 1:]) for i in range(len(moduli))], dtype=np.int64)

    def encode(c):
        return (c % mods) @ weights

    add = encode(comps[:, None, :] + comps[None, :, :])
    mul = encode(comps[:, None, :] * comps[None, :, :])

    idx = np.arange(r ** 3)
    x1, x2, x3 = (c[:, None] for c in (idx // (r * r), (idx // r) % r, idx % r))
    y1, y2, y3 = (c[None, :] for c in (idx // (r * r), (idx // r) % r, idx % r))
    s2 = add[x2, y2]
    first = add[add[x1, y1], mul[mul[s2, x3], y3]]
    table = first * r * r + s2 * r + add[x3, y3]
    return loops.from_rows(r ** 3, table)


# ========== Central Extensions ==========

def build_central_extension(spec: ExtensionSpec) -> LoopTable:
    """(x, a)(y, b) = (xy, a + b + theta(x, y)) over K x Z_m."""
    K, m = spec.K, spec.p
    n = K.order
    T = K.table.astype(np.int64)
    theta = spec.theta.values
    a = np.arange(m)
    table = (T[:, None, :, None] * m
             + (a[None, :, None, None] + a[None, None, None, :]
                + theta[:, None, :, None]) % m)
    return loops.from_rows(n * m, table.reshape(n * m, n * m))


def is_group_cocycle(K: LoopTable, mu: CocycleVector) -> bool:
    """mu(x,y) + mu(xy,z) = mu(y,z) + mu(x,yz) for all x, y, z."""
    T = K.table.astype(np.intp)
    v = mu.values
    x = np.arange(K.order)[:, None, None]
    y = np.arange(K.order)[None, :, None]
    z = np.arange(K.order)[None, None, :]
    lhs = v[x, y] + v[T[x, y], z]
    rhs = v[y, z] + v[x, T[y, z]]
    return bool(((lhs - rhs) % mu.p == 0).all())


def left_inner_maps(L: LoopTable) -> np.ndarray:
    """Array [x, y] -> L_{x,y} for all x, y."""
    return np.stack([structure._left_inner_block(L, x) for x in range(L.order)])


def add_group_cocycle(K: LoopTable, theta: CocycleVector, mu: CocycleVector) -> CocycleVector:
    """
    theta + mu, for mu a symmetric group cocycle over the group K.
    The two extensions are checked to share all left inner mappings.

    Raises:
        NotAbelianGroup: K is not a group
        NotGroupCocycle: mu is not a symmetric group cocycle
    """
    if not loops.is_associative(K):
        raise NotAbelianGroup(f'{K!r} is not a group')
    if not np.array_equal(mu.values, mu.values.T) or not is_group_cocycle(K, mu):
        raise NotGroupCocycle('mu is not a symmetric group cocycle')
    total = theta + mu
    before = build_central_extension(ExtensionSpec(K, theta.p, theta))
    after = build_central_extension(ExtensionSpec(K, theta.p, total))
    if not np.array_equal(left_inner_maps(before), left_inner_maps(after)):
        raise LoopError('left inner mappings changed after adding a group cocycle')
    return total


# ========== Middle Nucleus Parameters ==========

def middle_nucleus_feasible(k: int, l: int) -> bool:
    d = k - l
    return d >= 3 or (d >= 1 and l >= 2)


def achieve_parameters(k: int, l: int, order16: Optional[List[LoopTable]] = None) -> LoopTable:
    """
    A nonassociative commutative A-loop of exponent 2, order 2^k and middle
    nucleus of order 2^l.

    Args:
        order16: catalog of order-16 loops, needed when k - l = 2

    Raises:
        InvalidParameters: l <= 0 or k < l
        Infeasible: no such loop exists
        CatalogMissing: k - l = 2 and no order-16 exemplar is available
    """
    if l <= 0 or k < l:
        raise InvalidParameters(f'need k >= l > 0, got ({k}, {l})')
    if not middle_nucleus_feasible(k, l):
        raise Infeasible(f'no nonassociative commutative A-loop with parameters ({k}, {l})')
    d = k - l
    if d >= 3:
        core = build_trilinear_extension(symmetrize_13(newforms_form(d)))
        result = loops.direct_product(core, loops.elementary_abelian(l - 1))
    elif d == 1:
        result = build_qn(k - 1)
    else:
        exemplar = _order16_exemplar(order16)
        result = loops.direct_product(exemplar, loops.elementary_abelian(l - 2))
    size = structure.nucleus(result, 'middle').size
    if size != 2 ** l:
        raise LoopError(f'middle nucleus has order {size}, expected {2 ** l}')
    return result


def _order16_exemplar(order16: Optional[List[LoopTable]]) -> LoopTable:
    if not order16:
        raise CatalogMissing('the order-16 catalog is needed for k - l = 2; run enumerate --order 16')
    for L in order16:
        if (L.order == 16 and not loops.is_associative(L) and loops.exponent(L) == 2
                and structure.nucleus(L, 'middle').size == 4):
            return L
    raise CatalogMissing('order-16 catalog holds no exponent-2 loop with |N_mu| = 4')
