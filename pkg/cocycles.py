"""
Cocycle solver: the commutative A-loop cocycle identity as a linear system
over GF(p), coboundaries, the complement D, the Aut(K) action on D, orbit
representatives and classification of the resulting central extensions.

In additive notation, with R = R_{y,z} the right inner mapping of K and
    F(x) = theta(xy, z) + theta(x, y) - theta(R x, yz) - theta(y, z),
a symmetric normalized theta gives a commutative A-loop K x_theta Z_p iff
    F(x) + F(x') - F(xx') + theta(R x, R x') - theta(x, x') = 0
for all x, y, z, x'.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

import constructions
import isomorphism
import linalg
import loops
import storage
import structure
from errors import InvalidParameters, LoopError, NotALoop, OrbitSpaceTooLarge
from extensions import worker_pool
from models import ClassificationReport, CocycleVector, ExtensionSpec, LoopTable, Permutation

logger = logging.getLogger(__name__)


# ========== Variable Layout ==========

@dataclass(frozen=True, eq=False)
class CocycleLayout:
    """
    Which pairs (u, v) carry a free variable.
    index[u, v] is the variable of theta(u, v), or -1 when theta(u, v) = 0.
    """
    n: int
    p: int
    symmetric: bool
    zero_diagonal: bool
    index: np.ndarray
    size: int

    @classmethod
    def build(cls, n: int, p: int, symmetric: bool = True, zero_diagonal: bool = False):
        index = np.full((n, n), -1, dtype=np.int64)
        count = 0
        for u in range(1, n):
            for v in range(u if symmetric else 1, n):
                if zero_diagonal and u == v:
                    continue
                index[u, v] = count
                if symmetric:
                    index[v, u] = count
                count += 1
        index.flags.writeable = False
        return cls(n, p, symmetric, zero_diagonal, index, count)

    def to_cocycle(self, vector: np.ndarray) -> CocycleVector:
        padded = np.append(np.asarray(vector, dtype=np.int64), 0)
        return CocycleVector(self.n, self.p, padded[self.index], self.symmetric, self.zero_diagonal)

    def encode(self, values: np.ndarray) -> np.ndarray:
        """Layout vector of a full n x n cocycle matrix."""
        values = np.mod(np.asarray(values, dtype=np.int64), self.p)
        if values[self.index < 0].any():
            raise InvalidParameters('cocycle is nonzero on a pair fixed to zero')
        out = np.zeros(self.size, dtype=np.int64)
        mask = self.index >= 0
        out[self.index[mask]] = values[mask]
        if not np.array_equal(out[self.index[mask]], values[mask]):
            raise InvalidParameters('cocycle does not have the layout symmetry')
        return out


@dataclass(frozen=True, eq=False)
class CocycleBasis:
    """Echelonized basis rows in a given layout."""
    layout: CocycleLayout
    rows: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])

    def vectors(self) -> List[CocycleVector]:
        return [self.layout.to_cocycle(r) for r in self.rows]


# ========== Cocycle Space ==========

def _equation_block(K: LoopTable, layout: CocycleLayout, y: int, z: int) -> np.ndarray:
    """Rows over (x, x') of the cocycle identity for fixed (y, z)."""
    n = K.order
    T = K.table.astype(np.intp)
    RD = K.rdiv.astype(np.intp)
    VI = np.where(layout.index < 0, layout.size, layout.index)
    yz = T[y, z]
    R = RD[T[T[:, y], z], yz]                 # R_{y,z}(x)
    x = np.repeat(np.arange(n), n)
    xp = np.tile(np.arange(n), n)
    xx = T[x, xp]
    rows = np.arange(n * n)
    block = np.zeros((n * n, layout.size + 1), dtype=np.int64)

    def term(u, v, sign):
        np.add.at(block, (rows, VI[u, v]), sign)

    for w, s in ((x, 1), (xp, 1), (xx, -1)):
        term(T[w, y], np.full_like(w, z), s)
        term(w, np.full_like(w, y), s)
        term(R[w], np.full_like(w, yz), -s)
        term(np.full_like(w, y), np.full_like(w, z), -s)
    term(R[x], R[xp], 1)
    term(x, xp, -1)
    return np.mod(block[:, :-1], layout.p)


def cocycle_system(K: LoopTable, layout: CocycleLayout) -> np.ndarray:
    """
    The linear system in reduced row echelon form. Blocks are folded into the
    running echelon form whenever the pending rows outgrow it.
    """
    reduced = np.zeros((0, layout.size), dtype=np.uint8)
    pending = []
    count = 0
    threshold = max(4 * layout.size, 4096)
    for y in range(1, K.order):
        for z in range(1, K.order):
            block = _equation_block(K, layout, y, z)
            block = block[block.any(axis=1)]
            if not block.size:
                continue
            block = np.unique(block, axis=0)
            pending.append(block)
            count += len(block)
            if count > threshold:
                reduced = linalg.row_reduce(np.vstack([reduced] + pending), layout.p).matrix
                pending, count = [], 0
    if pending:
        reduced = linalg.row_reduce(np.vstack([reduced] + pending), layout.p).matrix
    return reduced


def cocycle_space(K: LoopTable, p: int, symmetric: bool = True,
                  zero_diagonal: bool = False) -> CocycleBasis:
    """
    Basis of the cocycles theta over K with values in Z_p whose extension is
    a commutative A-loop.

    Raises:
        NotALoop: K is not a commutative A-loop
    """
    if not (loops.is_commutative(K) and structure.is_A_loop(K)):
        raise NotALoop(f'{K!r} is not a commutative A-loop')
    layout = CocycleLayout.build(K.order, p, symmetric, zero_diagonal)
    system = cocycle_system(K, layout)
    if len(system):
        basis = linalg.nullspace(system, p)
    else:
        basis = np.eye(layout.size, dtype=np.uint8)
    rows = linalg.row_reduce(basis, p).matrix if len(basis) else basis
    logger.debug('cocycle space over %r, p=%d: %d equations, dim %d',
                 K, p, len(system), len(rows))
    return CocycleBasis(layout, rows.astype(np.int64))


def satisfies_cocycle_identity(K: LoopTable, theta: CocycleVector) -> bool:
    """Direct evaluation of the identity for a single theta."""
    layout = CocycleLayout.build(K.order, theta.p, symmetric=False)
    vector = layout.encode(theta.values)
    for y in range(1, K.order):
        for z in range(1, K.order):
            block = _equation_block(K, layout, y, z)
            if ((block @ vector) % theta.p).any():
                return False
    return True


# ========== Coboundaries ==========

def coboundary_matrix(K: LoopTable, u: int) -> np.ndarray:
    """delta tau_u(x, y) = [xy = u] - [x = u] - [y = u]."""
    T = K.table
    idx = np.arange(K.order)
    return ((T == u).astype(np.int64) - (idx[:, None] == u) - (idx[None, :] == u))


def coboundary_space(K: LoopTable, p: int, layout: Optional[CocycleLayout] = None) -> CocycleBasis:
    """Span of delta tau for tau with tau(1) = 0, echelonized."""
    if layout is None:
        layout = CocycleLayout.build(K.order, p)
    rows = np.array([layout.encode(coboundary_matrix(K, u)) for u in range(1, K.order)],
                    dtype=np.int64).reshape(-1, layout.size)
    reduced = linalg.row_reduce(rows, p)
    return CocycleBasis(layout, reduced.matrix.astype(np.int64))


def group_cocycle_space(K: LoopTable, p: int, symmetric: bool = True) -> CocycleBasis:
    """theta(x,y) + theta(xy,z) = theta(y,z) + theta(x,yz)."""
    layout = CocycleLayout.build(K.order, p, symmetric)
    n = K.order
    T = K.table.astype(np.intp)
    VI = np.where(layout.index < 0, layout.size, layout.index)
    x, y, z = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing='ij'))
    rows = np.arange(x.size)
    system = np.zeros((x.size, layout.size + 1), dtype=np.int64)
    np.add.at(system, (rows, VI[x, y]), 1)
    np.add.at(system, (rows, VI[T[x, y], z]), 1)
    np.add.at(system, (rows, VI[y, z]), -1)
    np.add.at(system, (rows, VI[x, T[y, z]]), -1)
    system = np.unique(np.mod(system[:, :-1], p), axis=0)
    basis = linalg.nullspace(system, p)
    rows_ = linalg.row_reduce(basis, p).matrix if len(basis) else basis
    return CocycleBasis(layout, rows_.astype(np.int64))


def is_in_span(basis: CocycleBasis, theta: CocycleVector) -> bool:
    return linalg.in_span(basis.rows, basis.layout.encode(theta.values), basis.layout.p)


# ========== Aut(K) Action and Orbits ==========

def act(theta: CocycleVector, phi: Permutation) -> CocycleVector:
    """theta_phi(x, y) = theta(phi(x), phi(y))."""
    P = phi.array
    return CocycleVector(theta.n, theta.p, theta.values[np.ix_(P, P)],
                         theta.symmetric, theta.zero_diagonal)


def _action_matrix(layout: CocycleLayout, full: np.ndarray, dim_b: int, phi: Permutation) -> np.ndarray:
    """Matrix of the induced action on D in row convention: coords @ M."""
    D = full[dim_b:]
    images = np.array([layout.encode(layout.to_cocycle(d).values[np.ix_(phi.array, phi.array)])
                       for d in D], dtype=np.int64).reshape(len(D), layout.size)
    coords = linalg.coordinates(full, images, layout.p)
    return coords[:, dim_b:].astype(np.int64)


def _image_indices(M: np.ndarray, p: int) -> np.ndarray:
    """img[v] = index of (v @ M) for every index v = sum c_i p^i."""
    d = M.shape[0]
    if d == 0:
        return np.zeros(1, dtype=np.int64)
    weights = p ** np.arange(d, dtype=np.int64)
    codes = (M % p) @ weights
    if p == 2:
        img = np.zeros(1 << d, dtype=np.int64)
        for i in range(d):
            img[1 << i: 2 << i] = img[:1 << i] ^ codes[i]
        return img
    total = p ** d
    img = np.empty(total, dtype=np.int64)
    step = 1 << 18
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        img[start:start + idx.size] = ((digits @ M) % p) @ weights
    return img


def _orbit_labels(images: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Smallest index in each orbit, by min-label propagation with pointer jumping."""
    lab = np.arange(size, dtype=np.int64)
    inverses = []
    for img in images:
        inv = np.empty_like(img)
        inv[img] = np.arange(size)
        inverses.append(inv)
    while True:
        before = lab.copy()
        for img, inv in zip(images, inverses):
            lab = np.minimum(lab, lab[img])
            lab = np.minimum(lab, lab[inv])
        while True:
            jumped = lab[lab]
            if np.array_equal(jumped, lab):
                break
            lab = jumped
        if np.array_equal(lab, before):
            return lab


@dataclass
class OrbitResult:
    complement: np.ndarray
    representatives: np.ndarray
    orbit_sizes: np.ndarray


def complement_and_orbits(C: CocycleBasis, B: CocycleBasis, generators: Sequence[Permutation],
                          orbit_limit: int = 2 ** 24) -> OrbitResult:
    """
    Complement D of B in C (greedy in C's basis order) and one representative
    per orbit of Aut(K) on D, as layout vectors.

    Raises:
        OrbitSpaceTooLarge: |D| exceeds orbit_limit
    """
    p = C.layout.p
    for row in B.rows:
        if not linalg.in_span(C.rows, row, p):
            raise LoopError('coboundary outside the cocycle space')
    D = linalg.extend_basis(B.rows, C.rows, p).astype(np.int64)
    dim_d = len(D)
    if p ** dim_d > orbit_limit:
        raise OrbitSpaceTooLarge(f'|D| = {p}^{dim_d} exceeds {orbit_limit}')
    full = np.vstack([B.rows.reshape(-1, C.layout.size), D]).astype(np.int64)
    images = [_image_indices(_action_matrix(C.layout, full, B.dim, phi), p)
              for phi in generators if not phi.is_identity()]
    size = p ** dim_d
    lab = _orbit_labels(images, size)
    reps = np.flatnonzero(lab == np.arange(size))
    sizes = np.bincount(lab, minlength=size)[reps]
    weights = p ** np.arange(dim_d, dtype=np.int64)
    digits = (reps[:, None] // weights[None, :]) % p if dim_d else np.zeros((len(reps), 0), dtype=np.int64)
    vectors = (digits @ D) % p if dim_d else np.zeros((len(reps), C.layout.size), dtype=np.int64)
    return OrbitResult(complement=D, representatives=vectors, orbit_sizes=sizes)


# ========== Classification ==========

def _build_extension(args: Tuple[LoopTable, int, np.ndarray]):
    K, p, values = args
    theta = CocycleVector(K.order, p, values)
    L = constructions.build_central_extension(ExtensionSpec(K, p, theta))
    associative = loops.is_associative(L)
    quick = None if associative else isomorphism.quick_fingerprint(L)
    return L, associative, quick


def classify_extensions(K_list: Sequence[LoopTable], p: int, symmetric: bool = True,
                        zero_diagonal: bool = False, jobs: int = 1,
                        orbit_limit: int = 2 ** 24, mlt_limit: int = 128,
                        labels: Optional[Sequence[str]] = None) -> List[ClassificationReport]:
    """
    Classify the nonassociative commutative A-loops K x_theta Z_p over all K.

    Classes are deduplicated across the whole list; each report carries the
    records first discovered over its base loop.
    """
    labels = list(labels) if labels is not None else [f'K{i}' for i in range(len(K_list))]
    reports = []
    found: List[Tuple[LoopTable, dict]] = []
    owner: List[int] = []
    buckets = {}
    for r, (label, K) in enumerate(zip(labels, K_list)):
        C = cocycle_space(K, p, symmetric, zero_diagonal)
        B = coboundary_space(K, p, C.layout)
        gens = structure.automorphism_group(K).generators
        orbits = complement_and_orbits(C, B, gens, orbit_limit)
        with worker_pool(jobs) as pool:
            built = pool.map(_build_extension,
                             [(K, p, C.layout.to_cocycle(v).values) for v in orbits.representatives])
        report = ClassificationReport(base=label, modulus=p, dim_c=C.dim, dim_b=B.dim,
                                      dim_d=len(orbits.complement),
                                      orbits=len(orbits.representatives), extensions=0)
        for k, (L, associative, quick) in enumerate(built):
            if associative:
                continue
            report.extensions += 1
            reps = buckets.setdefault(quick, [])
            if any(isomorphism.find_isomorphism(found[j][0], L) is not None for j in reps):
                continue
            reps.append(len(found))
            found.append((L, {'family': 'extension', 'base': label, 'modulus': p, 'orbit': k}))
            owner.append(r)
        logger.info('%s: dim C=%d dim B=%d dim D=%d orbits=%d nonassociative=%d classes so far=%d',
                    label, report.dim_c, report.dim_b, report.dim_d, report.orbits,
                    report.extensions, len(found))
        reports.append(report)

    records = storage.build_catalog(found, mlt_limit=mlt_limit, jobs=jobs)
    by_table = {rec.table.key(): rec for rec in records}
    for (L, _), r in zip(found, owner):
        reports[r].classes.append(by_table[L.key()])
    return reports
