"""
Domain models for the A-loop engine.
Defines the value types shared by every module: Cayley tables, permutations,
construction parameters, cocycles and catalog records.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup as SymPermutationGroup

from errors import DegreeMismatch, InvalidParameters, NotBijection, OutOfRange


def table_dtype(n: int):
    """Smallest unsigned dtype holding indices 0..n-1."""
    return np.uint8 if n <= 256 else np.uint16


@dataclass(frozen=True, eq=False)
class LoopTable:
    """
    A finite loop given by its Cayley table.
    Elements are 0..n-1 and element 0 is the two-sided neutral element.
    Build instances through ``loops.from_rows`` so the loop axioms are checked.
    """
    table: np.ndarray
    _memo: Dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        raw = np.asarray(self.table)
        arr = np.ascontiguousarray(raw, dtype=table_dtype(raw.shape[0]))
        arr.flags.writeable = False
        object.__setattr__(self, 'table', arr)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def ldiv(self) -> np.ndarray:
        """ldiv[a, b] = a\\b, the solution of a*x = b."""
        n = self.order
        out = np.empty((n, n), dtype=self.table.dtype)
        rows = np.arange(n)[:, None]
        out[rows, self.table] = np.arange(n)[None, :]
        out.flags.writeable = False
        return out

    @cached_property
    def rdiv(self) -> np.ndarray:
        """rdiv[a, b] = a/b, the solution of x*b = a."""
        n = self.order
        out = np.empty((n, n), dtype=self.table.dtype)
        cols = np.arange(n)[None, :]
        out[self.table, cols] = np.arange(n)[:, None]
        out.flags.writeable = False
        return out

    def cached(self, key: str, compute: Callable[[], Any]) -> Any:
        """Memoize a derived invariant on this (immutable) table."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def key(self) -> bytes:
        """Canonical table bytes."""
        return self.table.tobytes()

    def __eq__(self, other):
        if not isinstance(other, LoopTable):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.key())

    def __getstate__(self):
        return {'table': np.array(self.table)}

    def __setstate__(self, state):
        object.__setattr__(self, '_memo', {})
        object.__setattr__(self, 'table', state['table'])
        self.__post_init__()

    def __repr__(self):
        return f'<LoopTable n={self.order}>'


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of 0..n-1 stored as its image list."""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise NotBijection(f'{images!r} is not a permutation')
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    @classmethod
    def from_array(cls, arr) -> 'Permutation':
        return cls(tuple(np.asarray(arr).tolist()))

    @property
    def degree(self) -> int:
        return len(self.images)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.intp)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: 'Permutation') -> 'Permutation':
        """x -> self(other(x))."""
        if other.degree != self.degree:
            raise DegreeMismatch(f'{self.degree} != {other.degree}')
        return Permutation.from_array(self.array[other.array])

    def inverse(self) -> 'Permutation':
        inv = np.empty(self.degree, dtype=np.intp)
        inv[self.array] = np.arange(self.degree)
        return Permutation.from_array(inv)

    def is_identity(self) -> bool:
        return self.images == tuple(range(self.degree))

    def __repr__(self):
        return f'<Permutation {list(self.images)}>'


class PermutationGroup:
    """
    Group generated by a list of permutations.
    Order and membership are delegated to sympy's stabilizer chain.
    """

    def __init__(self, generators: List[Permutation], degree: int):
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f'generator of degree {g.degree}, expected {degree}')
        self.generators = list(generators)
        self.degree = degree

    @cached_property
    def _group(self) -> SymPermutationGroup:
        gens = [SymPermutation(list(g.images)) for g in self.generators]
        if not gens:
            gens = [SymPermutation(list(range(self.degree)))]
        return SymPermutationGroup(gens)

    def order(self) -> int:
        return int(self._group.order())

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            raise DegreeMismatch(f'{perm.degree} != {self.degree}')
        return bool(self._group.contains(SymPermutation(list(perm.images))))

    def elements(self) -> List[Permutation]:
        """All elements (only sensible for small groups)."""
        return sorted(Permutation(tuple(p.array_form)) for p in self._group.generate())

    def __repr__(self):
        return f'<PermutationGroup degree={self.degree} gens={len(self.generators)}>'


@dataclass(frozen=True)
class SubloopHandle:
    """A subloop of ``parent`` given by its sorted member list."""
    parent: LoopTable
    members: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.intp)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def __repr__(self):
        return f'<SubloopHandle {self.size}/{self.parent.order}>'


@dataclass(frozen=True)
class GfSpec:
    """
    Abelian group G together with a bijection f, describing G(f).
    Optionally carries the decomposition f(x) = g(x) t.
    """
    G: LoopTable
    f: Permutation
    g: Optional[Permutation] = None
    t: Optional[int] = None

    def __repr__(self):
        return f'<GfSpec |G|={self.G.order} f={list(self.f.images)}>'


@dataclass(frozen=True, eq=False)
class TrilinearForm:
    """Trilinear form over GF(2)^n given by values[i, j, k] = g(e_i, e_j, e_k)."""
    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.uint8) & 1
        if vals.shape != (self.n, self.n, self.n):
            raise InvalidParameters(f'form values must have shape {(self.n,) * 3}')
        vals.flags.writeable = False
        object.__setattr__(self, 'values', vals)

    def __eq__(self, other):
        if not isinstance(other, TrilinearForm):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f'<TrilinearForm n={self.n} support={int(self.values.sum())}>'


@dataclass(frozen=True)
class TergParams:
    """Parameters (n, a, b) of the Terg(Z_n, a, b) family."""
    n: int
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameters(f'Terg needs n >= 2, got {self.n}')
        for name, value in (('a', self.a), ('b', self.b)):
            if not 0 <= value < self.n:
                raise OutOfRange(f'{name}={value} outside Z_{self.n}')

    def __repr__(self):
        return f'<TergParams Z_{self.n} a={self.a} b={self.b}>'


@dataclass(frozen=True, eq=False)
class CocycleVector:
    """
    A normalized map theta: K x K -> Z_p.
    Stored as the full n x n matrix with row and column 0 equal to zero.
    """
    n: int
    p: int
    values: np.ndarray
    symmetric: bool = False
    zero_diagonal: bool = False

    def __post_init__(self):
        vals = np.mod(np.asarray(self.values, dtype=np.int64), self.p)
        if vals.shape != (self.n, self.n):
            raise InvalidParameters(f'cocycle must be {self.n}x{self.n}')
        if vals[0, :].any() or vals[:, 0].any():
            raise InvalidParameters('cocycle is not normalized at the neutral element')
        vals.flags.writeable = False
        object.__setattr__(self, 'values', vals)

    @classmethod
    def zero(cls, n: int, p: int) -> 'CocycleVector':
        return cls(n, p, np.zeros((n, n), dtype=np.int64), True, True)

    @property
    def entries(self) -> np.ndarray:
        """The (n-1)^2 entries on non-neutral pairs."""
        return self.values[1:, 1:].reshape(-1)

    def __add__(self, other: 'CocycleVector') -> 'CocycleVector':
        if (self.n, self.p) != (other.n, other.p):
            raise DegreeMismatch('cocycles over different K or modulus')
        return CocycleVector(self.n, self.p, self.values + other.values,
                             self.symmetric and other.symmetric,
                             self.zero_diagonal and other.zero_diagonal)

    def __eq__(self, other):
        if not isinstance(other, CocycleVector):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f'<CocycleVector n={self.n} p={self.p} support={int(np.count_nonzero(self.values))}>'


@dataclass(frozen=True)
class ExtensionSpec:
    """Central extension K x_theta Z_p."""
    K: LoopTable
    p: int
    theta: CocycleVector

    def __post_init__(self):
        if self.theta.n != self.K.order or self.theta.p != self.p:
            raise DegreeMismatch('cocycle does not match K and modulus')

    def __repr__(self):
        return f'<ExtensionSpec |K|={self.K.order} p={self.p}>'


@dataclass(frozen=True)
class InvariantFingerprint:
    """Isomorphism invariants of a loop; isomorphic loops have equal fingerprints."""
    order: int
    commutative: bool
    order_histogram: Optional[Tuple[Tuple[int, int], ...]]
    left_nucleus: int
    middle_nucleus: int
    right_nucleus: int
    center: int
    squares: int
    associator_profile: Tuple[Tuple[int, int, int], ...]
    inn: Optional[int] = None
    mlt: Optional[int] = None
    aut: Optional[int] = None

    def sort_key(self) -> tuple:
        def num(v):
            return -1 if v is None else v
        hist = self.order_histogram or ()
        return (self.order, not self.commutative, self.left_nucleus, self.middle_nucleus,
                self.right_nucleus, self.center, self.squares, hist,
                num(self.inn), num(self.mlt), num(self.aut), self.associator_profile)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': self.order,
            'commutative': self.commutative,
            'order_histogram': (None if self.order_histogram is None
                                else {str(k): v for k, v in self.order_histogram}),
            'nuclei': {'left': self.left_nucleus, 'middle': self.middle_nucleus,
                       'right': self.right_nucleus, 'center': self.center},
            'squares': self.squares,
            'associator_profile': [list(t) for t in self.associator_profile],
            'inn': self.inn,
            'mlt': self.mlt,
            'aut': self.aut,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'InvariantFingerprint':
        hist = data.get('order_histogram')
        nuclei = data['nuclei']
        return cls(
            order=data['order'],
            commutative=data['commutative'],
            order_histogram=(None if hist is None
                             else tuple(sorted((int(k), v) for k, v in hist.items()))),
            left_nucleus=nuclei['left'],
            middle_nucleus=nuclei['middle'],
            right_nucleus=nuclei['right'],
            center=nuclei['center'],
            squares=data['squares'],
            associator_profile=tuple(tuple(t) for t in data.get('associator_profile', [])),
            inn=data.get('inn'),
            mlt=data.get('mlt'),
            aut=data.get('aut'),
        )


@dataclass(frozen=True)
class IsotopismTriple:
    """(alpha, beta, gamma) with gamma(x*y) = alpha(x) o beta(y)."""
    alpha: Permutation
    beta: Permutation
    gamma: Permutation


@dataclass
class CatalogRecord:
    """A classified loop as stored in a catalog."""
    id: str
    table: LoopTable
    fingerprint: InvariantFingerprint
    provenance: Dict[str, Any]
    flags: Dict[str, Any] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.table.order

    def sort_key(self) -> tuple:
        return (self.order, self.fingerprint.sort_key(), self.table.key())

    def __repr__(self):
        return f'<CatalogRecord {self.id}>'


@dataclass
class ClassificationReport:
    """Outcome of the cocycle pipeline for one base loop K."""
    base: str
    modulus: int
    dim_c: int
    dim_b: int
    dim_d: int
    orbits: int
    extensions: int
    classes: List[CatalogRecord] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'base': self.base,
            'modulus': self.modulus,
            'dim_C': self.dim_c,
            'dim_B': self.dim_b,
            'dim_D': self.dim_d,
            'orbits': self.orbits,
            'extensions': self.extensions,
            'classes': [r.id for r in self.classes],
        }

    def __repr__(self):
        return f'<ClassificationReport {self.base} dim D={self.dim_d} classes={len(self.classes)}>'


@dataclass(frozen=True)
class TableFile:
    """A table on disk in ALOOP v1 text or JSON format."""
    path: str
    format: str

    def __repr__(self):
        return f'<TableFile {self.path} ({self.format})>'


@dataclass
class ClaimVerdict:
    """One checked claim of a verification suite."""
    claim: str
    expected: Any
    computed: Any
    passed: Optional[bool] = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = self.expected == self.computed

    def to_dict(self) -> Dict[str, Any]:
        return {'claim': self.claim, 'expected': self.expected,
                'computed': self.computed, 'passed': self.passed}

    def __repr__(self):
        return f'<ClaimVerdict {self.claim}: {"ok" if self.passed else "FAILED"}>'
