"""
Business logic services for the A-loop engine.
All orchestration must live here, never in the CLI layer.
"""
import json
import logging
import os
from collections import Counter
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import cocycles
import constructions
import isomorphism
import loops
import storage
import structure
from errors import (
    Infeasible, InvalidParameters, LoopError, ParseError, UnsupportedOrder, UnsupportedPrime
)
from models import (
    ClaimVerdict, CocycleVector, ExtensionSpec, GfSpec, LoopTable, Permutation,
    TergParams, TrilinearForm
)

logger = logging.getLogger(__name__)

SUPPORTED_ORDERS = (8, 16, 24, 27, 32)
SUPPORTED_PRIMES = (2, 3, 5, 7)
CENTER_FILTERS = ('any', 'nontrivial')
FAMILIES = ('gf', 'qn', 'trilinear', 'terg', 'ter-ring', 'extension', 'middle-nucleus')


# ========== Construction Services ==========

def group_from_moduli(moduli: Sequence[int]) -> LoopTable:
    """Z_m1 x ... x Z_mk."""
    if not moduli:
        raise InvalidParameters('at least one cyclic factor is needed')
    return loops.direct_product_all([loops.cyclic_group(int(m)) for m in moduli])


def load_catalog_tables(directory: Optional[str], order: int) -> Optional[List[LoopTable]]:
    """Tables of a stored catalog, or None when it was never written."""
    if not directory:
        return None
    path = storage.catalog_path(directory, order)
    if not os.path.exists(path):
        return None
    return [rec.table for rec in storage.read_catalog(path)]


def read_cocycle(path: str) -> Tuple[int, np.ndarray]:
    """JSON file {"p": modulus, "theta": n x n matrix}."""
    try:
        with open(path, encoding='utf-8') as fh:
            data = json.load(fh)
        return int(data['p']), np.asarray(data['theta'], dtype=np.int64)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f'cocycle file needs "p" and "theta": {exc}')


def construct(family: str, n: int = None, a: int = 0, b: int = 0,
              moduli: Sequence[int] = (), images: Sequence[int] = (),
              k: int = None, l: int = None, base: str = None, theta: str = None,
              catalog_dir: str = None) -> Tuple[LoopTable, Dict[str, Any]]:
    """
    Build one loop of the given family.

    Returns:
        (table, provenance)

    Raises:
        InvalidParameters: unknown family or missing parameters
        LoopError: whatever the construction itself rejects
    """
    if family == 'gf':
        G = group_from_moduli(moduli)
        L = constructions.build_gf(GfSpec(G, Permutation(tuple(images))))
        return L, {'family': 'gf', 'moduli': list(moduli), 'f': list(images)}
    if family == 'qn':
        _require(n, 'n')
        return constructions.build_qn(n), {'family': 'qn', 'n': n}
    if family == 'trilinear':
        _require(n, 'n')
        form = constructions.symmetrize_13(constructions.newforms_form(n))
        return constructions.build_trilinear_extension(form), {'family': 'trilinear', 'n': n}
    if family == 'terg':
        _require(n, 'n')
        params = TergParams(n, a, b)
        return constructions.build_terg(params), {'family': 'terg', 'n': n, 'a': a, 'b': b}
    if family == 'ter-ring':
        return constructions.build_ter_ring(moduli), {'family': 'ter-ring', 'moduli': list(moduli)}
    if family == 'extension':
        _require(base, 'base')
        _require(theta, 'theta')
        K = storage.read_table(base)
        p, values = read_cocycle(theta)
        spec = ExtensionSpec(K, p, CocycleVector(K.order, p, values))
        return constructions.build_central_extension(spec), {'family': 'extension', 'base': base, 'p': p}
    if family == 'middle-nucleus':
        _require(k, 'k')
        _require(l, 'l')
        order16 = load_catalog_tables(catalog_dir, 16)
        L = constructions.achieve_parameters(k, l, order16=order16)
        return L, {'family': 'middle-nucleus', 'k': k, 'l': l}
    raise InvalidParameters(f'unknown family {family!r}; expected one of {", ".join(FAMILIES)}')


def _require(value, name: str):
    if value is None:
        raise InvalidParameters(f'--{name} is required for this family')


# ========== Analysis Services ==========

def analyze(L: LoopTable, mlt_limit: int = 128) -> Dict[str, Any]:
    """Structural report of a single loop."""
    commutative = loops.is_commutative(L)
    power_associative = loops.is_power_associative(L)
    report: Dict[str, Any] = {
        'order': L.order,
        'commutative': commutative,
        'associative': loops.is_associative(L),
        'power_associative': power_associative,
        'a_loop': structure.is_A_loop(L),
        'nuclei': {kind: structure.nucleus(L, kind).size
                   for kind in ('left', 'middle', 'right', 'center')},
        'exponent': loops.exponent(L) if power_associative else None,
        'order_histogram': ({str(k): v for k, v in loops.order_histogram(L).items()}
                            if power_associative else None),
        'inn': None,
        'mlt': None,
    }
    if L.order <= mlt_limit:
        report['inn'] = structure.inner_mapping_group(L).order()
        report['mlt'] = structure.mlt_order(L)
    report['center_of_prime_index'] = structure.has_center_of_prime_index(L)
    if L.order % 2 == 1 and commutative and report['a_loop']:
        try:
            report['bruck_left_bol'] = structure.is_left_bol(structure.bruck_associate(L))
        except LoopError as exc:
            logger.warning('Bruck associate failed: %s', exc)
            report['bruck_left_bol'] = False
    return report


def compare_isomorphic(L1: LoopTable, L2: LoopTable) -> Dict[str, Any]:
    perm = isomorphism.find_isomorphism(L1, L2)
    return {
        'isomorphic': perm is not None,
        'certificate': list(perm.images) if perm is not None else None,
    }


def compare_isotopic(L1: LoopTable, L2: LoopTable) -> Dict[str, Any]:
    return {'isotopic': isomorphism.are_isotopic(L1, L2)}


def convert(source: str, target: str, format: Optional[str] = None):
    """Re-encode a table file; normalization is applied on import."""
    L = storage.read_table(source)
    return storage.write_table(L, target, format=format)


# ========== Enumeration Services ==========

def _gf_entries(group_order: int) -> List[Tuple[LoopTable, Dict[str, Any]]]:
    """Nonassociative G(f) over every abelian group of the given order, deduplicated."""
    entries = []
    for i, G in enumerate(loops.abelian_groups(group_order)):
        for L in constructions.enumerate_gf_aloops(G):
            entries.append((L, {'family': 'gf', 'group': i, 'group_order': group_order}))
    keep = isomorphism.deduplicate([L for L, _ in entries])
    return [entries[i] for i in keep]


def _trivial_center_gf16() -> List[Tuple[LoopTable, Dict[str, Any]]]:
    """G(f) over GF(2)^3 with trivial center."""
    G = loops.elementary_abelian(3)
    return [(L, {'family': 'gf', 'group': 'GF(2)^3'})
            for L in constructions.enumerate_gf_aloops(G)
            if structure.nucleus(L, 'center').size == 1]


def _extension_entries(bases: Sequence[Tuple[str, LoopTable]], p: int, zero_diagonal: bool,
                       jobs: int, orbit_limit: int, mlt_limit: int):
    labels = [label for label, _ in bases]
    reports = cocycles.classify_extensions([K for _, K in bases], p, symmetric=True,
                                           zero_diagonal=zero_diagonal, jobs=jobs,
                                           orbit_limit=orbit_limit, mlt_limit=mlt_limit,
                                           labels=labels)
    entries = [(rec.table, rec.provenance) for rep in reports for rec in rep.classes]
    return entries, reports


def _order8_bases() -> List[Tuple[str, LoopTable]]:
    bases = [(f'8.group{i + 1}', G) for i, G in enumerate(loops.abelian_groups(8))]
    bases += [(f'8.loop{i + 1}', L) for i, (L, _) in enumerate(_gf_entries(4))]
    return bases


def enumerate_order(order: int, exponent: Optional[int] = None, jobs: int = 1,
                    catalog_dir: Optional[str] = None, orbit_limit: int = 2 ** 24,
                    mlt_limit: int = 128, center: str = 'any') -> Dict[str, Any]:
    """
    Classify the nonassociative commutative A-loops of a supported order
    (with nontrivial center for orders 16, 27 and 32).

    Args:
        center: 'any', or 'nontrivial' to keep only loops with |Z(Q)| > 1

    Returns:
        Dict with summary counts, ClassificationReports and CatalogRecords

    Raises:
        UnsupportedOrder: order outside 8, 16, 24, 27, 32
        InvalidParameters: unknown center filter
    """
    if order not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f'order {order} is not one of {SUPPORTED_ORDERS}')
    if center not in CENTER_FILTERS:
        raise InvalidParameters(f'unknown center filter {center!r}; expected one of {", ".join(CENTER_FILTERS)}')
    reports = []
    informational: Dict[str, Any] = {}

    if order == 8:
        entries = _gf_entries(4)
    elif order == 16:
        entries, reports = _extension_entries(_order8_bases(), 2, False, jobs, orbit_limit, mlt_limit)
        informational['trivial_center_gf'] = len(_trivial_center_gf16())
    elif order == 24:
        Z3 = loops.cyclic_group(3)
        base = enumerate_order(8, jobs=jobs, mlt_limit=mlt_limit)['records']
        entries = [(loops.direct_product(rec.table, Z3), {'family': 'direct-product', 'factors': [rec.id, 'Z3']})
                   for rec in base]
        keep = isomorphism.deduplicate([L for L, _ in entries])
        entries = [entries[i] for i in keep]
    elif order == 27:
        bases = [('Z9', loops.cyclic_group(9)),
                 ('Z3xZ3', loops.direct_product(loops.cyclic_group(3), loops.cyclic_group(3)))]
        entries, reports = _extension_entries(bases, 3, False, jobs, orbit_limit, mlt_limit)
    else:
        bases = order32_bases(catalog_dir, jobs, orbit_limit, mlt_limit)
        entries, reports = _extension_entries(bases, 2, True, jobs, orbit_limit, mlt_limit)
        informational['extensions_before_isomorphism'] = sum(r.extensions for r in reports)

    if exponent is not None:
        entries = [(L, prov) for L, prov in entries if loops.exponent(L) == exponent]
    if center == 'nontrivial':
        entries = [(L, prov) for L, prov in entries if structure.nucleus(L, 'center').size > 1]
    records = storage.build_catalog(entries, mlt_limit=mlt_limit, jobs=jobs)
    classes = isomorphism.isotopy_classes([rec.table for rec in records])
    summary = {
        'order': order,
        'exponent_filter': exponent,
        'center_filter': center,
        'classes': len(records),
        'isotopy_classes': len(set(classes)),
        'nontrivial_center': sum(1 for rec in records if rec.flags['center'] > 1),
        'exponents': {str(e): c for e, c in sorted(Counter(rec.flags['exponent'] for rec in records).items())},
        'abelian_groups': len(loops.abelian_groups(order)),
        'informational': informational,
    }
    path = None
    if catalog_dir:
        suffix = f'-exp{exponent}' if exponent is not None else ''
        if center == 'nontrivial':
            suffix += '-center'
        path = storage.write_catalog(records, storage.catalog_path(catalog_dir, order, suffix))
    logger.info('order %d: %d classes, %d isotopy classes', order, summary['classes'],
                summary['isotopy_classes'])
    return {'summary': summary, 'reports': reports, 'records': records, 'catalog': path}


def order32_bases(catalog_dir: Optional[str] = None, jobs: int = 1, orbit_limit: int = 2 ** 24,
                  mlt_limit: int = 128) -> List[Tuple[str, LoopTable]]:
    """Exponent-2 loops of order 16 (nonassociative ones and GF(2)^4)."""
    tables = load_catalog_tables(catalog_dir, 16)
    if tables is None:
        tables = [rec.table for rec in enumerate_order(16, jobs=jobs, catalog_dir=catalog_dir,
                                                       orbit_limit=orbit_limit,
                                                       mlt_limit=mlt_limit)['records']]
    bases = [(f'16.e2.{i + 1}', L) for i, L in enumerate(t for t in tables if loops.exponent(t) == 2)]
    bases += [(f'16.tc.{i + 1}', L) for i, (L, _) in enumerate(_trivial_center_gf16())
              if loops.exponent(L) == 2]
    bases.append(('GF(2)^4', loops.elementary_abelian(4)))
    return bases


# ========== Terg Classification ==========

def predicted_terg_partition(p: int) -> Optional[List[List[Tuple[int, int]]]]:
    """{(0,0)}, {(0,b)}, I_r, I_n for p != 3; None for p = 3."""
    if p == 3:
        return None
    residues = {a for a in range(1, p) if isomorphism.quadratic_residue(a, p)}
    parts = [[(0, 0)], [(0, b) for b in range(1, p)],
             [(a, b) for a in sorted(residues) for b in range(p)],
             [(a, b) for a in range(1, p) if a not in residues for b in range(p)]]
    return [part for part in parts if part]


def _isof_candidates(p: int):
    # (0, 1, 1) first: it settles Terg(p, a, b) = Terg(p, a, c) for a + c = b
    yield 0, 1, 1
    for A, B, C in product(range(p), range(p), range(1, p)):
        if (A, B, C) != (0, 1, 1):
            yield A, B, C


def classify_p3(p: int, mlt_limit: Optional[int] = None) -> Dict[str, Any]:
    """
    Isomorphism classes of Terg(Z_p, a, b) over all (a, b), with a certificate
    for every merge and |Mlt| and order histograms per class.

    Raises:
        UnsupportedPrime: p outside 2, 3, 5, 7
    """
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedPrime(f'p = {p} is not one of {SUPPORTED_PRIMES}')
    keys = [(a, b) for a in range(p) for b in range(p)]
    tables = {key: constructions.build_terg(TergParams(p, *key)) for key in keys}
    parent = {key: key for key in keys}

    def find(key):
        while parent[key] != key:
            parent[key] = parent[parent[key]]
            key = parent[key]
        return key

    def union(k1, k2):
        r1, r2 = find(k1), find(k2)
        parent[max(r1, r2)] = min(r1, r2)

    certificates = []
    for src, dst, _ in isomorphism.terg_scaling_isos(p):
        k1, k2 = (src.a, src.b), (dst.a, dst.b)
        if find(k1) != find(k2):
            union(k1, k2)
            kind = 'scaling' if src.a == 0 else 'residue'
            certificates.append({'from': list(k1), 'to': list(k2), 'map': kind})

    limit = mlt_limit if mlt_limit is not None else p ** 3
    full_fp: Dict[Tuple[int, int], Any] = {}

    def full(key):
        if key not in full_fp:
            full_fp[key] = isomorphism.fingerprint(tables[key], mlt_limit=limit)
        return full_fp[key]

    reps: List[Tuple[int, int]] = []
    for key in keys:
        root = find(key)
        if root != key:
            continue
        merged = False
        quick = isomorphism.quick_fingerprint(tables[key])
        candidates = [r for r in reps if isomorphism.quick_fingerprint(tables[r]) == quick]
        for rep in candidates:
            for A, B, C in _isof_candidates(p):
                if isomorphism.terg_iso_map(TergParams(p, *rep), TergParams(p, *key), A, B, C) is not None:
                    union(rep, key)
                    certificates.append({'from': list(rep), 'to': list(key), 'map': 'isof', 'ABC': [A, B, C]})
                    merged = True
                    break
            if merged:
                break
        if not merged:
            for rep in candidates:
                if full(rep) != full(key):
                    continue
                perm = isomorphism.find_isomorphism(tables[rep], tables[key])
                if perm is not None:
                    union(rep, key)
                    certificates.append({'from': list(rep), 'to': list(key), 'map': 'search',
                                         'images': list(perm.images)})
                    merged = True
                    break
        if not merged:
            reps.append(key)

    classes = []
    for rep in reps:
        members = sorted(key for key in keys if find(key) == find(rep))
        fp = full(rep)
        hist = dict(fp.order_histogram or ())
        classes.append({
            'members': [list(m) for m in members],
            'order_histogram': {str(o): c for o, c in sorted(hist.items())},
            'elements_of_order_p2': hist.get(p * p, 0),
            'mlt': fp.mlt,
        })
    logger.info('Terg(Z_%d, a, b): %d classes', p, len(classes))
    return {'p': p, 'classes': classes, 'certificates': certificates}


def terg_partition(report: Dict[str, Any]) -> List[List[Tuple[int, int]]]:
    return sorted(sorted(tuple(m) for m in c['members']) for c in report['classes'])


# ========== Verification Suites ==========

SUITES = ('quick', 'table1', 'p3', 'full')


def _check(verdicts: List[ClaimVerdict], claim: str, expected, computed):
    verdict = ClaimVerdict(claim, expected, computed)
    logger.info('%s: expected %s, computed %s -> %s', claim, expected, computed,
                'ok' if verdict.passed else 'FAILED')
    verdicts.append(verdict)
    return verdict


def _quick_checks(verdicts: List[ClaimVerdict]):
    result8 = enumerate_order(8)
    s8 = result8['summary']
    _check(verdicts, 'order 8: nonassociative classes', 4, s8['classes'])
    _check(verdicts, 'order 8: isotopy classes', 3, s8['isotopy_classes'])
    exp2 = [rec for rec in result8['records'] if rec.flags['exponent'] == 2]
    _check(verdicts, 'order 8: exponent-2 classes', 2, len(exp2))
    _check(verdicts, 'order 8: exponent-2 classes with nontrivial center', 1,
           sum(1 for rec in exp2 if rec.flags['center'] > 1))

    G = loops.elementary_abelian(3)
    family = constructions.enumerate_gf_aloops(G)
    _check(verdicts, 'G(f) over GF(2)^3: classes', 5, len(family))
    _check(verdicts, 'G(f) over GF(2)^3: nonidentity conjugacy classes of Aut', 5,
           len(conjugacy_classes(isomorphism.automorphisms(G))) - 1)

    for n in (2, 3):
        ok = all(constructions.terg_power(TergParams(n, a, b), x, m) == _iterated_power(n, a, b, x, m)
                 for a in range(n) for b in range(n)
                 for x in product(range(n), repeat=3) for m in range(n ** 3 + 1))
        _check(verdicts, f'Terg(Z_{n}): closed-form powers', True, ok)
    counts = [loops.order_histogram(constructions.build_terg(TergParams(3, a, b))).get(9, 0)
              for a, b in ((0, 0), (1, 0), (1, 1), (2, 0))]
    _check(verdicts, 'Terg(Z_3): elements of order 9', [12, 6, 24, 18], counts)

    _check(verdicts, 'overflow indicator is a group cocycle (n <= 12)', True,
           all(overflow_cocycle_identity(n) for n in range(2, 13)))
    _check(verdicts, 'dimension 2: every (1,3)-symmetric form has a symmetric slice', True,
           all(constructions.lowdimension_witness(form) is not None for form in symmetric_forms(2)))

    for n in (2, 3, 4, 5):
        Q = constructions.build_qn(n)
        props = [loops.exponent(Q), structure.nucleus(Q, 'center').size,
                 Q.order // structure.nucleus(Q, 'middle').size]
        _check(verdicts, f'Q_{n}: exponent, center, middle nucleus index', [2, 1, 2], props)
    for n in (3, 4):
        Q = constructions.build_trilinear_extension(
            constructions.symmetrize_13(constructions.newforms_form(n)))
        middle = structure.nucleus(Q, 'middle').members
        center = structure.nucleus(Q, 'center').members
        props = [structure.is_A_loop(Q), loops.exponent(Q), len(middle), middle == center]
        _check(verdicts, f'trilinear extension n={n}: A-loop, exponent, |N_mu|, N_mu = Z',
               [True, 2, 2, True], props)

    try:
        constructions.achieve_parameters(3, 1)
        infeasible = False
    except Infeasible:
        infeasible = True
    _check(verdicts, 'middle nucleus parameters (3, 1) infeasible', True, infeasible)
    for k, l in ((4, 3), (4, 1)):
        L = constructions.achieve_parameters(k, l)
        _check(verdicts, f'middle nucleus parameters ({k}, {l})', [2 ** k, 2 ** l],
               [L.order, structure.nucleus(L, 'middle').size])

    for a, b in product(range(2), repeat=2):
        K, mu, nu = constructions.terg_cocycle(TergParams(2, a, b))
        theta = constructions.add_group_cocycle(K, mu, nu)
        ext = constructions.build_central_extension(ExtensionSpec(K, 2, theta))
        relabel = constructions.extension_to_terg(2).array
        terg = constructions.build_terg(TergParams(2, a, b))
        _check(verdicts, f'Terg(Z_2,{a},{b}) as a central extension', True,
               bool(np.array_equal(relabel[ext.table], terg.table[np.ix_(relabel, relabel)])))


def _table1_checks(verdicts: List[ClaimVerdict], jobs: int, orbit_limit: int, mlt_limit: int,
                   catalog_dir: Optional[str]):
    catalogs = {}
    result16 = enumerate_order(16, jobs=jobs, orbit_limit=orbit_limit, mlt_limit=mlt_limit,
                               catalog_dir=catalog_dir)
    s16 = result16['summary']
    _check(verdicts, 'order 16 with nontrivial center: classes', 44, s16['classes'])
    _check(verdicts, 'order 16 with nontrivial center: isotopy classes', 37, s16['isotopy_classes'])
    _check(verdicts, 'order 16 with nontrivial center: exponent 2', 10,
           sum(1 for rec in result16['records'] if rec.flags['exponent'] == 2))
    _check(verdicts, 'order 16: trivial-center G(f) loops (informational)', 2,
           s16['informational']['trivial_center_gf'])
    catalogs[16] = result16['records']

    result24 = enumerate_order(24, jobs=jobs, mlt_limit=mlt_limit)
    s24 = result24['summary']
    _check(verdicts, 'order 24: classes, isotopy classes, nontrivial center', [4, 3, 4],
           [s24['classes'], s24['isotopy_classes'], s24['nontrivial_center']])
    catalogs[24] = result24['records']

    result27 = enumerate_order(27, jobs=jobs, orbit_limit=orbit_limit, mlt_limit=mlt_limit)
    s27 = result27['summary']
    _check(verdicts, 'order 27: classes', 4, s27['classes'])
    _check(verdicts, 'order 27: exponent 3', 0, s27['exponents'].get('3', 0))
    terg = classify_p3(3)
    reps = [constructions.build_terg(TergParams(3, *c['members'][0])) for c in terg['classes']]
    matched = sorted(
        next((j for j, rec in enumerate(result27['records'])
              if isomorphism.find_isomorphism(L, rec.table) is not None), -1)
        for L in reps)
    _check(verdicts, 'order 27: Terg classes match the cocycle classes', [0, 1, 2, 3], matched)
    catalogs[27] = result27['records']
    catalogs[8] = enumerate_order(8)['records']

    for order, expected in ((8, 3), (16, 5), (24, 3), (27, 3)):
        _check(verdicts, f'abelian groups of order {order}', expected, len(loops.abelian_groups(order)))
    prime_index = [rec.id for records in catalogs.values() for rec in records
                   if structure.has_center_of_prime_index(rec.table)]
    _check(verdicts, 'no catalog loop has a center of prime index', [], prime_index)


def _p3_checks(verdicts: List[ClaimVerdict], primes: Sequence[int]):
    for p in primes:
        report = classify_p3(p)
        predicted = predicted_terg_partition(p)
        if predicted is None:
            _check(verdicts, f'Terg(Z_{p}): classes', 4, len(report['classes']))
            _check(verdicts, f'Terg(Z_{p}): elements of order {p * p} per class', [6, 12, 18, 24],
                   sorted(c['elements_of_order_p2'] for c in report['classes']))
        else:
            _check(verdicts, f'Terg(Z_{p}): class partition',
                   sorted(sorted(part) for part in predicted), terg_partition(report))


def verify_claims(suite: str, jobs: int = 1, orbit_limit: int = 2 ** 24, mlt_limit: int = 128,
                  catalog_dir: Optional[str] = None) -> List[ClaimVerdict]:
    """
    Run a verification suite. Failures are part of the result, never raised.

    Raises:
        InvalidParameters: unknown suite
    """
    if suite not in SUITES:
        raise InvalidParameters(f'unknown suite {suite!r}; expected one of {", ".join(SUITES)}')
    verdicts: List[ClaimVerdict] = []
    if suite in ('quick', 'full'):
        _quick_checks(verdicts)
    if suite in ('table1', 'full'):
        _table1_checks(verdicts, jobs, orbit_limit, mlt_limit, catalog_dir)
    if suite == 'p3':
        _p3_checks(verdicts, (2, 3, 5))
    if suite == 'full':
        _p3_checks(verdicts, (2, 3, 5, 7))
        result32 = enumerate_order(32, jobs=jobs, orbit_limit=orbit_limit, mlt_limit=mlt_limit,
                                   catalog_dir=catalog_dir)
        s32 = result32['summary']
        _check(verdicts, 'order 32, exponent 2, nontrivial center: classes', 211, s32['classes'])
        _check(verdicts, 'order 32, exponent 2, nontrivial center: isotopy classes', 210,
               s32['isotopy_classes'])
        # the count before isomorphism depends on the chosen complement
        verdicts.append(ClaimVerdict('order 32: extensions before isomorphism (informational)', 355,
                                     s32['informational']['extensions_before_isomorphism'],
                                     passed=True))
    return verdicts


# ========== Verification Helpers ==========

def _iterated_power(n: int, a: int, b: int, x: Tuple[int, int, int], m: int) -> Tuple[int, int, int]:
    L = _terg_cache(n, a, b)
    idx = loops.power(L, constructions.terg_index(n, x), m)
    return constructions.terg_triple(n, idx)


_TERG_TABLES: Dict[Tuple[int, int, int], LoopTable] = {}


def _terg_cache(n: int, a: int, b: int) -> LoopTable:
    key = (n, a, b)
    if key not in _TERG_TABLES:
        _TERG_TABLES[key] = constructions.build_terg(TergParams(n, a, b))
    return _TERG_TABLES[key]


def overflow_cocycle_identity(n: int) -> bool:
    """(x,y)_n + (x+y,z)_n = (y,z)_n + (x,y+z)_n for all x, y, z in Z_n."""
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing='ij')
    lhs = (x + y >= n).astype(int) + ((x + y) % n + z >= n)
    rhs = (y + z >= n).astype(int) + (x + (y + z) % n >= n)
    return bool(np.array_equal(lhs, rhs))


def symmetric_forms(n: int) -> List[TrilinearForm]:
    """All (1,3)-symmetric trilinear forms on GF(2)^n."""
    forms = []
    for bits in product((0, 1), repeat=n ** 3):
        values = np.array(bits, dtype=np.uint8).reshape(n, n, n)
        if np.array_equal(values, values.transpose(2, 1, 0)):
            forms.append(TrilinearForm(n, values))
    return forms


def conjugacy_classes(group: Sequence[Permutation]) -> List[List[Permutation]]:
    """Conjugacy classes of a small permutation group given by its elements."""
    remaining = set(group)
    classes = []
    for g in sorted(group):
        if g not in remaining:
            continue
        cls = sorted({h.compose(g).compose(h.inverse()) for h in group})
        remaining.difference_update(cls)
        classes.append(cls)
    return classes
