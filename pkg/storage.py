"""
Table and catalog persistence.

ALOOP v1 text:
    ALOOP v1
    n=<order>
    <n lines of n space-separated 0-based entries>
Lines starting with '#' are comments. JSON tables carry the rows plus a
fingerprint block. Catalogs are JSON lines, one record per line, sorted by
(order, fingerprint, table bytes).
"""
import json
import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import isomorphism
import loops
import structure
from errors import LoopError, ParseError
from extensions import worker_pool
from models import CatalogRecord, InvariantFingerprint, LoopTable, TableFile

logger = logging.getLogger(__name__)

HEADER = 'ALOOP v1'


# ========== ALOOP v1 ==========

def parse_aloop(text: str) -> LoopTable:
    """
    Parse ALOOP v1 text.

    Raises:
        ParseError: malformed header, row, entry, or a repeated value
                    (reported with its line and column)
    """
    lines = [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]
    lines = [(no, line) for no, line in lines if line and not line.startswith('#')]
    if not lines or lines[0][1] != HEADER:
        raise ParseError(f'missing "{HEADER}" header', line=lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith('n='):
        raise ParseError('missing "n=<order>" line', line=lines[1][0] if len(lines) > 1 else None)
    try:
        n = int(lines[1][1][2:])
    except ValueError:
        raise ParseError(f'bad order {lines[1][1][2:]!r}', line=lines[1][0], column=3)
    if n < 1:
        raise ParseError('order must be positive', line=lines[1][0], column=3)

    body = lines[2:]
    if len(body) != n:
        raise ParseError(f'expected {n} rows, found {len(body)}',
                         line=body[-1][0] if body else lines[1][0])
    rows = []
    for no, line in body:
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f'expected {n} entries, found {len(tokens)}', line=no)
        row = []
        for col, token in enumerate(tokens, start=1):
            try:
                value = int(token)
            except ValueError:
                raise ParseError(f'bad entry {token!r}', line=no, column=col)
            if not 0 <= value < n:
                raise ParseError(f'entry {value} outside 0..{n - 1}', line=no, column=col)
            row.append(value)
        rows.append(row)

    arr = np.array(rows, dtype=np.int64)
    _check_latin(arr, [no for no, _ in body])
    try:
        return loops.from_rows(n, arr)
    except LoopError as exc:
        raise ParseError(str(exc), line=body[0][0])


def _check_latin(arr: np.ndarray, line_numbers: Sequence[int]) -> None:
    """Report the first repeated value by (line, column)."""
    n = arr.shape[0]
    for r in range(n):
        seen = {}
        for c in range(n):
            v = int(arr[r, c])
            if v in seen:
                raise ParseError(f'value {v} repeats in row {r} (columns {seen[v]} and {c})',
                                 line=line_numbers[r], column=c + 1)
            seen[v] = c
    for c in range(n):
        seen = {}
        for r in range(n):
            v = int(arr[r, c])
            if v in seen:
                raise ParseError(f'value {v} repeats in column {c} (rows {seen[v]} and {r})',
                                 line=line_numbers[r], column=c + 1)
            seen[v] = r


def format_aloop(L: LoopTable, comments: Iterable[str] = ()) -> str:
    out = [HEADER]
    out.extend(f'# {c}' for c in comments)
    out.append(f'n={L.order}')
    out.extend(' '.join(str(int(v)) for v in row) for row in L.table)
    return '\n'.join(out) + '\n'


# ========== JSON ==========

def table_to_dict(L: LoopTable, fingerprint: Optional[InvariantFingerprint] = None) -> Dict[str, Any]:
    fp = fingerprint or isomorphism.quick_fingerprint(L)
    return {
        'format': HEADER,
        'order': L.order,
        'table': L.table.tolist(),
        'fingerprint': fp.to_dict(),
    }


def table_from_dict(data: Dict[str, Any]) -> LoopTable:
    try:
        n = int(data['order'])
        rows = data['table']
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f'JSON table is missing {exc}')
    arr = np.asarray(rows, dtype=np.int64)
    if arr.shape != (n, n):
        raise ParseError(f'JSON table has shape {arr.shape}, expected ({n}, {n})')
    _check_latin(arr, list(range(1, n + 1)))
    try:
        return loops.from_rows(n, arr)
    except LoopError as exc:
        raise ParseError(str(exc))


def detect_format(path: str) -> str:
    return 'json' if path.lower().endswith('.json') else 'aloop'


def read_table(path: str) -> LoopTable:
    with open(path, encoding='utf-8') as fh:
        text = fh.read()
    if detect_format(path) == 'json':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, column=exc.colno)
        return table_from_dict(data)
    return parse_aloop(text)


def write_table(L: LoopTable, path: str, format: Optional[str] = None,
                fingerprint: Optional[InvariantFingerprint] = None) -> TableFile:
    format = format or detect_format(path)
    if format == 'json':
        text = json.dumps(table_to_dict(L, fingerprint), indent=2) + '\n'
    else:
        text = format_aloop(L)
    with open(path, 'w', encoding='utf-8') as fh:
        fh.write(text)
    logger.debug('wrote %r to %s (%s)', L, path, format)
    return TableFile(path=path, format=format)


# ========== Catalogs ==========

def _fingerprint(args: Tuple[LoopTable, int]) -> Tuple[InvariantFingerprint, Dict[str, Any]]:
    L, mlt_limit = args
    fp = isomorphism.fingerprint(L, mlt_limit=mlt_limit)
    flags = {
        'nonassociative': not loops.is_associative(L),
        'exponent': loops.exponent(L),
        'center': structure.nucleus(L, 'center').size,
    }
    return fp, flags


def build_catalog(entries: Sequence[Tuple[LoopTable, Dict[str, Any]]], mlt_limit: int = 128,
                  jobs: int = 1) -> List[CatalogRecord]:
    """
    Fingerprint the given pairwise non-isomorphic loops, sort them and assign ids
    '<order>.<k>' in sort order.
    """
    with worker_pool(jobs) as pool:
        computed = pool.map(_fingerprint, [(L, mlt_limit) for L, _ in entries])
    records = [CatalogRecord(id='', table=L, fingerprint=fp, provenance=dict(prov), flags=flags)
               for (L, prov), (fp, flags) in zip(entries, computed)]
    records.sort(key=CatalogRecord.sort_key)
    counters: Dict[int, int] = {}
    for rec in records:
        counters[rec.order] = counters.get(rec.order, 0) + 1
        rec.id = f'{rec.order}.{counters[rec.order]}'
    return records


def record_to_dict(rec: CatalogRecord) -> Dict[str, Any]:
    return {
        'id': rec.id,
        'order': rec.order,
        'table': rec.table.table.tolist(),
        'fingerprint': rec.fingerprint.to_dict(),
        'provenance': rec.provenance,
        'flags': rec.flags,
    }


def record_from_dict(data: Dict[str, Any]) -> CatalogRecord:
    return CatalogRecord(
        id=data['id'],
        table=table_from_dict(data),
        fingerprint=InvariantFingerprint.from_dict(data['fingerprint']),
        provenance=data.get('provenance', {}),
        flags=data.get('flags', {}),
    )


def write_catalog(records: Sequence[CatalogRecord], path: str) -> str:
    records = sorted(records, key=CatalogRecord.sort_key)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as fh:
        for rec in records:
            fh.write(json.dumps(record_to_dict(rec), sort_keys=True) + '\n')
    logger.info('catalog of %d records written to %s', len(records), path)
    return path


def read_catalog(path: str) -> List[CatalogRecord]:
    records = []
    with open(path, encoding='utf-8') as fh:
        for no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                records.append(record_from_dict(json.loads(line)))
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, line=no, column=exc.colno)
            except KeyError as exc:
                raise ParseError(f'record is missing {exc}', line=no)
            except ParseError as exc:
                raise ParseError(exc.args[0], line=no)
    return records


def catalog_path(directory: str, order: int, suffix: str = '') -> str:
    return os.path.join(directory, f'order{order}{suffix}.jsonl')
