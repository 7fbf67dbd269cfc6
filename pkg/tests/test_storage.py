import json

import pytest

import storage
from errors import ParseError


def test_aloop_text_round_trip(q2):
    text = storage.format_aloop(q2, comments=['Q_2'])
    assert text.splitlines()[:3] == ['ALOOP v1', '# Q_2', 'n=8']
    assert storage.parse_aloop(text) == q2


def test_parse_skips_comments_and_blank_lines():
    text = '# header comment\nALOOP v1\n\nn=2\n# rows\n0 1\n1 0\n'
    L = storage.parse_aloop(text)
    assert L.table.tolist() == [[0, 1], [1, 0]]


def test_parse_relabels_neutral():
    L = storage.parse_aloop('ALOOP v1\nn=2\n1 0\n0 1\n')
    assert L.table.tolist() == [[0, 1], [1, 0]]


def test_parse_reports_repeat_position():
    with pytest.raises(ParseError) as info:
        storage.parse_aloop('ALOOP v1\nn=2\n0 1\n0 1\n')
    assert (info.value.line, info.value.column) == (4, 1)


def test_parse_reports_bad_entries():
    with pytest.raises(ParseError) as info:
        storage.parse_aloop('ALOOP v1\nn=2\n0 x\n1 0\n')
    assert (info.value.line, info.value.column) == (3, 2)
    with pytest.raises(ParseError) as info:
        storage.parse_aloop('ALOOP v1\nn=2\n0 1\n1 2\n')
    assert (info.value.line, info.value.column) == (4, 2)


def test_parse_reports_structure_errors():
    with pytest.raises(ParseError) as info:
        storage.parse_aloop('LOOP\nn=2\n0 1\n1 0\n')
    assert info.value.line == 1
    with pytest.raises(ParseError):
        storage.parse_aloop('ALOOP v1\nn=3\n0 1 2\n1 2 0\n')
    with pytest.raises(ParseError):
        storage.parse_aloop('ALOOP v1\nn=2\n0 1 1\n1 0\n')
    with pytest.raises(ParseError):
        storage.parse_aloop('ALOOP v1\nsize=2\n0 1\n1 0\n')


def test_parse_rejects_table_without_neutral():
    with pytest.raises(ParseError):
        storage.parse_aloop('ALOOP v1\nn=3\n0 2 1\n2 1 0\n1 0 2\n')


def test_json_table_file(tmp_path, gf_klein_swap):
    path = tmp_path / 'loop.json'
    written = storage.write_table(gf_klein_swap, str(path))
    assert written.format == 'json'
    data = json.loads(path.read_text())
    assert data['order'] == 8
    assert data['fingerprint']['nuclei']['center'] == 2
    assert storage.read_table(str(path)) == gf_klein_swap


def test_text_table_file(tmp_path, q2):
    path = tmp_path / 'loop.aloop'
    assert storage.write_table(q2, str(path)).format == 'aloop'
    assert path.read_text().startswith('ALOOP v1\n')
    assert storage.read_table(str(path)) == q2


def test_bad_json_table(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{"order": 2, "table": [[0, 1], [0, 1]]}')
    with pytest.raises(ParseError):
        storage.read_table(str(path))
    path.write_text('{"order": 2')
    with pytest.raises(ParseError):
        storage.read_table(str(path))


def test_catalog_ids_and_round_trip(tmp_path, q2, gf_klein_swap, gf_klein_ab):
    entries = [(L, {'family': 'gf', 'index': i})
               for i, L in enumerate((gf_klein_ab, q2, gf_klein_swap))]
    records = storage.build_catalog(entries, mlt_limit=8)
    assert [rec.id for rec in records] == ['8.1', '8.2', '8.3']
    assert records == sorted(records, key=lambda r: r.sort_key())
    assert all(rec.fingerprint.mlt is not None for rec in records)
    assert {rec.flags['exponent'] for rec in records} == {2, 4}

    path = storage.catalog_path(str(tmp_path / 'catalog'), 8)
    assert path.endswith('order8.jsonl')
    storage.write_catalog(records, path)
    loaded = storage.read_catalog(path)
    assert [rec.id for rec in loaded] == ['8.1', '8.2', '8.3']
    assert [rec.table for rec in loaded] == [rec.table for rec in records]
    assert [rec.fingerprint for rec in loaded] == [rec.fingerprint for rec in records]
    assert loaded[0].provenance['family'] == 'gf'


def test_catalog_reports_bad_line(tmp_path):
    path = tmp_path / 'order2.jsonl'
    path.write_text('\n{"id": "2.1"}\n')
    with pytest.raises(ParseError) as info:
        storage.read_catalog(str(path))
    assert info.value.line == 2
