import time
from fractions import Fraction

from autbound.signature import FiniteAbelianGroup, parse_signature
from autbound.tables import (
    TableRow,
    compare,
    generate_table2,
    generate_table3,
    load_fixture,
    parse_fixture,
    verify_tables,
)


def test_table2_reproduces_fixture():
    start = time.perf_counter()
    report = compare("table2", generate_table2(), load_fixture("table2"))
    assert time.perf_counter() - start < 1.0
    assert report.ok, report.as_dict()
    rows = load_fixture("table2").rows
    assert len(rows) == 13
    assert [str(r.coefficient) for r in rows] == [
        "48", "40", "36", "30", "24", "24", "24", "21", "20", "20", "96/5", "56/3", "18",
    ]


def test_table2_perfect_signatures():
    assert {str(s) for s in generate_table2().perfect} == {"(0;2,3,7)", "(0;2,3,11)", "(0;2,3,13)", "(0;2,3,17)"}


def test_table3_reproduces_fixture():
    start = time.perf_counter()
    generated = generate_table3()
    assert time.perf_counter() - start < 1.0
    assert [r.coefficient for r in generated.rows] == [15, Fraction(21, 2), 9, Fraction(33, 4)]
    assert compare("table3", generated, load_fixture("table3")).ok


def test_verify_tables_summary():
    assert [r.summary() for r in verify_tables()] == ["table2: 14/14 rows match", "table3: 4/4 rows match"]


def test_compare_reports_a_corrupted_row():
    golden = load_fixture("table3")
    bad = golden.rows[0]
    golden.rows[0] = TableRow(bad.coefficient, bad.signature, FiniteAbelianGroup.parse("C5"), bad.derived)
    report = compare("table3", generate_table3(), golden)
    assert not report.ok and len(report.mismatched) == 1


def test_compare_reports_missing_and_unexpected_rows():
    golden = parse_fixture("15 | (0;3,3,5) | C3 | (0;5,5,5)\n9 | (0;3,3,4) | C3 | (0;4,4,4)\n")
    report = compare("t", generate_table3(), golden)
    assert len(report.missing) == 1 and len(report.unexpected) == 3


def test_fixture_signatures_in_any_period_order():
    row = parse_fixture("40 | (0;2,4,5) | C2 | (0;5,5,2)\n").rows[0]
    assert row.derived == parse_signature("(0;2,5,5)")
