import json
from fractions import Fraction as F

import pytest

from tqf.forms import TernaryForm
from tqf.genera import get_inventory
from tqf.hurwitz import modified_H
from tqf.verify import (CODE_MISMATCH, TABLE_INCONSISTENCY, InsufficientTermsError, QSeries,
                        TableRow, VerificationReport, check_berkovich_jagy, check_du,
                        check_golden_tables, check_theta_linearity, eisenstein_rank, exact_rank,
                        table_rows, theta_genus, theta_modified)


def test_qseries_arithmetic():
    a, b = QSeries([1, 2, 3]), QSeries([F(1, 2), 0, -1, 7])
    assert list(a + b) == [F(3, 2), 2, 2]
    assert list(a - a) == [0, 0, 0]
    assert list(3 * b) == [F(3, 2), 0, -3, 21]
    assert list(QSeries(range(7)).dilate(3)) == [0, 0, 0, 1, 0, 0, 2]
    assert str(b) == "1/2 0 -1 7"
    assert b.n_max == 3


def test_exact_rank():
    assert exact_rank([[1, 2, 3], [2, 4, 6], [F(1, 2), 0, 1]]) == 2
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_theta_genus_examples():
    assert list(theta_genus(get_inventory(1), "G_{4,4,2}", 4)) == [F(1, 12), F(1, 2), 1, F(2, 3), F(1, 2)]
    assert list(theta_genus(get_inventory(3), "G_{12,9,3}", 3)) == [F(1, 6), 1, 0, F(4, 3)]
    with pytest.raises(KeyError):
        theta_genus(get_inventory(3), "G_{12,9,5}", 3)


def test_theta_modified():
    assert list(theta_modified(2, 1, 1, 4)) == [F(1, 12), F(1, 2), 1, F(2, 3), F(1, 2)]
    s = theta_modified(6, 15, 3, 12)
    assert all(s[n] == 0 for n in range(13) if n % 3)
    assert s[6] == modified_H(6, 5, 8)
    for bad in [(1, 15, 1), (4, 15, 1), (2, 15, 2), (2, 4, 1)]:
        with pytest.raises(ValueError):
            theta_modified(*bad, 4)


@pytest.mark.parametrize("N,l,n_max,rank", [(1, 1, 50, 1), (15, 1, 50, 7), (15, 3, 60, 7), (3, 3, 50, 3)])
def test_eisenstein_rank(N, l, n_max, rank):
    assert eisenstein_rank(N, l, n_max) == rank


def test_eisenstein_rank_refuses_to_guess():
    with pytest.raises(InsufficientTermsError):
        eisenstein_rank(15, 1, 2)


def test_berkovich_jagy_small_n():
    report = check_berkovich_jagy(3, n_max=1)
    assert [(c.lhs, c.rhs) for c in report.checks] == [(-2, -2), (12, 12)]
    with pytest.raises(ValueError):
        check_berkovich_jagy(11)


def test_du_examples():
    assert check_du(1, 3, 5, 1, m_max=20).passed
    assert check_du(1, 3, 5, 2, m_max=50).passed
    with pytest.raises(ValueError):
        check_du(3, 5, 7, 1)
    with pytest.raises(ValueError):
        check_du(1, 3, 3, 1)


def test_table_row_examples():
    row = TableRow.parse("G_{20,5,5}; 1*1,1,2,1,1,1; 3; 5; 1; 20")
    assert row.lhs(50) == [row.rhs(n) for n in range(51)]
    level140 = {r.label: r for r in table_rows("table3")}
    row = level140["G_{140,35,7}"]
    assert [(k, f) for k, f in row.terms] == [(1, TernaryForm(1, 1, 9, 0, -1, 0)),
                                              (2, TernaryForm(1, 3, 4, 3, 1, 1))]
    assert (row.multiple, row.N1, row.N2, row.arg) == (1, 7, 5, 140)
    assert row.lhs(40) == [row.rhs(n) for n in range(41)]


def test_appendix_b_golden():
    report = check_golden_tables("appendixB", n_max=996)
    assert report.passed and len(report.checks) == 102
    assert any(c.name == "|C(996)|" and c.lhs == 268 for c in report.checks)


def test_known_table_defects_are_classified():
    report = check_golden_tables("table3", n_max=30)
    assert {c.name.split(":")[0] for c in report.failures} == {"G_{140,4900,2}", "G_{140,700,2}"}
    assert all(c.classification == TABLE_INCONSISTENCY for c in report.failures)
    a = check_golden_tables("appendixA")
    assert [c.classification for c in a.failures] == [TABLE_INCONSISTENCY]
    assert CODE_MISMATCH != TABLE_INCONSISTENCY


def test_theta_linearity():
    assert check_theta_linearity(3, n_max=20).passed


def test_report_serialization():
    r = VerificationReport("demo", {"n": 1})
    r.add("ok", F(1, 2), F(1, 2))
    bad = r.add("bad", 1, 2, "detail")
    bad.classification = CODE_MISMATCH
    d = json.loads(r.to_json())
    assert d["passed"] is False and "runtime_seconds" not in d
    assert d["checks"][0] == {"name": "ok", "status": "pass", "lhs": "1/2", "rhs": "1/2"}
    assert d["checks"][1]["lhs"] == "1" and d["checks"][1]["rhs"] == "2"
    assert "runtime_seconds" in r.to_dict()
    assert r.to_text().splitlines() == ["demo: 1/2 checks pass, 1 fail",
                                        f"  FAIL bad: 1 != 2 [{CODE_MISMATCH}] -- detail"]
