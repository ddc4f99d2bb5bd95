import json
from dataclasses import replace

import pytest

from src.catalecticant import PolyMatrix, bareiss_determinant
from src.divpow import build_phi, contract
from src.errors import InputError
from src.fixtures import FIXTURES, be_matrix, compare_all, compare_fixture, fixture
from src.polyring import Ring, parse_polynomial
from src.resolution import UNIT, b1_basis, build_resolution
from src.verify import (VerificationReport, annihilator_degree_n, check_b1_annihilates, check_colon_ideal,
                        check_pfaffian_span, compare_spans, forms_rank, full_report, maximal_pfaffians,
                        perfect_power_forms, pfaffian)

QQR = Ring.specialized()


def test_annihilator_of_fixture_two():
    phi = fixture(2).inverse_system()
    forms = annihilator_degree_n(phi)
    assert len(forms) == 7
    assert forms_rank(forms, 3) == 7
    for form in forms:
        assert contract(form, phi.phi).is_zero


def test_annihilator_of_zero():
    assert len(annihilator_degree_n(build_phi(2, []))) == 6


def test_annihilator_needs_specialized():
    with pytest.raises(InputError):
        annihilator_degree_n(build_phi(2, generic=True))


def test_mutated_b1_is_caught():
    R = build_resolution(fixture(0).inverse_system())
    row = R.b1.row(0)
    row[0] = row[0] + QQR.x * QQR.y ** 2
    broken = replace(R, b1=PolyMatrix(QQR, [row], [UNIT], b1_basis(3)))
    report = check_b1_annihilates(broken)
    assert not report.passed
    assert report.failures()[0].witness


def test_pfaffians_small():
    a, b, c = QQR.x, QQR.y, QQR.z
    M2 = PolyMatrix(QQR, [[0, a], [-a, 0]], [0, 1], [0, 1])
    assert pfaffian(M2) == a
    M4 = PolyMatrix(QQR, [[0, a, b, c], [-a, 0, c, b], [-b, -c, 0, a], [-c, -b, -a, 0]], range(4), range(4))
    assert pfaffian(M4) == a * a - b * b + c * c
    assert pfaffian(M4) ** 2 == bareiss_determinant(M4)


def test_pfaffian_errors():
    M = PolyMatrix(QQR, [[0, 1], [1, 0]], [0, 1], [0, 1])
    with pytest.raises(InputError):
        pfaffian(M)
    with pytest.raises(InputError):
        maximal_pfaffians(PolyMatrix.identity(QQR, range(2)).scale(0))
    M3 = PolyMatrix(QQR, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]], range(3), range(3))
    with pytest.raises(InputError):
        pfaffian(M3)
    assert [p.constant_value() for p in maximal_pfaffians(M3)] == [3, 2, 1]


def test_pfaffian_squares_on_b2():
    R = build_resolution(fixture(0).inverse_system())
    for i, pf in enumerate(maximal_pfaffians(R.b2)):
        assert pf * pf == bareiss_determinant(R.b2.delete(i))


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_pfaffian_span(i):
    R = build_resolution(fixture(i).inverse_system())
    report = check_pfaffian_span(R)
    assert report.passed, report.failures()


def test_buchsbaum_eisenbud_matrix():
    M = be_matrix()
    assert M.is_alternating()
    R = build_resolution(fixture(2).inverse_system())
    ok, detail, _ = compare_spans(maximal_pfaffians(M), R.b1.row(0), 3)
    assert ok, detail


def test_compare_spans_reports_witness():
    ok, _, witness = compare_spans([parse_polynomial("x^2")], [parse_polynomial("y^2")], 2)
    assert not ok
    assert "x^2" in witness


@pytest.mark.parametrize("n", [2, 3])
def test_colon_ideal(n):
    report = check_colon_ideal(n)
    assert report.passed, report.failures()
    assert not report.degenerate


@pytest.mark.slow
def test_colon_ideal_four():
    assert check_colon_ideal(4).passed


@pytest.mark.parametrize("i,expected", [(0, 0), (1, 1), (2, 2), (3, 3)])
def test_perfect_cubes(i, expected):
    rank, forms = perfect_power_forms(fixture(i).inverse_system())
    assert rank == expected
    for form in forms:
        assert contract(form ** 3, fixture(i).inverse_system().phi).is_zero


def test_full_report_passes():
    report = full_report(fixture(1).inverse_system())
    assert report.passed, report.failures()
    assert not report.degenerate
    names = [r.name for r in report.results]
    assert "complex: b1*b2 = 0, b2*b3 = 0" in names
    assert "span(b1) = ann(Phi)_n" in names


def test_full_report_degenerate():
    report = full_report(build_phi(3, []))
    assert report.degenerate
    assert not report.passed


def test_full_report_generic_n2():
    report = full_report(build_phi(2, generic=True))
    assert report.passed, report.failures()
    assert any(r.skipped for r in report.results)


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_compare_fixture(i):
    report = compare_fixture(i)
    assert report.passed, report.failures()


def test_compare_all_covers_every_fixture():
    report = compare_all()
    assert report.passed
    assert {r.name.split(" ")[0] for r in report.results} == {"[0]", "[1]", "[2]", "[3]"}


def test_report_serialization(tmp_path):
    report = VerificationReport("demo")
    report.run("ok", lambda: (True, "fine", None))
    report.run("bad", lambda: (False, "broken", "witness here"))
    report.run("optional", lambda: (False, "meh", None), required=False)
    report.skip("skipped", "not applicable")
    assert not report.passed
    assert [r.status for r in report.results] == ["pass", "fail", "note", "skip"]
    assert [r.name for r in report.failures()] == ["bad"]

    data = json.loads(report.to_json())
    assert data["title"] == "demo"
    assert "seconds" not in data["checks"][0]
    assert data["checks"][1]["witness"] == "witness here"
    assert data["checks"][2]["witness"] == "meh"

    frame = report.to_frame()
    assert list(frame["status"]) == ["pass", "fail", "note", "skip"]
    assert "FAIL" in report.to_text()

    path = tmp_path / "report.csv"
    report.to_csv(str(path))
    assert path.read_text(encoding="utf-8-sig").splitlines()[0] == "check,status,required,detail,witness"


def test_run_records_library_errors():
    report = VerificationReport("errors")

    def boom():
        raise InputError("bad input")

    result = report.run("explodes", boom)
    assert not result.passed
    assert "bad input" in result.witness
