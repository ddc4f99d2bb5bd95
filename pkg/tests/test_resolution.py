import numpy as np
import pytest

from src import config
from src.catalecticant import PolyMatrix, build_catalecticant
from src.divpow import build_phi, build_phi_tilde
from src.errors import CapacityError, DegenerateInverseSystem
from src.fixtures import FIXTURES, expected_b1, expected_b2, fixture
from src.polyring import BiDegree, Monomial, Ring, parse_polynomial
from src.resolution import (UNIT, BasisLabel, LabelKind, b1_basis, b1_from_definition, b2_basis,
                            b2_pairing_oracle, build_b3, build_resolution, complex_twists)
from src.verify import (check_alternating, check_complex, check_grading, full_report, nondegenerate_inverse_system,
                        run_random_trials)

QQR = Ring.specialized()


def sym(a, b, c):
    return BasisLabel(LabelKind.SYM, Monomial(a, b, c))


def dual(a, b, c):
    return BasisLabel(LabelKind.DUAL, Monomial(a, b, c))


def test_bases_and_labels():
    assert [str(label) for label in b1_basis(3)] == \
        ["(y^2)*", "(yz)*", "(z^2)*", "y^3", "y^2z", "yz^2", "z^3"]
    assert [str(label) for label in b2_basis(3)] == \
        ["y^2", "yz", "z^2", "(y^3)*", "(y^2z)*", "(yz^2)*", "(z^3)*"]
    assert [label.partner() for label in b2_basis(3)] == b1_basis(3)
    assert len(b1_basis(4)) == len(b2_basis(4)) == 9


def test_complex_twists():
    twists = complex_twists(3)
    assert twists["B0"].of(UNIT) == BiDegree(0, 0)
    assert twists["B1"].of(dual(0, 2, 0)) == BiDegree(3, 5)
    assert twists["B1"].of(sym(0, 3, 0)) == BiDegree(3, 6)
    assert twists["B2"].of(sym(0, 2, 0)) == BiDegree(4, 12)
    assert twists["B2"].of(dual(0, 3, 0)) == BiDegree(4, 11)
    assert twists["B3"].of(UNIT) == BiDegree(7, 17)
    assert ("1", BiDegree(-7, -17)) in twists["B3"].shifts()


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_differentials_match_fixture(i):
    f = fixture(i)
    R = build_resolution(f.inverse_system())
    assert R.b1 == expected_b1(f)
    assert R.b2 == expected_b2(f)


def test_single_entries():
    R0 = build_resolution(fixture(0).inverse_system())
    assert R0.b2.entry(dual(0, 1, 1), sym(0, 0, 2)) == 2 * QQR.x
    assert R0.b1.entry(UNIT, sym(0, 3, 0)) == parse_polynomial("-y^3 + 4x^2y + 2xz^2")
    R1 = build_resolution(fixture(1).inverse_system())
    assert R1.b2.column(3) == [QQR.z, QQR.x, 0, 0, QQR.x, 0, 0]


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_complex_and_alternating(i):
    R = build_resolution(fixture(i).inverse_system())
    assert check_complex(R)[0]
    assert check_alternating(R.b2)[0]
    assert check_grading(R)[0]
    assert (R.b1 @ R.b2).is_zero()
    assert (R.b2 @ R.b3).is_zero()


def test_b3_reindexes_b1():
    R = build_resolution(fixture(2).inverse_system())
    assert R.b3.entry(sym(0, 2, 0), UNIT) == QQR.x ** 3
    assert R.b3.entry(dual(0, 3, 0), UNIT) == QQR.y ** 3
    assert R.b3.transpose().row(0) == [R.b1.entry(UNIT, label.partner()) for label in b2_basis(3)]


def test_b3_of_zero_row():
    zero = PolyMatrix(QQR, [[0] * 5], [UNIT], b1_basis(2))
    b3 = build_b3(zero)
    assert b3.shape == (5, 1)
    assert b3.is_zero()


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_pairing_oracle_matches(i):
    f = fixture(i)
    C = build_catalecticant(f.inverse_system())
    oracle = b2_pairing_oracle(C)
    assert oracle == expected_b2(f)
    assert all(oracle[k, k].is_zero for k in range(oracle.shape[0]))


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_b1_from_definition(i):
    C = build_catalecticant(fixture(i).inverse_system())
    R = build_resolution(fixture(i).inverse_system())
    assert b1_from_definition(C) == R.b1


def test_degenerate_rejected():
    with pytest.raises(DegenerateInverseSystem):
        build_resolution(build_phi(3, []))
    with pytest.raises(DegenerateInverseSystem):
        build_resolution(build_phi(2, {(2, 0, 0): 1}))


def test_generic_capacity():
    with pytest.raises(CapacityError):
        build_resolution(build_phi(4, generic=True))


def test_generic_n2():
    phi = build_phi(2, generic=True)
    R = build_resolution(phi)
    assert R.generic
    assert R.b2.shape == (5, 5)
    assert R.b1.shape == (1, 5)
    assert R.b3.shape == (5, 1)
    assert check_alternating(R.b2)[0]
    assert check_complex(R)[0]
    assert check_grading(R)[0]
    assert R.b2 == b2_pairing_oracle(R.catalecticant, build_phi_tilde(phi))
    for label in b2_basis(2):
        assert R.b3.entry(label, UNIT) == R.b1.entry(UNIT, label.partner())


@pytest.mark.slow
def test_generic_n3():
    R = build_resolution(build_phi(3, generic=True))
    assert R.b2.shape == (7, 7)
    assert check_alternating(R.b2)[0]
    assert check_complex(R)[0]
    assert check_grading(R)[0]


@pytest.mark.parametrize("n", [2, 3])
def test_random_trials_quick(n):
    report = run_random_trials(n, 3, seed=1)
    assert report.passed, report.failures()
    assert len(report.results) == 3


def test_random_trials_are_reproducible():
    first = run_random_trials(2, 2, seed=5)
    second = run_random_trials(2, 2, seed=5)
    assert first.to_dict() == second.to_dict()


@pytest.mark.slow
def test_random_trials_n2_many():
    report = run_random_trials(2, 100, seed=0)
    assert report.passed, report.failures()[:3]


@pytest.mark.slow
def test_random_trials_n3_many():
    report = run_random_trials(3, 25, seed=0)
    assert report.passed, report.failures()[:3]


@pytest.mark.slow
def test_random_n4():
    rng = np.random.default_rng(4)
    report = full_report(nondegenerate_inverse_system(4, rng))
    assert report.passed, report.failures()


def test_results_do_not_depend_on_worker_count(monkeypatch):
    phi = fixture(3).inverse_system()
    outcomes = []
    for workers in (1, 8):
        monkeypatch.setattr(config, "MAX_WORKERS", workers)
        R = build_resolution(phi)
        outcomes.append((R.b2.to_strings(), run_random_trials(2, 4, seed=11).to_dict()))
    assert outcomes[0] == outcomes[1]
