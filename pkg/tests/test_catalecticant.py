from fractions import Fraction
from math import comb

import numpy as np
import pytest

from src.catalecticant import (PolyMatrix, adjoint, bareiss_determinant, build_catalecticant, cat_matrix,
                               cofactor_determinant, determinant, p_apply, q_apply, qq_pair)
from src.divpow import DividedElement, build_phi, monomials, pair
from src.errors import CapacityError, ShapeError
from src.fixtures import FIXTURES, expected_Q, expected_T, fixture
from src.polyring import BiDegree, Monomial, Ring, parse_polynomial, specialize

QQR = Ring.specialized()


def random_integer_matrix(rng, size, low=-4, high=4):
    labels = list(range(size))
    values = rng.integers(low, high + 1, size=(size, size))
    return PolyMatrix(QQR, [[int(v) for v in row] for row in values], labels, labels)


def random_nondegenerate(rng, n):
    for _ in range(50):
        coeffs = {m: int(rng.integers(-3, 4)) for m in monomials("xyz", 2 * n - 2)}
        C = build_catalecticant(build_phi(n, coeffs))
        if not C.delta.is_zero:
            return C
    raise AssertionError("no nondegenerate draw")


@pytest.mark.parametrize("i", sorted(FIXTURES))
def test_catalecticant_matches_fixture(i):
    f = fixture(i)
    C = build_catalecticant(f.inverse_system())
    assert C.T == expected_T(f)
    assert C.Q == expected_Q(f)
    assert C.delta == f.delta
    assert C.T.is_symmetric() and C.Q.is_symmetric()


def test_printed_rows():
    T0 = cat_matrix(fixture(0).inverse_system())
    assert [e.constant_value() for e in T0.row(3)] == [1, 0, 0, 2, 0, 0]
    T3 = cat_matrix(fixture(3).inverse_system())
    assert [e.constant_value() for e in T3.row(0)] == [0, 0, 0, 1, 2, 1]


def test_generic_entries_are_indexed_by_products():
    T = cat_matrix(build_phi(2, generic=True))
    ring = Ring.generic(2)
    assert T.shape == (3, 3)
    assert T.entry(Monomial(1, 0, 0), Monomial(0, 1, 0)) == ring.t(Monomial(1, 1, 0))
    assert T.is_symmetric()


def test_determinants():
    assert determinant(cat_matrix(fixture(0).inverse_system())) == -1
    assert determinant(cat_matrix(fixture(3).inverse_system())) == 54
    assert determinant(PolyMatrix.identity(QQR, range(6))) == 1


def test_adjoint_examples():
    C0 = build_catalecticant(fixture(0).inverse_system())
    assert C0.Q[0, 0] == -2 and C0.Q[0, 3] == 1
    C3 = build_catalecticant(fixture(3).inverse_system())
    assert C3.Q[0, 0] == 27
    identity = PolyMatrix.identity(QQR, range(6))
    assert adjoint(identity) == identity


def test_adjoint_of_polynomial_matrix():
    M = PolyMatrix.from_text([["x", "y"], ["z", "x + y"]], [0, 1], [0, 1])
    A = adjoint(M)
    det = determinant(M)
    assert det == parse_polynomial("x^2 + x y - y z")
    assert M @ A == PolyMatrix.identity(QQR, [0, 1]).scale(det)


def test_adjoint_of_rational_matrix():
    M = PolyMatrix(QQR, [[Fraction(1, 2), 1], [1, 3]], [0, 1], [0, 1])
    assert determinant(M) == Fraction(1, 2)
    A = adjoint(M)
    assert A == PolyMatrix(QQR, [[3, -1], [-1, Fraction(1, 2)]], [0, 1], [0, 1])
    assert M @ A == PolyMatrix.identity(QQR, [0, 1]).scale(determinant(M))


def test_degenerate_still_has_adjoint():
    T = cat_matrix(build_phi(2, {(2, 0, 0): 1}))
    assert determinant(T).is_zero
    A = adjoint(T)
    assert (T @ A).is_zero()


def test_non_square():
    M = PolyMatrix(QQR, [[1, 2, 3], [4, 5, 6]], [0, 1], [0, 1, 2])
    with pytest.raises(ShapeError):
        determinant(M)
    with pytest.raises(ShapeError):
        adjoint(M)


def test_generic_capacity():
    with pytest.raises(CapacityError):
        build_catalecticant(build_phi(4, generic=True))


@pytest.mark.parametrize("size", [4, 5, 6])
def test_bareiss_agrees_with_cofactors(size):
    rng = np.random.default_rng(size)
    for _ in range(5):
        M = random_integer_matrix(rng, size)
        assert bareiss_determinant(M) == cofactor_determinant(M)


def test_lambdas_example_zero():
    C = build_catalecticant(fixture(0).inverse_system())
    for label, text in fixture(0).lambdas.items():
        m = next(m for m in C.basis if m.label() == label)
        assert C.lambdas[m] == parse_polynomial(text)


def test_lambdas_of_identity_adjoint():
    # T = I here, so Q = I and lambda_m = m
    C = build_catalecticant(build_phi(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}))
    assert C.delta == 1
    for m in C.basis:
        assert C.lambdas[m] == QQR.monomial(m)


def test_q_apply_and_pairing_examples():
    C = build_catalecticant(fixture(0).inverse_system())
    y2, x2 = Monomial(0, 2, 0), Monomial(2, 0, 0)
    assert q_apply(C, DividedElement.dual(y2)) == parse_polynomial("x^2 - y^2")
    assert q_apply(C, DividedElement.zero(QQR, 2)).is_zero
    assert qq_pair(C, DividedElement.dual(y2), DividedElement.dual(x2)) == 1


def test_observation_identities():
    rng = np.random.default_rng(7)
    for n in (2, 3):
        C = random_nondegenerate(rng, n)
        basis = monomials("xyz", n - 1)
        for _ in range(5):
            mu = QQR.from_xyz_dict({m: int(rng.integers(-3, 4)) for m in basis})
            nu = DividedElement.build(QQR, n - 1, {m: int(rng.integers(-3, 4)) for m in basis})
            nu2 = DividedElement.build(QQR, n - 1, {m: int(rng.integers(-3, 4)) for m in basis})
            assert q_apply(C, p_apply(C, mu)) == C.delta * mu
            assert p_apply(C, q_apply(C, nu)) == nu.scale(C.delta)
            assert qq_pair(C, nu, nu2) == qq_pair(C, nu2, nu)
            assert pair(q_apply(C, nu), nu2) == pair(q_apply(C, nu2), nu)
            mu_pairs_nu = pair(mu, nu)
            assert qq_pair(C, p_apply(C, mu), nu) == C.delta * mu_pairs_nu


def test_adjoint_identity_random():
    rng = np.random.default_rng(8)
    C = random_nondegenerate(rng, 3)
    I = PolyMatrix.identity(QQR, C.T.row_labels).scale(C.delta)
    assert C.T @ C.Q == I
    assert C.Q @ C.T == I


def test_generic_n2():
    C = build_catalecticant(build_phi(2, generic=True))
    top = comb(3, 2)
    assert C.delta.bidegree() == BiDegree(0, top)
    for e in C.Q.entries.flat:
        assert e.bidegree() == BiDegree(0, top - 1)
    for m, lam in C.lambdas.items():
        assert lam.bidegree() == BiDegree(1, top - 1)
    I = PolyMatrix.identity(C.ring, C.T.row_labels).scale(C.delta)
    assert C.T @ C.Q == I
    assert C.Q.is_symmetric()


def test_generic_specializes_to_rational_n2():
    rng = np.random.default_rng(12)
    generic = build_catalecticant(build_phi(2, generic=True))
    for _ in range(3):
        values = {m: int(rng.integers(-3, 4)) for m in monomials("xyz", 2)}
        specialized = build_catalecticant(build_phi(2, values))
        assert specialize(generic.delta, values) == specialized.delta
        assert generic.Q.map(lambda e: specialize(e, values), QQR) == specialized.Q


@pytest.mark.slow
def test_generic_delta_specializes_to_54():
    C = build_catalecticant(build_phi(3, generic=True))
    assignment = {Monomial(*e): v for e, v in fixture(3).coefficients}
    assert specialize(C.delta, assignment) == 54
