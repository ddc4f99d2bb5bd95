"""
Catalecticant matrix T of an inverse system, its determinant delta, classical adjoint Q,
and the forms lambda_m built from the columns of Q.

All linear algebra is exact.  Specialized (rational) determinants use Bareiss
fraction-free elimination; generic (symbolic) ones use cofactor expansion with
memoized minors, which is only offered up to 6x6.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.config import GENERIC_MAX_MATRIX_SIZE
from src.console import log
from src.divpow import DividedElement, InverseSystem, MonomialBasis, contract, monomials, pair
from src.errors import CapacityError, DegreeError, InputError, ShapeError
from src.polyring import Monomial, Polynomial, Ring, format_polynomial, parse_polynomial


class PolyMatrix:
    """Dense matrix of Polynomials with row/column basis labels."""

    def __init__(self, ring: Ring, entries, row_labels: Sequence, col_labels: Sequence):
        self.ring = ring
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        shape = (len(self.row_labels), len(self.col_labels))
        self.entries = np.empty(shape, dtype=object)
        rows = list(entries)
        if len(rows) != shape[0]:
            raise ShapeError(f"expected {shape[0]} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != shape[1]:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {shape[1]}")
            for j, value in enumerate(row):
                self.entries[i, j] = ring.coerce(value)

    @classmethod
    def from_function(cls, ring: Ring, row_labels: Sequence, col_labels: Sequence,
                      fn: Callable[[int, int], object]) -> "PolyMatrix":
        return cls(ring, [[fn(i, j) for j in range(len(col_labels))] for i in range(len(row_labels))],
                   row_labels, col_labels)

    @classmethod
    def from_text(cls, rows: Iterable[Iterable], row_labels: Sequence, col_labels: Sequence,
                  ring: Ring = None) -> "PolyMatrix":
        """Entries given as ints, Fractions or polynomial text such as "-36x + 54z"."""
        ring = ring or Ring.specialized()
        parsed = [[parse_polynomial(v, ring) if isinstance(v, str) else ring.coerce(v) for v in row]
                  for row in rows]
        return cls(ring, parsed, row_labels, col_labels)

    @classmethod
    def identity(cls, ring: Ring, labels: Sequence) -> "PolyMatrix":
        return cls.from_function(ring, labels, labels, lambda i, j: 1 if i == j else 0)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def __getitem__(self, index) -> Polynomial:
        return self.entries[index]

    def entry(self, row_label, col_label) -> Polynomial:
        return self.entries[self.row_labels.index(row_label), self.col_labels.index(col_label)]

    def row(self, i: int) -> List[Polynomial]:
        return list(self.entries[i, :])

    def column(self, j: int) -> List[Polynomial]:
        return list(self.entries[:, j])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.entries.T, self.col_labels, self.row_labels)

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: Ring = None) -> "PolyMatrix":
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(e) for e in row] for row in self.entries], self.row_labels, self.col_labels)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def scale(self, factor) -> "PolyMatrix":
        factor = self.ring.coerce(factor)
        return self.map(lambda e: e * factor)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if other.ring != self.ring:
            raise InputError(f"ring mismatch: {self.ring.tag} vs {other.ring.tag}")
        rows, inner, cols = self.shape[0], self.shape[1], other.shape[1]
        out = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                acc = self.ring.zero
                for k in range(inner):
                    a = self.entries[i, k]
                    if a.is_zero:
                        continue
                    b = other.entries[k, j]
                    if not b.is_zero:
                        acc = acc + a * b
                out[i, j] = acc
        return PolyMatrix(self.ring, out, self.row_labels, other.col_labels)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.entries[np.ix_(list(rows), list(cols))],
                          [self.row_labels[i] for i in rows], [self.col_labels[j] for j in cols])

    def delete(self, i: int) -> "PolyMatrix":
        """Square matrix with row i and column i removed."""
        keep = [k for k in range(self.shape[0]) if k != i]
        return self.submatrix(keep, keep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    def mismatches(self, other: "PolyMatrix") -> List[Tuple[int, int]]:
        if self.shape != other.shape:
            raise ShapeError(f"shape {self.shape} vs {other.shape}")
        return [(i, j) for i in range(self.shape[0]) for j in range(self.shape[1])
                if self.entries[i, j] != other.entries[i, j]]

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries.flat)

    def is_symmetric(self) -> bool:
        return self.is_square and all(self.entries[i, j] == self.entries[j, i]
                                      for i in range(self.shape[0]) for j in range(i))

    def is_alternating(self) -> bool:
        if not self.is_square:
            return False
        n = self.shape[0]
        if any(not self.entries[i, i].is_zero for i in range(n)):
            return False
        return all(self.entries[i, j] == -self.entries[j, i] for i in range(n) for j in range(i))

    def to_strings(self) -> List[List[str]]:
        return [[format_polynomial(e) for e in row] for row in self.entries]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.to_strings(),
                            index=[str(label) for label in self.row_labels],
                            columns=[str(label) for label in self.col_labels])

    def __str__(self) -> str:
        return self.to_frame().to_string()


# --- determinants ---

def bareiss_determinant(M: PolyMatrix) -> Polynomial:
    """Fraction-free elimination; every division is exact over an integral domain."""
    if not M.is_square:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    ring = M.ring
    size = M.shape[0]
    if size == 0:
        return ring.one
    a = [list(row) for row in M.entries]
    sign = 1
    prev = ring.one
    for k in range(size - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, size):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                elt = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = elt.exquo(prev) if k else elt
        prev = pivot
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def _cofactor_minor(a, rows: Tuple[int, ...], cols: Tuple[int, ...], memo: Dict, zero: Polynomial) -> Polynomial:
    if not rows:
        return zero + 1
    key = (rows, cols)
    if key in memo:
        return memo[key]
    r, rest = rows[0], rows[1:]
    total = zero
    for k, c in enumerate(cols):
        entry = a[r][c]
        if entry.is_zero:
            continue
        sub = _cofactor_minor(a, rest, cols[:k] + cols[k + 1:], memo, zero)
        if sub.is_zero:
            continue
        total = total + entry * sub if k % 2 == 0 else total - entry * sub
    memo[key] = total
    return total


def cofactor_determinant(M: PolyMatrix, memo: Dict = None) -> Polynomial:
    """Laplace expansion along the first row; sub-minors cached in `memo` (per call by default)."""
    if not M.is_square:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    size = M.shape[0]
    memo = {} if memo is None else memo
    return _cofactor_minor(M.entries, tuple(range(size)), tuple(range(size)), memo, M.ring.zero)


def _check_capacity(M: PolyMatrix):
    if M.ring.is_generic and M.shape[0] > GENERIC_MAX_MATRIX_SIZE:
        raise CapacityError(f"symbolic {M.shape[0]}x{M.shape[0]} determinant exceeds the "
                            f"{GENERIC_MAX_MATRIX_SIZE}x{GENERIC_MAX_MATRIX_SIZE} limit (generic n <= 3)")


def determinant(M: PolyMatrix) -> Polynomial:
    if not M.is_square:
        raise ShapeError(f"determinant of non-square {M.shape} matrix")
    _check_capacity(M)
    if M.ring.is_generic:
        return cofactor_determinant(M)
    return bareiss_determinant(M)


def _rational_inverse(M: PolyMatrix) -> List[List[Fraction]]:
    """Exact inverse of an invertible constant matrix, computed over QQ."""
    size = M.shape[0]
    values = [[Fraction(e.constant_value()) for e in row] for row in M.entries]
    dm = DomainMatrix([[QQ(v.numerator, v.denominator) for v in row] for row in values], (size, size), QQ)
    inverse = dm.inv().to_Matrix()
    return [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(size)] for i in range(size)]


def adjoint(M: PolyMatrix, det: Polynomial = None) -> PolyMatrix:
    """Classical adjoint A with M A = A M = det(M) I."""
    if not M.is_square:
        raise ShapeError(f"adjoint of non-square {M.shape} matrix")
    _check_capacity(M)
    ring = M.ring
    size = M.shape[0]
    if size == 0:
        return PolyMatrix(ring, [], M.col_labels, M.row_labels)
    if size == 1:
        return PolyMatrix(ring, [[1]], M.col_labels, M.row_labels)
    if det is None:
        det = determinant(M)

    constant = not ring.is_generic and all(e.is_constant for e in M.entries.flat)
    if constant and not det.is_zero:
        scale = Fraction(det.constant_value())
        inverse = _rational_inverse(M)
        return PolyMatrix(ring, [[v * scale for v in row] for row in inverse], M.col_labels, M.row_labels)

    everything = tuple(range(size))
    memo: Dict = {}

    def cofactor(i: int, j: int) -> Polynomial:
        rows = everything[:j] + everything[j + 1:]
        cols = everything[:i] + everything[i + 1:]
        if ring.is_generic:
            minor = _cofactor_minor(M.entries, rows, cols, memo, ring.zero)
        else:
            minor = bareiss_determinant(M.submatrix(rows, cols))
        return minor if (i + j) % 2 == 0 else -minor

    # adj[i][j] = (-1)^(i+j) * minor with row j and column i removed
    return PolyMatrix.from_function(ring, M.col_labels, M.row_labels, cofactor)


# --- the catalecticant ---

@dataclass(frozen=True)
class Catalecticant:
    n: int
    inverse_system: InverseSystem
    basis: MonomialBasis
    T: PolyMatrix
    delta: Polynomial
    Q: PolyMatrix
    lambdas: Dict[Monomial, Polynomial]

    @property
    def ring(self) -> Ring:
        return self.T.ring

    def t(self, m: Monomial) -> Polynomial:
        """Phi-coefficient of a degree-(2n-2) monomial: alpha_m or t_m."""
        return self.inverse_system.coefficient(m)

    def q_entry(self, m1: Monomial, m2: Monomial) -> Polynomial:
        return self.Q[self.basis.index(m1), self.basis.index(m2)]


def cat_matrix(inverse_system: InverseSystem) -> PolyMatrix:
    """T[m1][m2] = (m1 m2)(Phi) for m1, m2 of degree n-1."""
    basis = monomials("xyz", inverse_system.n - 1)
    phi = inverse_system.phi
    return PolyMatrix.from_function(phi.ring, basis.elements, basis.elements,
                                    lambda i, j: pair(basis[i] * basis[j], phi))


def lambdas(C: Catalecticant) -> Dict[Monomial, Polynomial]:
    return _lambdas(C.basis, C.Q)


def _lambdas(basis: MonomialBasis, Q: PolyMatrix) -> Dict[Monomial, Polynomial]:
    ring = Q.ring
    out = {}
    for j, m2 in enumerate(basis):
        acc = ring.zero
        for i, m1 in enumerate(basis):
            q = Q[i, j]
            if not q.is_zero:
                acc = acc + ring.monomial(m1) * q
        out[m2] = acc
    return out


def build_catalecticant(inverse_system: InverseSystem) -> Catalecticant:
    basis = monomials("xyz", inverse_system.n - 1)
    T = cat_matrix(inverse_system)
    log("Debug", f"catalecticant {T.shape[0]}x{T.shape[1]} over {T.ring.tag}")
    delta = determinant(T)
    Q = adjoint(T, delta)
    return Catalecticant(inverse_system.n, inverse_system, basis, T, delta, Q, _lambdas(basis, Q))


def _require_degree(C: Catalecticant, nu: DividedElement):
    if nu.degree != C.n - 1:
        raise DegreeError(f"expected an element of D_{C.n - 1}, got degree {nu.degree}")


def q_apply(C: Catalecticant, nu: DividedElement) -> Polynomial:
    """q(m2*) = sum_{m1} Q[m1][m2] m1 = lambda_{m2}, extended linearly."""
    _require_degree(C, nu)
    ring = C.ring
    out = ring.zero
    for m2, c in nu.coeffs.items():
        out = out + ring.coerce(c) * C.lambdas[m2]
    return out


def qq_pair(C: Catalecticant, nu1: DividedElement, nu2: DividedElement) -> Polynomial:
    """The symmetric form with (m1*, m2*) -> Q[m1][m2]."""
    _require_degree(C, nu1)
    _require_degree(C, nu2)
    ring = C.ring
    out = ring.zero
    for m1, c1 in nu1.coeffs.items():
        i = C.basis.index(m1)
        for m2, c2 in nu2.coeffs.items():
            q = C.Q[i, C.basis.index(m2)]
            if not q.is_zero:
                out = out + ring.coerce(c1) * ring.coerce(c2) * q
    return out


def p_apply(C: Catalecticant, mu) -> DividedElement:
    """p(mu) = mu(Phi) for mu of degree n-1."""
    if isinstance(mu, Polynomial) and mu.is_zero:
        return DividedElement.zero(C.ring, C.n - 1)
    result = contract(mu, C.inverse_system.phi)
    if result.degree != C.n - 1:
        raise DegreeError(f"p expects a form of degree {C.n - 1}")
    return result
