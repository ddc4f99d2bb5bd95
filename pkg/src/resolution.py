"""
The Gorenstein-linear complex

    0 -> B3 --b3--> B2 --b2--> B1 --b1--> B0

built from a catalecticant.  B1 and B2 both have rank 2n+1:

    B1 basis: (m*)  for m in binom(y,z; n-1),  then  m  for m in binom(y,z; n)
    B2 basis:  m    for m in binom(y,z; n-1),  then (m*) for m in binom(y,z; n)

Row i of b2 is the B1 label that pairs with B2 label i, so b2 is alternating in
this layout.  Entries of b1/b2 come from closed formulas; `b2_pairing_oracle`
rebuilds b2 from the alternating pairing on B2 as an independent check.
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Dict, List, Optional, Tuple

from src import config
from src.catalecticant import Catalecticant, PolyMatrix, build_catalecticant, q_apply, qq_pair
from src.console import log
from src.divpow import DividedElement, InverseSystem, build_phi_tilde, contract, monomials, pair
from src.errors import CapacityError, DegenerateInverseSystem
from src.polyring import BiDegree, Monomial, Polynomial, X, Y, Z


class LabelKind(Enum):
    SYM = "Sym"
    DUAL = "Dual"


@dataclass(frozen=True)
class BasisLabel:
    kind: LabelKind
    monomial: Monomial

    @property
    def is_dual(self) -> bool:
        return self.kind is LabelKind.DUAL

    def partner(self) -> "BasisLabel":
        """The label on the other side of the B1 = B2* identification."""
        other = LabelKind.SYM if self.is_dual else LabelKind.DUAL
        return BasisLabel(other, self.monomial)

    def __str__(self) -> str:
        label = self.monomial.label()
        return f"({label})*" if self.is_dual else label


def b1_basis(n: int) -> List[BasisLabel]:
    return ([BasisLabel(LabelKind.DUAL, m) for m in monomials("yz", n - 1)]
            + [BasisLabel(LabelKind.SYM, m) for m in monomials("yz", n)])


def b2_basis(n: int) -> List[BasisLabel]:
    return ([BasisLabel(LabelKind.SYM, m) for m in monomials("yz", n - 1)]
            + [BasisLabel(LabelKind.DUAL, m) for m in monomials("yz", n)])


UNIT = "1"


@dataclass(frozen=True)
class Twist:
    """Generator bidegrees of one free module: B = sum R(-d1, -d2) over its basis."""
    module: str
    degrees: Dict[object, BiDegree]

    def of(self, label) -> BiDegree:
        return self.degrees[label]

    def shifts(self) -> List[Tuple[str, BiDegree]]:
        return [(str(label), -d) for label, d in self.degrees.items()]


def complex_twists(n: int) -> Dict[str, Twist]:
    top = comb(n + 1, 2)
    b1 = {}
    for label in b1_basis(n):
        b1[label] = BiDegree(n, top - 1) if label.is_dual else BiDegree(n, top)
    b2 = {}
    for label in b2_basis(n):
        b2[label] = BiDegree(n + 1, 2 * top - 1) if label.is_dual else BiDegree(n + 1, 2 * top)
    return {
        "B0": Twist("B0", {UNIT: BiDegree(0, 0)}),
        "B1": Twist("B1", b1),
        "B2": Twist("B2", b2),
        "B3": Twist("B3", {UNIT: BiDegree(2 * n + 1, 3 * top - 1)}),
    }


def expected_bidegree(twists: Dict[str, Twist], target: str, source: str, row, col) -> BiDegree:
    """Bidegree forced on the entry of a map source -> target at (row, col)."""
    return twists[source].of(col) - twists[target].of(row)


@dataclass(frozen=True)
class ResolutionComplex:
    n: int
    catalecticant: Catalecticant
    phi_tilde: DividedElement
    b1: PolyMatrix
    b2: PolyMatrix
    b3: PolyMatrix
    twists: Dict[str, Twist]

    @property
    def generic(self) -> bool:
        return self.catalecticant.ring.is_generic

    @property
    def delta(self) -> Polynomial:
        return self.catalecticant.delta

    def differentials(self) -> List[Tuple[str, PolyMatrix, str, str]]:
        """(name, matrix, target module, source module)."""
        return [("b1", self.b1, "B0", "B1"), ("b2", self.b2, "B1", "B2"), ("b3", self.b3, "B2", "B3")]


class _Coefficients:
    """Phi-coefficients of product monomials, read off Phi-tilde."""

    def __init__(self, phi_tilde: DividedElement):
        self.phi_tilde = phi_tilde

    def t(self, *factors: Monomial) -> Polynomial:
        m = X
        for f in factors:
            m = m * f
        return self.phi_tilde.coefficient(m)


def build_b1(C: Catalecticant, phi_tilde: DividedElement = None) -> PolyMatrix:
    n, ring = C.n, C.ring
    phi_tilde = phi_tilde or build_phi_tilde(C.inverse_system)
    coeffs = _Coefficients(phi_tilde)
    x = ring.x
    lower = monomials("xyz", n - 2)
    row = []
    for label in b1_basis(n):
        m = label.monomial
        if label.is_dual:
            row.append(x * C.lambdas[m])
            continue
        acc = ring.zero
        for m1 in lower:
            t = coeffs.t(m1, m)
            if not t.is_zero:
                acc = acc + C.lambdas[X * m1] * t
        row.append(C.delta * ring.monomial(m) - x * acc)
    return PolyMatrix(ring, [row], [UNIT], b1_basis(n))


def b1_from_definition(C: Catalecticant, phi_tilde: DividedElement = None) -> PolyMatrix:
    """b1(nu) = x q(nu) on D_{n-1};  b1(mu) = delta mu - x q(mu(Phi-tilde)) on Sym_n."""
    n, ring = C.n, C.ring
    phi_tilde = phi_tilde or build_phi_tilde(C.inverse_system)
    row = []
    for label in b1_basis(n):
        m = label.monomial
        if label.is_dual:
            row.append(ring.x * q_apply(C, DividedElement.dual(m, ring)))
        else:
            row.append(C.delta * ring.monomial(m) - ring.x * q_apply(C, contract(m, phi_tilde)))
    return PolyMatrix(ring, [row], [UNIT], b1_basis(n))


def _sym_column(C: Catalecticant, coeffs: _Coefficients, m2: Monomial,
                rows: Dict[BasisLabel, int]) -> List[Polynomial]:
    n, ring = C.n, C.ring
    x, y, z = ring.x, ring.y, ring.z
    lower = monomials("xyz", n - 2)
    column = [ring.zero] * len(rows)

    for m1 in monomials("yz", n - 1):
        acc = ring.zero
        for M1 in lower:
            a_y, a_z = coeffs.t(m1, M1, Y), coeffs.t(m1, M1, Z)
            if a_y.is_zero and a_z.is_zero:
                continue
            for M2 in lower:
                minor = a_y * coeffs.t(m2, M2, Z) - a_z * coeffs.t(m2, M2, Y)
                if not minor.is_zero:
                    acc = acc + C.q_entry(X * M1, X * M2) * minor
        column[rows[BasisLabel(LabelKind.DUAL, m1)]] = x * acc

    for m1 in monomials("yz", n):
        acc = ring.zero
        for M in lower:
            if Y.divides(m1):
                acc = acc + C.q_entry(m1 / Y, X * M) * coeffs.t(M, m2, Z)
            if Z.divides(m1):
                acc = acc - C.q_entry(m1 / Z, X * M) * coeffs.t(M, m2, Y)
        column[rows[BasisLabel(LabelKind.SYM, m1)]] = x * acc

    column[rows[BasisLabel(LabelKind.SYM, Z * m2)]] += y * C.delta
    column[rows[BasisLabel(LabelKind.SYM, Y * m2)]] -= z * C.delta
    return column


def _dual_block(C: Catalecticant, coeffs: _Coefficients, quotient: Monomial, near: Monomial,
                near_var: Polynomial, rows: Dict[BasisLabel, int]) -> List[Polynomial]:
    """
    The bracket multiplying chi(w | m2) in the column of m2*, where w is the variable
    removed (quotient = m2 / w) and `near` is the other one of y, z.
    """
    n, ring = C.n, C.ring
    x = ring.x
    block = [ring.zero] * len(rows)
    for M in monomials("yz", n - 1):
        acc = ring.zero
        for m_ in monomials("xyz", n - 2):
            t = coeffs.t(near, M, m_)
            if not t.is_zero:
                acc = acc + t * C.q_entry(X * m_, quotient)
        block[rows[BasisLabel(LabelKind.DUAL, M)]] += x * acc
        block[rows[BasisLabel(LabelKind.SYM, near * M)]] += x * C.q_entry(M, quotient)
    block[rows[BasisLabel(LabelKind.DUAL, quotient)]] -= near_var * C.delta
    return block


def _dual_column(C: Catalecticant, coeffs: _Coefficients, m2: Monomial,
                 rows: Dict[BasisLabel, int]) -> List[Polynomial]:
    ring = C.ring
    column = [ring.zero] * len(rows)
    if Z.divides(m2):
        block = _dual_block(C, coeffs, m2 / Z, Y, ring.y, rows)
        column = [a + b for a, b in zip(column, block)]
    if Y.divides(m2):
        block = _dual_block(C, coeffs, m2 / Y, Z, ring.z, rows)
        column = [a - b for a, b in zip(column, block)]
    return column


def build_b2(C: Catalecticant, phi_tilde: DividedElement = None) -> PolyMatrix:
    """Column j is the image of the j-th B2 basis element, expressed in the B1 basis."""
    n, ring = C.n, C.ring
    phi_tilde = phi_tilde or build_phi_tilde(C.inverse_system)
    coeffs = _Coefficients(phi_tilde)
    row_labels, col_labels = b1_basis(n), b2_basis(n)
    rows = {label: i for i, label in enumerate(row_labels)}

    def column(label: BasisLabel) -> List[Polynomial]:
        if label.is_dual:
            return _dual_column(C, coeffs, label.monomial, rows)
        return _sym_column(C, coeffs, label.monomial, rows)

    columns: List[Optional[List[Polynomial]]] = [None] * len(col_labels)
    with ThreadPoolExecutor(max_workers=config.MAX_WORKERS) as executor:
        futures = {executor.submit(column, label): j for j, label in enumerate(col_labels)}
        for future in as_completed(futures):
            columns[futures[future]] = future.result()

    entries = [[columns[j][i] for j in range(len(col_labels))] for i in range(len(row_labels))]
    return PolyMatrix(ring, entries, row_labels, col_labels)


def build_b3(b1: PolyMatrix, n: int = None) -> PolyMatrix:
    """b3(1): the b1 row re-indexed over B2 (Sym m <- Dual m*, Dual m* <- Sym m)."""
    n = n if n is not None else len(b1.col_labels) // 2
    ring = b1.ring
    rows = b2_basis(n)
    values = []
    for label in rows:
        values.append([b1.entry(UNIT, label.partner())])
    return PolyMatrix(ring, values, rows, [UNIT])


def _pairing(C: Catalecticant, phi_tilde: DividedElement, theta: BasisLabel, theta2: BasisLabel) -> Polynomial:
    """The alternating form on B2 evaluated at theta ^ theta2."""
    ring = C.ring
    x, y, z = ring.x, ring.y, ring.z

    def lifted(w: Monomial, mu: Monomial) -> DividedElement:
        return contract(w * mu, phi_tilde)

    def lowered(w: Monomial, nu: Monomial) -> DividedElement:
        return contract(w, DividedElement.dual(nu, ring))

    def beta2(mu: Monomial, nu: Monomial) -> Polynomial:
        return x * (qq_pair(C, lifted(Z, mu), lowered(Y, nu)) - qq_pair(C, lifted(Y, mu), lowered(Z, nu)))

    def delta_terms(mu: Monomial, nu: Monomial) -> Polynomial:
        nu_star = DividedElement.dual(nu, ring)
        return C.delta * (y * pair(Z * mu, nu_star) - z * pair(Y * mu, nu_star))

    a, b = theta.monomial, theta2.monomial
    if not theta.is_dual and not theta2.is_dual:
        return x * (qq_pair(C, lifted(Z, a), lifted(Y, b)) - qq_pair(C, lifted(Y, a), lifted(Z, b)))
    if not theta.is_dual and theta2.is_dual:
        return beta2(a, b) + delta_terms(a, b)
    if theta.is_dual and not theta2.is_dual:
        return -beta2(b, a) - delta_terms(b, a)
    return x * (qq_pair(C, lowered(Z, a), lowered(Y, b)) - qq_pair(C, lowered(Y, a), lowered(Z, b)))


def b2_pairing_oracle(C: Catalecticant, phi_tilde: DividedElement = None) -> PolyMatrix:
    """b2 rebuilt as [b2(theta)](theta') = pairing(theta ^ theta')."""
    n = C.n
    phi_tilde = phi_tilde or build_phi_tilde(C.inverse_system)
    basis = b2_basis(n)
    return PolyMatrix.from_function(C.ring, b1_basis(n), basis,
                                    lambda i, j: _pairing(C, phi_tilde, basis[j], basis[i]))


def build_resolution(inverse_system: InverseSystem) -> ResolutionComplex:
    n = inverse_system.n
    if inverse_system.generic and n > config.GENERIC_MAX_N:
        raise CapacityError(f"generic resolution is limited to n <= {config.GENERIC_MAX_N}, got n={n}")

    C = build_catalecticant(inverse_system)
    if not inverse_system.generic and C.delta.is_zero:
        raise DegenerateInverseSystem(n)
    log("Debug", f"delta = {C.delta}")

    phi_tilde = build_phi_tilde(inverse_system)
    b1 = build_b1(C, phi_tilde)
    b2 = build_b2(C, phi_tilde)
    b3 = build_b3(b1, n)
    log("Debug", f"built b1 (1x{b1.shape[1]}), b2 ({b2.shape[0]}x{b2.shape[1]}), b3 ({b3.shape[0]}x1)")
    return ResolutionComplex(n, C, phi_tilde, b1, b2, b3, complex_twists(n))
