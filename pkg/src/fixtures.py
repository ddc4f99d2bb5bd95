"""
The four worked inverse systems (n = 3) with their printed catalecticants, adjoints,
determinants and differentials, and the comparison that reproduces them.

Matrices are indexed by x^2, xy, xz, y^2, yz, z^2 (T, Q), by
(y^2)*, (yz)*, (z^2)*, y^3, y^2z, yz^2, z^3 (rows of b2, entries of b1) and by
y^2, yz, z^2, (y^3)*, (y^2z)*, (yz^2)*, (z^3)* (columns of b2).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.catalecticant import PolyMatrix
from src.divpow import InverseSystem, build_phi, colon_inverse_system, contract, monomials
from src.polyring import Ring, parse_polynomial
from src.resolution import UNIT, b1_basis, b2_basis, build_resolution
from src.verify import (VerificationReport, compare_spans, maximal_pfaffians,
                        perfect_power_forms)


@dataclass(frozen=True)
class Fixture:
    index: int
    coefficients: List[Tuple[Tuple[int, int, int], int]]
    T: List[List[int]]
    Q: List[List[int]]
    delta: int
    b1: List[str]
    b2: List[List[object]]
    perfect_cubes: int
    lambdas: Dict[str, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return 3

    def inverse_system(self) -> InverseSystem:
        return build_phi(self.n, [(list(e), v) for e, v in self.coefficients])


_PHI0 = [((2, 2, 0), 1), ((1, 1, 2), -1), ((0, 0, 4), 2), ((4, 0, 0), 1), ((0, 4, 0), 2)]

FIXTURES: Dict[int, Fixture] = {
    0: Fixture(
        index=0,
        coefficients=_PHI0,
        T=[[1, 0, 0, 1, 0, 0],
           [0, 1, 0, 0, 0, -1],
           [0, 0, 0, 0, -1, 0],
           [1, 0, 0, 2, 0, 0],
           [0, 0, -1, 0, 0, 0],
           [0, -1, 0, 0, 0, 2]],
        Q=[[-2, 0, 0, 1, 0, 0],
           [0, -2, 0, 0, 0, -1],
           [0, 0, 0, 0, 1, 0],
           [1, 0, 0, -1, 0, 0],
           [0, 0, 1, 0, 0, 0],
           [0, -1, 0, 0, 0, -1]],
        delta=-1,
        b1=["x^3 - x y^2", "x^2 z", "-x^2 y - x z^2", "-y^3 + 4 x^2 y + 2 x z^2",
            "-y^2 z", "-y z^2 - 2 x^3 + x y^2", "-z^3 - 2 x y z"],
        b2=[[0, 0, 0, "-z", "y", 0, "-2x"],
            [0, 0, "2x", "x", "-z", "y", 0],
            [0, "-2x", 0, 0, "-3x", "-z", "y"],
            ["z", "-x", 0, 0, "-x", 0, 0],
            ["-y", "z", "3x", "x", 0, 0, 0],
            [0, "-y", "z", 0, 0, 0, "-x"],
            ["2x", 0, "-y", 0, 0, "x", 0]],
        perfect_cubes=0,
        lambdas={"x^2": "-2x^2 + y^2", "xy": "-2 x y - z^2", "xz": "y z",
                 "y^2": "x^2 - y^2", "yz": "x z", "z^2": "-x y - z^2"},
    ),
    1: Fixture(
        index=1,
        coefficients=[c for c in _PHI0 if c[0] != (0, 4, 0)],
        T=[[1, 0, 0, 1, 0, 0],
           [0, 1, 0, 0, 0, -1],
           [0, 0, 0, 0, -1, 0],
           [1, 0, 0, 0, 0, 0],
           [0, 0, -1, 0, 0, 0],
           [0, -1, 0, 0, 0, 2]],
        Q=[[0, 0, 0, 1, 0, 0],
           [0, 2, 0, 0, 0, 1],
           [0, 0, 0, 0, -1, 0],
           [1, 0, 0, -1, 0, 0],
           [0, 0, -1, 0, 0, 0],
           [0, 1, 0, 0, 0, 1]],
        delta=1,
        b1=["x^3 - x y^2", "-x^2 z", "x^2 y + x z^2", "y^3", "y^2 z", "y z^2 + x y^2", "z^3 + 2 x y z"],
        b2=[[0, 0, 0, "z", "-y", 0, 0],
            [0, 0, 0, "x", "z", "-y", 0],
            [0, 0, 0, 0, "x", "z", "-y"],
            ["-z", "-x", 0, 0, "-x", 0, 0],
            ["y", "-z", "-x", "x", 0, 0, 0],
            [0, "y", "-z", 0, 0, 0, "x"],
            [0, 0, "y", 0, 0, "-x", 0]],
        perfect_cubes=1,
    ),
    2: Fixture(
        index=2,
        coefficients=[c for c in _PHI0 if c[0] not in ((0, 4, 0), (4, 0, 0))],
        T=[[0, 0, 0, 1, 0, 0],
           [0, 1, 0, 0, 0, -1],
           [0, 0, 0, 0, -1, 0],
           [1, 0, 0, 0, 0, 0],
           [0, 0, -1, 0, 0, 0],
           [0, -1, 0, 0, 0, 2]],
        Q=[[0, 0, 0, 1, 0, 0],
           [0, 2, 0, 0, 0, 1],
           [0, 0, 0, 0, -1, 0],
           [1, 0, 0, 0, 0, 0],
           [0, 0, -1, 0, 0, 0],
           [0, 1, 0, 0, 0, 1]],
        delta=1,
        b1=["x^3", "-x^2 z", "x^2 y + x z^2", "y^3", "y^2 z", "y z^2 + x y^2", "z^3 + 2 x y z"],
        b2=[[0, 0, 0, "z", "-y", 0, 0],
            [0, 0, 0, "x", "z", "-y", 0],
            [0, 0, 0, 0, "x", "z", "-y"],
            ["-z", "-x", 0, 0, 0, 0, 0],
            ["y", "-z", "-x", 0, 0, 0, 0],
            [0, "y", "-z", 0, 0, 0, "x"],
            [0, 0, "y", 0, 0, "-x", 0]],
        perfect_cubes=2,
    ),
    3: Fixture(
        index=3,
        coefficients=[((0, 2, 2), 1), ((2, 0, 2), 1), ((2, 2, 0), 1),
                      ((1, 1, 2), 2), ((1, 2, 1), 2), ((2, 1, 1), 2)],
        T=[[0, 0, 0, 1, 2, 1],
           [0, 1, 2, 0, 2, 2],
           [0, 2, 1, 2, 2, 0],
           [1, 0, 2, 0, 0, 1],
           [2, 2, 2, 0, 1, 0],
           [1, 2, 0, 1, 0, 0]],
        Q=[[27, -18, -18, 9, 18, 9],
           [-18, 18, 0, -18, 0, 18],
           [-18, 0, 18, 18, 0, -18],
           [9, -18, 18, 27, -18, 9],
           [18, 0, 0, -18, 18, -18],
           [9, 18, -18, 9, -18, 27]],
        delta=54,
        b1=["9x^3 - 18x^2 y + 18x^2 z + 27x y^2 - 18x y z + 9x z^2",
            "18x^3 - 18x y^2 + 18x y z - 18x z^2",
            "9x^3 + 18x^2 y - 18x^2 z + 9x y^2 - 18x y z + 27x z^2",
            "54y^3",
            "54y^2 z - 36x^3 + 36x^2 y + 18x^2 z - 36x y^2 - 36x y z",
            "54y z^2 - 36x^3 + 18x^2 y + 36x^2 z - 36x y z - 36x z^2",
            "54z^3"],
        b2=[[0, "-54x", "-36x", "-36x + 54z", "-36x - 54y", 0, 0],
            ["54x", 0, "-54x", 0, "54z", "-54y", 0],
            ["36x", "54x", 0, 0, 0, "36x + 54z", "36x - 54y"],
            ["36x - 54z", 0, 0, 0, "27x", "-18x", "9x"],
            ["36x + 54y", "-54z", 0, "-27x", 0, "9x", "-18x"],
            [0, "54y", "-36x - 54z", "18x", "-9x", 0, "27x"],
            [0, 0, "-36x + 54y", "-9x", "18x", "-27x", 0]],
        perfect_cubes=3,
    ),
}

# Alternating presentation of the ideal of the second fixture, in the classical
# Buchsbaum-Eisenbud shape; its maximal Pfaffians generate the same ideal.
BE_MATRIX_2 = [
    [0, "x", 0, 0, 0, 0, "z"],
    ["-x", 0, "y", 0, 0, "z", 0],
    [0, "-y", 0, "x", "z", 0, 0],
    [0, 0, "-x", 0, "y", 0, 0],
    [0, 0, "-z", "-y", 0, "x", 0],
    [0, "-z", 0, 0, "-x", 0, "y"],
    ["-z", 0, 0, 0, 0, "-y", 0],
]

# Coefficients of (y^2)*, (yz)*, (z^2)* sending b1 of the last fixture to a cube of x.
CUBE_COMBINATION_3 = ([1, 2, 1], "54x^3")


def fixture(i: int) -> Fixture:
    if i not in FIXTURES:
        raise KeyError(f"no fixture {i}; choose from {sorted(FIXTURES)}")
    return FIXTURES[i]


def expected_T(f: Fixture) -> PolyMatrix:
    basis = monomials("xyz", f.n - 1).elements
    return PolyMatrix.from_text(f.T, basis, basis)


def expected_Q(f: Fixture) -> PolyMatrix:
    basis = monomials("xyz", f.n - 1).elements
    return PolyMatrix.from_text(f.Q, basis, basis)


def expected_b1(f: Fixture) -> PolyMatrix:
    return PolyMatrix.from_text([f.b1], [UNIT], b1_basis(f.n))


def expected_b2(f: Fixture) -> PolyMatrix:
    return PolyMatrix.from_text(f.b2, b1_basis(f.n), b2_basis(f.n))


def be_matrix() -> PolyMatrix:
    labels = list(range(1, 8))
    return PolyMatrix.from_text(BE_MATRIX_2, labels, labels)


def _same(name: str, computed: PolyMatrix, expected: PolyMatrix):
    def check():
        bad = computed.mismatches(expected)
        if not bad:
            return True, f"{expected.shape[0]}x{expected.shape[1]} exact", None
        i, j = bad[0]
        return False, f"{len(bad)} entries differ", \
            f"{name}[{expected.row_labels[i]}, {expected.col_labels[j]}]: got {computed[i, j]}, " \
            f"expected {expected[i, j]}"
    return check


def compare_fixture(i: int) -> VerificationReport:
    """Rebuild fixture i from its inverse system and compare with the stored matrices."""
    f = fixture(i)
    report = VerificationReport(f"fixture {i}")
    R = build_resolution(f.inverse_system())
    C = R.catalecticant
    ring = Ring.specialized()

    report.run("T", _same("T", C.T, expected_T(f)))
    report.run("Q", _same("Q", C.Q, expected_Q(f)))
    report.run("delta", lambda: (C.delta == f.delta, f"delta = {C.delta}",
                                 None if C.delta == f.delta else f"expected {f.delta}"))
    report.run("b1", _same("b1", R.b1, expected_b1(f)))
    report.run("b2", _same("b2", R.b2, expected_b2(f)))

    if f.lambdas:
        def lambdas():
            for label, text in f.lambdas.items():
                m = next(m for m in C.basis if m.label() == label)
                if C.lambdas[m] != parse_polynomial(text, ring):
                    return False, "lambda differs", f"lambda_{label} = {C.lambdas[m]}, expected {text}"
            return True, f"{len(f.lambdas)} lambdas", None
        report.run("lambda", lambdas)

    def cubes():
        rank, forms = perfect_power_forms(f.inverse_system())
        found = ", ".join(str(form) for form in forms) or "none"
        return rank == f.perfect_cubes, f"{rank} independent cubes ({found})", \
            None if rank == f.perfect_cubes else f"expected {f.perfect_cubes}"
    report.run("perfect cubes in ann(Phi)", cubes)

    if i == 2:
        report.run("Buchsbaum-Eisenbud matrix Pfaffians = span(b1)",
                   lambda: compare_spans(maximal_pfaffians(be_matrix()), R.b1.row(0), f.n))

    if i == 3:
        def combination():
            weights, target = CUBE_COMBINATION_3
            total = ring.zero
            for w, g in zip(weights, R.b1.row(0)):
                total = total + g * w
            expected = parse_polynomial(target, ring)
            if total != expected:
                return False, "combination differs", f"got {total}, expected {target}"
            if not contract(total, f.inverse_system().phi).is_zero:
                return False, "54x^3 does not kill Phi", target
            return True, f"(y^2)* + 2(yz)* + (z^2)* -> {target}", None

        def colon():
            ours = colon_inverse_system(f.n).phi
            same = ours == f.inverse_system().phi
            return same, "colon inverse system", None if same else f"got {ours}"

        report.run("b1 combination", combination)
        report.run("colon inverse system = Phi", colon)
    return report


def compare_all() -> VerificationReport:
    report = VerificationReport("worked examples")
    for i in sorted(FIXTURES):
        report.extend(compare_fixture(i), prefix=f"[{i}] ")
    return report
