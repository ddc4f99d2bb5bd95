"""
Monomial bases, the divided-power module D_N(U*) and the inverse systems Phi, Phi-tilde.

Sym(U) = Z[x,y,z] acts on D(U*) by contraction:

    x_i(m*) = (m / x_i)*   if x_i divides m, else 0

extended multiplicatively and linearly.  Only this module action is implemented;
the divided-power algebra product is never needed.
"""

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from src.errors import DegreeError, InputError
from src.polyring import Monomial, Polynomial, Ring, X, monomials_of_degree

_SCALAR_TEXT = re.compile(r"^\s*[+-]?\d+(?:\s*/\s*\d+)?\s*$")


def _normalize_vars(variables) -> str:
    names = set(variables)
    if names == {"x", "y", "z"}:
        return "xyz"
    if names == {"y", "z"}:
        return "yz"
    raise InputError(f"variables must be {{x,y,z}} or {{y,z}}, got {sorted(names)}")


@dataclass(frozen=True)
class MonomialBasis:
    vars: str
    degree: int
    elements: Tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> Monomial:
        return self.elements[i]

    def index(self, m: Monomial) -> int:
        return self._positions()[m]

    def _positions(self) -> Dict[Monomial, int]:
        return _positions(self.vars, self.degree)

    def labels(self) -> List[str]:
        return [m.label() for m in self.elements]


@lru_cache(maxsize=None)
def _positions(variables: str, degree: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(degree, variables))}


@lru_cache(maxsize=None)
def _basis(variables: str, degree: int) -> MonomialBasis:
    return MonomialBasis(variables, degree, monomials_of_degree(degree, variables))


def monomials(variables, degree: int) -> MonomialBasis:
    """Ordered monomial basis of Sym_degree over {x,y,z} or {y,z}."""
    if degree < 0:
        raise DegreeError(f"negative degree {degree}")
    return _basis(_normalize_vars(variables), degree)


def multinomial(total: int, *parts: int) -> int:
    if any(p < 0 for p in parts) or sum(parts) != total:
        raise InputError(f"multinomial({total}; {parts}) is undefined")
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def parse_scalar(value) -> Fraction:
    """Exact scalar from an int, Fraction, or a decimal-integer / "p/q" string."""
    if isinstance(value, bool):
        raise InputError(f"not a scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and _SCALAR_TEXT.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator in {value!r}")
    raise InputError(f"coefficient must be an integer or 'p/q' string, got {value!r}")


@dataclass(frozen=True)
class DividedElement:
    """Sparse element of D_N(U*): {m: coefficient}, coefficients live in `ring`."""
    ring: Ring
    degree: int
    coeffs: Dict[Monomial, Polynomial] = field(default_factory=dict)

    @classmethod
    def build(cls, ring: Ring, degree: int, coeffs: Mapping) -> "DividedElement":
        clean = {}
        for m, c in coeffs.items():
            m = Monomial.of(m)
            if m.degree != degree:
                raise InputError(f"monomial {m} has degree {m.degree}, expected {degree}")
            c = ring.coerce(c)
            if not c.is_zero:
                clean[m] = c
        return cls(ring, degree, clean)

    @classmethod
    def zero(cls, ring: Ring, degree: int) -> "DividedElement":
        return cls(ring, degree, {})

    @classmethod
    def dual(cls, m: Monomial, ring: Ring = None) -> "DividedElement":
        """The basis element m*."""
        ring = ring or Ring.specialized()
        return cls(ring, m.degree, {m: ring.one})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, m: Monomial) -> Polynomial:
        return self.coeffs.get(m, self.ring.zero)

    def scalar(self) -> Polynomial:
        """Value of a degree-0 element (the result of a full pairing)."""
        if self.degree != 0:
            raise DegreeError(f"element of degree {self.degree} is not a scalar")
        return self.coefficient(Monomial())

    def terms(self) -> List[Tuple[Monomial, Polynomial]]:
        return sorted(self.coeffs.items(), key=lambda item: item[0].sort_key)

    def _check(self, other: "DividedElement"):
        if other.degree != self.degree:
            raise DegreeError(f"degree mismatch {self.degree} vs {other.degree}")
        if other.ring != self.ring:
            raise InputError(f"ring mismatch: {self.ring.tag} vs {other.ring.tag}")

    def __add__(self, other: "DividedElement") -> "DividedElement":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return DividedElement(self.ring, self.degree, {m: c for m, c in out.items() if not c.is_zero})

    def __neg__(self) -> "DividedElement":
        return DividedElement(self.ring, self.degree, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "DividedElement") -> "DividedElement":
        return self + (-other)

    def scale(self, factor) -> "DividedElement":
        factor = self.ring.coerce(factor)
        if factor.is_zero:
            return DividedElement.zero(self.ring, self.degree)
        return DividedElement(self.ring, self.degree, {m: c * factor for m, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DividedElement):
            return NotImplemented
        return self.degree == other.degree and self.ring == other.ring and self.coeffs == other.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for m, c in self.terms():
            label = f"({m.label()})*"
            if c == 1:
                pieces.append(label)
            elif c == -1:
                pieces.append(f"-{label}")
            elif c.is_constant:
                pieces.append(f"{c}{label}")
            else:
                pieces.append(f"({c}){label}")
        return " + ".join(pieces).replace("+ -", "- ")


def _components(mu, ring: Ring) -> Dict[Monomial, Polynomial]:
    if isinstance(mu, Monomial):
        return {mu: ring.one}
    if not isinstance(mu, Polynomial):
        raise InputError(f"cannot contract with {mu!r}")
    if mu.ring != ring:
        mu = ring.coerce(mu)
    return mu.xyz_components()


def contract(mu: Union[Polynomial, Monomial], nu: DividedElement) -> DividedElement:
    """The Sym-module action mu(nu); mu must be homogeneous of degree k <= deg nu."""
    parts = _components(mu, nu.ring)
    if not parts:
        return DividedElement.zero(nu.ring, nu.degree)
    degrees = {m.degree for m in parts}
    if len(degrees) != 1:
        raise DegreeError(f"{mu} is not homogeneous")
    k = degrees.pop()
    if k > nu.degree:
        raise DegreeError(f"cannot contract a degree-{k} form into D_{nu.degree}")
    out: Dict[Monomial, Polynomial] = {}
    for m, c in parts.items():
        for w, d in nu.coeffs.items():
            if m.divides(w):
                key = w / m
                term = c * d
                out[key] = out[key] + term if key in out else term
    return DividedElement(nu.ring, nu.degree - k, {w: c for w, c in out.items() if not c.is_zero})


def pair(mu: Union[Polynomial, Monomial], nu: DividedElement) -> Polynomial:
    """Full contraction of equal-degree mu and nu: sum over m of mu_m * nu_m."""
    if isinstance(mu, Polynomial) and mu.is_zero:
        return nu.ring.zero
    result = contract(mu, nu)
    if result.degree != 0:
        raise DegreeError(f"pairing needs equal degrees, got a remainder of degree {result.degree}")
    return result.scalar()


def fourier_sym(mu: Polynomial, r: int, variables: str = "yz") -> Polynomial:
    """Sum over basis monomials m of <m*, mu> m; reproduces mu when mu lives in that basis."""
    ring = mu.ring
    out = ring.zero
    for m in monomials(variables, r):
        out = out + pair(mu, DividedElement.dual(m, ring)) * ring.monomial(m)
    return out


def fourier_dual(nu: DividedElement, r: int, variables: str = "yz") -> DividedElement:
    """Sum over basis monomials m of m(nu) m*; reproduces nu when nu lives in that basis."""
    if nu.degree != r:
        raise DegreeError(f"expected an element of D_{r}, got degree {nu.degree}")
    coeffs = {m: contract(m, nu).scalar() for m in monomials(variables, r)}
    return DividedElement.build(nu.ring, r, coeffs)


@dataclass(frozen=True)
class InverseSystem:
    n: int
    phi: DividedElement

    @property
    def ring(self) -> Ring:
        return self.phi.ring

    @property
    def generic(self) -> bool:
        return self.phi.ring.is_generic

    def coefficient(self, m: Monomial) -> Polynomial:
        """alpha_m (specialized) or t_m (generic); zero off the support or for wrong degrees."""
        return self.phi.coefficient(m)

    def __str__(self) -> str:
        return str(self.phi)


def _coefficient_items(coefficients) -> Iterable[Tuple[Monomial, Fraction]]:
    if coefficients is None:
        return []
    if isinstance(coefficients, Mapping):
        return [(Monomial.of(k), parse_scalar(v)) for k, v in coefficients.items()]
    items = []
    seen = set()
    for entry in coefficients:
        if isinstance(entry, Mapping):
            if "exponents" not in entry or "value" not in entry:
                raise InputError(f"coefficient entry needs 'exponents' and 'value': {entry!r}")
            m, value = Monomial.of(entry["exponents"]), entry["value"]
        else:
            try:
                exps, value = entry
            except (TypeError, ValueError):
                raise InputError(f"cannot read coefficient entry {entry!r}")
            m = Monomial.of(exps)
        if m in seen:
            raise InputError(f"duplicate exponent triple {list(m.exponents)}")
        seen.add(m)
        items.append((m, parse_scalar(value)))
    return items


def build_phi(n: int, coefficients=None, generic: bool = False) -> InverseSystem:
    """
    Inverse system of degree 2n-2.

    Args:
        n: half the degree plus one; at least 2
        coefficients: mapping or list of (exponents, value) / {"exponents", "value"} entries
        generic: use t_m as the coefficient of every m* instead
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")
    degree = 2 * n - 2
    if generic:
        if coefficients:
            raise InputError("generic inverse systems take no coefficients")
        ring = Ring.generic(n)
        coeffs = {m: ring.t(m) for m in monomials("xyz", degree)}
        return InverseSystem(n, DividedElement(ring, degree, coeffs))
    ring = Ring.specialized()
    coeffs = {}
    for m, value in _coefficient_items(coefficients):
        if m.degree != degree:
            raise InputError(f"monomial {m} has degree {m.degree}; n={n} needs degree {degree}")
        coeffs[m] = value
    return InverseSystem(n, DividedElement.build(ring, degree, coeffs))


def build_phi_tilde(inverse_system: InverseSystem) -> DividedElement:
    """Phi-tilde = sum_m Phi(m) (xm)*, so that x(Phi-tilde) = Phi."""
    phi = inverse_system.phi
    return DividedElement(phi.ring, phi.degree + 1, {X * m: c for m, c in phi.coeffs.items()})


def colon_inverse_system(n: int) -> InverseSystem:
    """Inverse system of (x^n, y^n, z^n) : (x+y+z)^(n-1)."""
    if not isinstance(n, int) or n < 2:
        raise InputError(f"n must be an integer >= 2, got {n!r}")
    k = n - 1
    coeffs = {}
    for a in range(k + 1):
        for b in range(k - a + 1):
            c = k - a - b
            coeffs[Monomial(k - a, k - b, k - c)] = multinomial(k, a, b, c)
    return build_phi(n, coeffs)


# --- JSON input ---

def parse_inverse_system(data) -> InverseSystem:
    if not isinstance(data, Mapping):
        raise InputError("inverse system JSON must be an object")
    if "n" not in data:
        raise InputError("inverse system JSON is missing 'n'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"'n' must be an integer, got {n!r}")
    coefficients = data.get("coefficients", [])
    if not isinstance(coefficients, list):
        raise InputError("'coefficients' must be a list")
    return build_phi(n, coefficients)


def load_inverse_system(path: str) -> InverseSystem:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
    except (UnicodeDecodeError, OSError) as e:
        raise InputError(f"cannot read {path}: {e}")
    return parse_inverse_system(data)


def inverse_system_to_dict(inverse_system: InverseSystem) -> Dict:
    if inverse_system.generic:
        raise InputError("only specialized inverse systems have a JSON input form")
    entries = []
    for m, c in inverse_system.phi.terms():
        entries.append({"exponents": list(m.exponents), "value": str(c.constant_value())})
    return {"n": inverse_system.n, "coefficients": entries}
