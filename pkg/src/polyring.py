"""
Exact sparse arithmetic in the bi-graded ring

    R = Z[x, y, z, {t_m : m a monomial of degree 2n-2}]

and in its specialization Q[x, y, z].

The heavy lifting (sparse dict-of-monomials multiplication, exact division) is
done by sympy's `PolyRing`; this module adds the pieces the resolution code
needs on top: monomial bookkeeping in x, y, z, the t-variables indexed by
monomials, the (xyz-degree, t-degree) bi-grading, specialization of the
t-variables to rationals, and a deterministic text form.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Integral
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from src.errors import InputError

Scalar = Union[int, Fraction]

_VARS = "xyz"


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """x^a y^b z^c.  Ordering is graded-lex with x > y > z, "smaller" = listed first."""
    a: int = 0
    b: int = 0
    c: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise InputError(f"negative exponent in monomial {self.exponents}")

    @classmethod
    def of(cls, exponents) -> "Monomial":
        if isinstance(exponents, Monomial):
            return exponents
        if isinstance(exponents, (str, bytes)):
            raise InputError(f"expected an exponent triple, got {exponents!r}")
        try:
            a, b, c = exponents
        except (TypeError, ValueError):
            raise InputError(f"expected an exponent triple, got {exponents!r}")
        for e in (a, b, c):
            if not isinstance(e, Integral) or isinstance(e, bool):
                raise InputError(f"exponents must be integers, got {exponents!r}")
        return cls(int(a), int(b), int(c))

    @property
    def exponents(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (-self.degree, -self.a, -self.b, -self.c)

    def __lt__(self, other: "Monomial") -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.a + other.a, self.b + other.b, self.c + other.c)

    def divides(self, other: "Monomial") -> bool:
        return self.a <= other.a and self.b <= other.b and self.c <= other.c

    def __truediv__(self, other: "Monomial") -> "Monomial":
        # Callers guard with divides(); a non-divisor trips the negative-exponent check.
        return Monomial(self.a - other.a, self.b - other.b, self.c - other.c)

    def label(self) -> str:
        if self.degree == 0:
            return "1"
        out = []
        for var, e in zip(_VARS, self.exponents):
            if e == 1:
                out.append(var)
            elif e > 1:
                out.append(f"{var}^{e}")
        return "".join(out)

    def __str__(self) -> str:
        return self.label()


ONE = Monomial(0, 0, 0)
X = Monomial(1, 0, 0)
Y = Monomial(0, 1, 0)
Z = Monomial(0, 0, 1)


@lru_cache(maxsize=None)
def monomials_of_degree(degree: int, variables: str = "xyz") -> Tuple[Monomial, ...]:
    """All monomials of the given degree in `variables`, in graded-lex order."""
    if degree < 0:
        return ()
    if variables == "xyz":
        out = [Monomial(a, b, degree - a - b)
               for a in range(degree, -1, -1)
               for b in range(degree - a, -1, -1)]
    elif variables == "yz":
        out = [Monomial(0, b, degree - b) for b in range(degree, -1, -1)]
    else:
        raise InputError(f"unsupported variable set {variables!r} (use 'xyz' or 'yz')")
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class TVar:
    """The generic coefficient t_m of m* in Phi; bi-degree (0, 1)."""
    index: Monomial

    @property
    def name(self) -> str:
        a, b, c = self.index.exponents
        return f"t_{{{a}_{b}_{c}}}"

    @property
    def symbol_name(self) -> str:
        a, b, c = self.index.exponents
        return f"t_{a}_{b}_{c}"

    def __lt__(self, other: "TVar") -> bool:
        if not isinstance(other, TVar):
            return NotImplemented
        return self.index < other.index

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class BiDegree:
    d1: int
    d2: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.d1 - other.d1, self.d2 - other.d2)

    def __neg__(self) -> "BiDegree":
        return BiDegree(-self.d1, -self.d2)

    def __str__(self) -> str:
        return f"({self.d1},{self.d2})"


class _NotHomogeneous:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotHomogeneous"


NOT_HOMOGENEOUS = _NotHomogeneous()


def _to_fraction(domain, coeff) -> Scalar:
    value = domain.to_sympy(coeff)
    num, den = int(value.p), int(value.q)
    return num if den == 1 else Fraction(num, den)


class Ring:
    """
    A coefficient ring tag plus the sympy ring that does the arithmetic.

    n=None  -> specialized Q[x, y, z]
    n>=2    -> generic Z[x, y, z, {t_m : deg m = 2n-2}]
    """

    def __init__(self, n: Optional[int] = None):
        if n is not None and n < 2:
            raise InputError(f"n must be at least 2, got {n}")
        self.n = n
        if n is None:
            self.tvars: Tuple[TVar, ...] = ()
            self.domain = QQ
        else:
            self.tvars = tuple(TVar(m) for m in monomials_of_degree(2 * n - 2))
            self.domain = ZZ
        names = list(_VARS) + [t.symbol_name for t in self.tvars]
        self._sym = PolyRing(",".join(names), self.domain, grlex)
        self._slot = {t: 3 + i for i, t in enumerate(self.tvars)}
        self._width = 3 + len(self.tvars)

    @staticmethod
    @lru_cache(maxsize=None)
    def specialized() -> "Ring":
        return Ring(None)

    @staticmethod
    @lru_cache(maxsize=None)
    def generic(n: int) -> "Ring":
        return Ring(n)

    @property
    def is_generic(self) -> bool:
        return self.n is not None

    @property
    def tag(self) -> str:
        if self.n is None:
            return "QQ[x,y,z]"
        return f"ZZ[x,y,z,t] (n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("Ring", self.n))

    def __repr__(self) -> str:
        return f"Ring({self.tag})"

    # --- element construction ---

    def coerce_scalar(self, value: Scalar):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.domain(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return self.domain(value.numerator)
            if self.domain is ZZ:
                raise InputError(f"non-integer scalar {value} in {self.tag}")
            return QQ(value.numerator, value.denominator)
        raise InputError(f"unsupported scalar {value!r}")

    def _wrap(self, rep) -> "Polynomial":
        return Polynomial(self, rep)

    @property
    def zero(self) -> "Polynomial":
        return self._wrap(self._sym.zero)

    @property
    def one(self) -> "Polynomial":
        return self._wrap(self._sym.one)

    def constant(self, value: Scalar) -> "Polynomial":
        return self._wrap(self._sym.ground_new(self.coerce_scalar(value)))

    def monomial(self, m: Monomial, coeff: Scalar = 1) -> "Polynomial":
        m = Monomial.of(m)
        exps = m.exponents + (0,) * len(self.tvars)
        return self._from_exponent_dict({exps: coeff})

    @property
    def x(self) -> "Polynomial":
        return self.monomial(X)

    @property
    def y(self) -> "Polynomial":
        return self.monomial(Y)

    @property
    def z(self) -> "Polynomial":
        return self.monomial(Z)

    def t(self, index) -> "Polynomial":
        tvar = index if isinstance(index, TVar) else TVar(Monomial.of(index))
        if tvar not in self._slot:
            raise InputError(f"{tvar} is not a variable of {self.tag}")
        exps = [0] * self._width
        exps[self._slot[tvar]] = 1
        return self._from_exponent_dict({tuple(exps): 1})

    def coerce(self, value) -> "Polynomial":
        """Bring a scalar, or a t-free polynomial of another ring, into this ring."""
        if not isinstance(value, Polynomial):
            return self.constant(value)
        if value.ring == self:
            return value
        acc = {}
        pad = (0,) * len(self.tvars)
        for exps, c in value.raw_terms():
            if any(exps[3:]):
                raise InputError(f"cannot move {value} into {self.tag}: it involves t-variables")
            acc[tuple(exps[:3]) + pad] = c
        return self._from_exponent_dict(acc)

    def from_xyz_dict(self, coeffs: Mapping[Monomial, Scalar]) -> "Polynomial":
        pad = (0,) * len(self.tvars)
        return self._from_exponent_dict({Monomial.of(m).exponents + pad: c for m, c in coeffs.items()})

    def _from_exponent_dict(self, coeffs: Mapping[tuple, Scalar]) -> "Polynomial":
        converted = {}
        for exps, c in coeffs.items():
            if c == 0:
                continue
            converted[tuple(exps)] = self.coerce_scalar(c)
        return self._wrap(self._sym.from_dict(converted))


class Polynomial:
    """Immutable element of a `Ring`; arithmetic delegates to sympy's sparse polynomials."""

    __slots__ = ("ring", "_rep")

    def __init__(self, ring: Ring, rep):
        self.ring = ring
        self._rep = rep

    def _other_rep(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring.tag} vs {other.ring.tag}")
            return other._rep
        if isinstance(other, (int, Fraction)):
            return self.ring._sym.ground_new(self.ring.coerce_scalar(other))
        return None

    def __add__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Polynomial(self.ring, self._rep + rep)

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Polynomial(self.ring, self._rep - rep)

    def __rsub__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Polynomial(self.ring, rep - self._rep)

    def __mul__(self, other):
        rep = self._other_rep(other)
        if rep is None:
            return NotImplemented
        return Polynomial(self.ring, self._rep * rep)

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(self.ring, -self._rep)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"exponent must be a non-negative integer, got {exponent!r}")
        return Polynomial(self.ring, self._rep ** exponent)

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; the caller guarantees divisibility (Bareiss steps)."""
        rep = self._other_rep(other)
        return Polynomial(self.ring, self._rep.exquo(rep))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return other.ring == self.ring and self._rep == other._rep
        if isinstance(other, (int, Fraction)):
            try:
                scalar = self.ring.coerce_scalar(other)
            except InputError:
                return False
            return self._rep == self.ring._sym.ground_new(scalar)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._rep.items())))

    def __bool__(self) -> bool:
        return bool(self._rep)

    @property
    def is_zero(self) -> bool:
        return not self._rep

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._rep)

    def constant_value(self) -> Scalar:
        if not self.is_constant:
            raise InputError(f"{self} is not a constant")
        if not self._rep:
            return 0
        return _to_fraction(self.ring.domain, self._rep[(0,) * self.ring._width])

    def raw_terms(self) -> Iterable[Tuple[tuple, Scalar]]:
        domain = self.ring.domain
        for exps, c in self._rep.items():
            yield exps, _to_fraction(domain, c)

    def terms(self) -> List[Tuple[Scalar, Monomial, Tuple[Tuple[TVar, int], ...]]]:
        """(coefficient, xyz monomial, t-factors) in canonical order."""
        tvars = self.ring.tvars
        out = []
        for exps, c in self.raw_terms():
            tpart = tuple((tvars[i], e) for i, e in enumerate(exps[3:]) if e)
            out.append((c, Monomial(*exps[:3]), tpart))
        out.sort(key=lambda term: (term[1].sort_key, _tkey(term[2])))
        return out

    def xyz_components(self) -> Dict[Monomial, "Polynomial"]:
        """Group terms by their x,y,z part: {m: coefficient polynomial in t only}."""
        groups: Dict[tuple, dict] = {}
        for exps, c in self._rep.items():
            groups.setdefault(exps[:3], {})[(0, 0, 0) + exps[3:]] = c
        sym = self.ring._sym
        return {Monomial(*k): Polynomial(self.ring, sym.from_dict(v)) for k, v in groups.items()}

    def coefficient(self, m: Monomial) -> "Polynomial":
        return self.xyz_components().get(Monomial.of(m), self.ring.zero)

    def as_xyz_dict(self) -> Dict[Monomial, Scalar]:
        """Coefficients of a t-free polynomial keyed by xyz monomial."""
        out = {}
        for exps, c in self.raw_terms():
            if any(exps[3:]):
                raise InputError(f"{self} still involves t-variables")
            out[Monomial(*exps[:3])] = c
        return out

    def bidegree(self):
        return bidegree(self)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, {self.ring.tag})"


def _tkey(tpart: Tuple[Tuple[TVar, int], ...]) -> tuple:
    expanded = []
    for tvar, e in tpart:
        expanded.extend([tvar.index.sort_key] * e)
    return tuple(expanded)


# --- operations ---

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise InputError("add expects two polynomials")
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise InputError("mul expects two polynomials")
    return p * q


def bidegree(p: Polynomial):
    """(xyz-degree, t-degree) of a bihomogeneous polynomial; None for 0."""
    seen = set()
    for exps in p._rep:
        seen.add((sum(exps[:3]), sum(exps[3:])))
        if len(seen) > 1:
            return NOT_HOMOGENEOUS
    if not seen:
        return None
    d1, d2 = seen.pop()
    return BiDegree(d1, d2)


def specialize(p: Polynomial, assignment: Mapping) -> Polynomial:
    """
    Ring map R -> Q[x,y,z] fixing x, y, z and sending t_m to assignment[t_m].
    Keys may be TVar or Monomial; missing t-variables go to 0.
    """
    target = Ring.specialized()
    if not p.ring.is_generic:
        return p
    values = {}
    for key, value in assignment.items():
        tvar = key if isinstance(key, TVar) else TVar(Monomial.of(key))
        values[tvar] = Fraction(value)
    row = [values.get(t, Fraction(0)) for t in p.ring.tvars]
    acc: Dict[tuple, Fraction] = {}
    for exps, c in p.raw_terms():
        value = Fraction(c)
        for v, e in zip(row, exps[3:]):
            if e:
                value *= v ** e
                if not value:
                    break
        if value:
            key = exps[:3]
            acc[key] = acc.get(key, Fraction(0)) + value
    return target._from_exponent_dict(acc)


# --- text form ---

def _format_term_body(magnitude: Scalar, m: Monomial, tpart) -> str:
    parts = []
    xyz = " ".join(var if e == 1 else f"{var}^{e}" for var, e in zip(_VARS, m.exponents) if e)
    tstr = " ".join(t.name if e == 1 else f"{t.name}^{e}" for t, e in tpart)
    if magnitude != 1 or not (xyz or tstr):
        parts.append(str(magnitude))
    if xyz:
        parts.append(xyz)
    if tstr:
        parts.append(tstr)
    return " * ".join(parts)


def format_polynomial(p: Polynomial) -> str:
    terms = p.terms()
    if not terms:
        return "0"
    out = []
    for i, (c, m, tpart) in enumerate(terms):
        body = _format_term_body(abs(c), m, tpart)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


_FACTOR = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<var>[xyz])(?:\^(?P<vexp>\d+))?"
    r"|t_\{?(?P<ta>\d+)_(?P<tb>\d+)_(?P<tc>\d+)\}?(?:\^(?P<texp>\d+))?"
    r")\s*"
)


def _parse_term(body: str, sign: int, ring: Ring) -> Tuple[tuple, Fraction]:
    text = body.replace("*", " ").strip()
    coeff = Fraction(sign)
    exps = [0] * ring._width
    pos = 0
    if not text:
        raise InputError("empty term in polynomial text")
    while pos < len(text):
        match = _FACTOR.match(text, pos)
        if not match or match.end() == pos:
            raise InputError(f"cannot parse polynomial term {body.strip()!r}")
        if match.group("num"):
            coeff *= Fraction(match.group("num"))
        elif match.group("var"):
            exps[_VARS.index(match.group("var"))] += int(match.group("vexp") or 1)
        else:
            index = Monomial(int(match.group("ta")), int(match.group("tb")), int(match.group("tc")))
            tvar = TVar(index)
            if tvar not in ring._slot:
                raise InputError(f"{tvar} is not a variable of {ring.tag}")
            exps[ring._slot[tvar]] += int(match.group("texp") or 1)
        pos = match.end()
    return tuple(exps), coeff


def parse_polynomial(text: str, ring: Ring = None) -> Polynomial:
    """Inverse of format_polynomial; also accepts `*` or juxtaposition between factors."""
    ring = ring or Ring.specialized()
    if not isinstance(text, str) or not text.strip():
        raise InputError("empty polynomial text")
    acc: Dict[tuple, Fraction] = {}
    sign = 1
    pending = False
    for piece in re.split(r"([+-])", text):
        if piece in ("+", "-"):
            if piece == "-":
                sign = -sign
            pending = True
            continue
        if not piece.strip():
            continue
        exps, coeff = _parse_term(piece, sign, ring)
        acc[exps] = acc.get(exps, Fraction(0)) + coeff
        sign = 1
        pending = False
    if pending:
        raise InputError(f"dangling sign in polynomial text {text!r}")
    return ring._from_exponent_dict(acc)
