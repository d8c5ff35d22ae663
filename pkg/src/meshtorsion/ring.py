"""The Laurent ring Z[u, 1/u] and its localization R = Z[u, 1/u, 1/(1-u)].

Elements of R are stored as ``numerator / (1-u)^k`` with the numerator a
Laurent polynomial not divisible by ``1 - u`` whenever ``k > 0``. That form
is unique, so equality is structural.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .cyclotomic import Cyclotomic
from .errors import NotAUnit, OrderOne, SingularEvaluation


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in clean.items() if c))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        return self._terms[0][0]

    def max_exp(self) -> int:
        return self._terms[-1][0]

    def __add__(self, other):
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms})

    def value_at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def divide_one_minus_u(self) -> "LaurentPoly":
        """Exact quotient by (1 - u); requires the coefficient sum to vanish."""
        if self.value_at_one() != 0:
            raise ArithmeticError("not divisible by 1 - u")
        if self.is_zero():
            return self
        # p = (1 - u) q  <=>  q_e = q_{e-1} + p_e, scanning upward
        lo, hi = self.min_exp(), self.max_exp()
        p = self.terms
        q = {}
        acc = 0
        for e in range(lo, hi):
            acc += p.get(e, 0)
            q[e] = acc
        return LaurentPoly(q)

    def evaluate(self, x):
        total = 0
        for e, c in self._terms:
            total = total + c * x**e
        return total

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"LaurentPoly({render_laurent(self)!r})"


_ONE_MINUS_U = LaurentPoly({0: 1, 1: -1})


def _one_minus_u_power(k: int) -> LaurentPoly:
    out = LaurentPoly({0: 1})
    for _ in range(k):
        out = out * _ONE_MINUS_U
    return out


class RingElem:
    """Element ``numerator / (1-u)^denom_pow`` of R in canonical form."""

    __slots__ = ("numerator", "denom_pow")

    def __init__(self, numerator=None, denom_pow: int = 0):
        if numerator is None:
            numerator = LaurentPoly()
        elif isinstance(numerator, int):
            numerator = LaurentPoly({0: numerator})
        elif isinstance(numerator, dict):
            numerator = LaurentPoly(numerator)
        if denom_pow < 0:
            numerator = numerator * _one_minus_u_power(-denom_pow)
            denom_pow = 0
        if numerator.is_zero():
            denom_pow = 0
        while denom_pow > 0 and numerator.value_at_one() == 0:
            numerator = numerator.divide_one_minus_u()
            denom_pow -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denom_pow", denom_pow)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    @classmethod
    def u(cls, k: int = 1) -> "RingElem":
        return cls(LaurentPoly({k: 1}))

    @classmethod
    def one_minus_u(cls, power: int = 1) -> "RingElem":
        return cls(LaurentPoly({0: 1}), -power)

    @classmethod
    def unit(cls, sign: int, a: int, b: int) -> "RingElem":
        """The unit sign * u^a * (1-u)^b."""
        return cls(LaurentPoly({a: sign}), -b)

    def _coerce(self, other):
        if isinstance(other, RingElem):
            return other
        if isinstance(other, int):
            return RingElem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = max(self.denom_pow, other.denom_pow)
        num = self.numerator * _one_minus_u_power(k - self.denom_pow) + other.numerator * _one_minus_u_power(
            k - other.denom_pow
        )
        return RingElem(num, k)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(-self.numerator, self.denom_pow)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(self.numerator * other.numerator, self.denom_pow + other.denom_pow)

    __rmul__ = __mul__

    def inverse(self) -> "RingElem":
        unit = is_unit(self)
        if unit is None:
            raise NotAUnit(f"{render_ring(self)} is not a unit of R")
        return RingElem.unit(unit.sign, -unit.a, -unit.b)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RingElem(1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.numerator == other.numerator and self.denom_pow == other.denom_pow

    def __hash__(self):
        return hash((self.numerator, self.denom_pow))

    def __repr__(self):
        return f"RingElem({render_ring(self)!r})"

    def __str__(self):
        return render_ring(self)


ZERO = RingElem(0)
ONE = RingElem(1)
U = RingElem.u()


@dataclass(frozen=True)
class UnitUpToSign:
    """The class of +-u^u_exp (1-u)^one_minus_u_exp in U(R)/+-1."""

    u_exp: int
    one_minus_u_exp: int = 0

    def __mul__(self, other: "UnitUpToSign") -> "UnitUpToSign":
        return UnitUpToSign(self.u_exp + other.u_exp, self.one_minus_u_exp + other.one_minus_u_exp)

    def __pow__(self, k: int) -> "UnitUpToSign":
        return UnitUpToSign(self.u_exp * k, self.one_minus_u_exp * k)

    def inverse(self) -> "UnitUpToSign":
        return UnitUpToSign(-self.u_exp, -self.one_minus_u_exp)

    def to_ring(self) -> RingElem:
        return RingElem.unit(1, self.u_exp, self.one_minus_u_exp)


class Unit(NamedTuple):
    sign: int
    a: int
    b: int

    @property
    def up_to_sign(self) -> UnitUpToSign:
        return UnitUpToSign(self.a, self.b)


def is_unit(x: RingElem) -> Optional[Unit]:
    """Return (sign, a, b) with x = sign * u^a * (1-u)^b, or None.

    Units of R are exactly these: Z[u] is a UFD and only the primes u and
    1 - u (up to sign) are inverted.
    """
    num = x.numerator
    if num.is_zero():
        return None
    a = num.min_exp()
    p = num.shift(-a)
    b = 0
    while p.value_at_one() == 0:
        p = p.divide_one_minus_u()
        b += 1
    if p.terms == {0: 1}:
        return Unit(1, a, b - x.denom_pow)
    if p.terms == {0: -1}:
        return Unit(-1, a, b - x.denom_pow)
    return None


@dataclass(frozen=True)
class LocalSystem:
    """Rank one local system whose image is the group of n-th roots of unity.

    The fibre generator goes to zeta^fiber_exp; the only supported
    convention is fiber_exp = -1, so u (the inverse of the fibre class)
    evaluates to zeta.
    """

    order: int
    fiber_exp: int = -1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.fiber_exp != -1:
            raise ValueError("the fibre generator must be sent to zeta^-1")


def eval_cyclotomic(x: RingElem, rho) -> Cyclotomic:
    """The ring map R -> Q(zeta_n) sending u to zeta."""
    n = rho.order if isinstance(rho, LocalSystem) else int(rho)
    if n == 1:
        raise OrderOne("1 - zeta vanishes for n = 1; R does not map to Q(zeta_1)")
    if n < 1:
        raise ValueError("order must be positive")
    num = Cyclotomic(n)
    for e, c in x.numerator.terms.items():
        num = num + Cyclotomic.zeta(n, e) * c
    if x.denom_pow:
        den = (Cyclotomic(n, [1]) - Cyclotomic.zeta(n)) ** x.denom_pow
        num = num / den
    return num


def eval_complex(x: RingElem, theta: float) -> complex:
    """Floating evaluation at u = exp(i theta); diagnostics only."""
    z = cmath.exp(1j * theta)
    one_minus = 1 - z
    if abs(one_minus) <= 4 * 2.220446049250313e-16:
        raise SingularEvaluation(f"1 - u vanishes at theta = {theta}")
    num = sum(c * z**e for e, c in x.numerator.terms.items())
    return num / one_minus**x.denom_pow


def eval_rational(x: RingElem, at) -> Fraction:
    """Evaluate at a rational point other than 0 and 1."""
    at = Fraction(at)
    if at in (0, 1):
        raise ValueError("u must avoid 0 and 1")
    num = sum((Fraction(c) * at**e for e, c in x.numerator.terms.items()), Fraction(0))
    return num / (1 - at) ** x.denom_pow


# textual form


def render_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.terms.items():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "u" if e == 1 else f"u^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render_ring(x: RingElem) -> str:
    """Sparse Laurent numerator over ``(1-u)^-k``."""
    num = render_laurent(x.numerator)
    if x.denom_pow == 0:
        return num
    return f"({num})*(1-u)^-{x.denom_pow}"


_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*(?:\*\s*)?)?(u(?:\^(-?\d+))?)?\s*")


def parse_laurent(text: str) -> LaurentPoly:
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse term at position {pos} in {text!r}")
        if not first and not m.group(1):
            raise ValueError(f"missing operator at position {pos} in {text!r}")
        first = False
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        out[e] = out.get(e, 0) + sign * c
        pos = m.end()
    return LaurentPoly(out)


_RING_FORM = re.compile(r"^\s*\((.*)\)\s*\*\s*\(1-u\)\^-(\d+)\s*$")


def parse_ring(text: str) -> RingElem:
    """Inverse of :func:`render_ring`."""
    m = _RING_FORM.match(text)
    if m:
        return RingElem(parse_laurent(m.group(1)), int(m.group(2)))
    return RingElem(parse_laurent(text))
