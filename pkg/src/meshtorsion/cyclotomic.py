"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are rational coefficient vectors in the power basis
1, z, ..., z^(phi(n)-1) where z is the primitive root exp(2*pi*i/n).
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

# Dense polynomials are lists of coefficients, lowest degree first.


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _poly_divmod(p, q):
    """Quotient and remainder over Q; q must be nonzero."""
    p = [Fraction(c) for c in _trim(p)]
    q = _trim(q)
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        factor = p[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(q):
            p[i + shift] -= factor * c
        p = _trim(p)
    return _trim(quot), p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, via (x^n - 1) / prod_{d | n, d < n} Phi_d."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            quot, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
            num = quot
    return tuple(int(c) for c in num)


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(p, n):
    """Reduce a dense polynomial modulo Phi_n into a length-phi(n) tuple."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    p = [Fraction(c) for c in p]
    # Phi_n is monic, so this stays exact over the integers.
    for top in range(len(p) - 1, deg - 1, -1):
        c = p[top]
        if c:
            shift = top - deg
            for i, a in enumerate(phi):
                p[i + shift] -= c * a
    p = p[:deg] + [Fraction(0)] * max(0, deg - len(p))
    return tuple(p)


class Cyclotomic:
    """An element of Q(zeta_n) reduced modulo the n-th cyclotomic polynomial."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        if order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", _reduce(list(coeffs), order))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # constructors

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclotomic":
        """The root z^power, with the exponent reduced mod n first."""
        e = power % n
        return cls(n, [0] * e + [1])

    @classmethod
    def from_rational(cls, n: int, q) -> "Cyclotomic":
        return cls(n, [Fraction(q)])

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

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
        return Cyclotomic(self.order, _poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_n is irreducible
        c = r1[0]
        return Cyclotomic(self.order, [a / c for a in s1])

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
        result = Cyclotomic(self.order, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(self.order, [other])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(complex(c) * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Cyclotomic({self.order}, {render_cyclotomic(self)!r})"

    def __str__(self):
        return render_cyclotomic(self)


def cyc_equal_up_to_sign(x: Cyclotomic, y: Cyclotomic) -> bool:
    if x.order != y.order:
        raise ValueError("elements of different cyclotomic fields")
    return x == y or x == -y


def render_cyclotomic(x: Cyclotomic) -> str:
    """Render as ``c0 + c1*z + c2*z^2`` where z is the primitive n-th root."""
    terms = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = "z" if k == 1 else f"z^{k}"
        else:
            body = f"{mag}*z" if k == 1 else f"{mag}*z^{k}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_CYC_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*)?)?(z(?:\^(\d+))?)?\s*")


def parse_cyclotomic(text: str, n: int) -> Cyclotomic:
    """Inverse of :func:`render_cyclotomic` for the field of order ``n``."""
    s = text.strip()
    if not s:
        raise ValueError("empty cyclotomic expression")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _CYC_TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse cyclotomic term at position {pos} in {text!r}")
        if not first and not m.group(1):
            raise ValueError(f"missing operator at position {pos} in {text!r}")
        first = False
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        pos = m.end()
    dense = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        dense[k] += c
    return Cyclotomic(n, dense)
