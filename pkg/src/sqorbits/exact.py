"""Exact rational arithmetic helpers.

``fractions.Fraction`` is the scalar type throughout the package: it is
immutable, always stored in lowest terms with a positive denominator, and
backed by arbitrary-precision integers.  This module adds the pieces the rest
of the package needs on top of it: exact square roots, a tiny dense
univariate polynomial type and the ``"num/den"`` text format.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused on purpose: they are lossy.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational in num/den form: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: RationalLike) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def int_sqrt(n: int) -> Tuple[int, bool]:
    """Return ``(floor(sqrt(n)), is_exact)`` for a nonnegative integer."""
    if n < 0:
        raise ValueError("int_sqrt of a negative integer")
    r = math.isqrt(n)
    return r, r * r == n


def sqrt_exact(q: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q``, or None if there is none.

    In lowest terms u/v is a square iff u >= 0 and u, v are both integer
    squares.
    """
    q = to_rational(q)
    if q < 0:
        return None
    rn, ok = int_sqrt(q.numerator)
    if not ok:
        return None
    rd, ok = int_sqrt(q.denominator)
    if not ok:
        return None
    return Fraction(rn, rd)


def is_square(q: RationalLike) -> bool:
    return sqrt_exact(q) is not None


def height(q: RationalLike) -> int:
    """max(|num|, den) in lowest terms."""
    q = to_rational(q)
    return max(abs(q.numerator), q.denominator)


def bit_size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def rationals_of_height(bound: int, positive_only: bool = False) -> list[Fraction]:
    """All rationals of height <= bound, sorted, without duplicates."""
    out = set()
    for den in range(1, bound + 1):
        for num in range(0 if positive_only else -bound, bound + 1):
            if positive_only and num == 0:
                continue
            if math.gcd(num, den) == 1:
                out.add(Fraction(num, den))
    return sorted(out)


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over Q, lowest-degree coefficient first."""

    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: Union["UniPoly", RationalLike]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            k = to_rational(other)
            return UniPoly(c * k for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        while len(rem) >= len(other.coeffs) and any(rem):
            shift = len(rem) - len(other.coeffs)
            factor = rem[-1] / lead
            quot[shift] = factor
            for k, c in enumerate(other.coeffs):
                rem[shift + k] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def monic(self) -> "UniPoly":
        return self * (1 / self.leading) if not self.is_zero() else self

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def shift(self, h: RationalLike) -> "UniPoly":
        """The polynomial x -> p(x + h)."""
        h = to_rational(h)
        acc = UniPoly()
        lin = UniPoly([h, 1])
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly([c])
        return acc

    def reversed(self, degree: int) -> "UniPoly":
        """x^degree * p(1/x) for a declared degree >= self.degree."""
        if degree < self.degree:
            raise ValueError("declared degree below actual degree")
        return UniPoly(self.coeff(degree - k) for k in range(degree + 1))


def rational_roots(coeffs: Sequence[RationalLike]) -> list[Fraction]:
    """All distinct rational roots of a polynomial (lowest degree first).

    Clears denominators and applies the rational root theorem; the candidate
    divisors are found by trial division, which is adequate for the modest
    coefficients seen in cycle recovery.
    """
    poly = UniPoly(coeffs)
    if poly.is_zero():
        raise ValueError("every rational is a root of the zero polynomial")
    cs = list(poly.coeffs)
    roots = [Fraction(0)] if cs[0] == 0 else []
    while cs[0] == 0:
        cs.pop(0)
    if len(cs) <= 1:
        return roots
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    deg = len(ints) - 1
    at_one, at_minus_one = sum(ints), sum(c * (-1) ** k for k, c in enumerate(ints))
    dens = _divisors(abs(ints[-1]))
    for num in _divisors(abs(ints[0])):
        for den in dens:
            if math.gcd(num, den) != 1:
                continue
            for n in (num, -num):
                # a root n/den forces (den - n) | p(1) and (den + n) | p(-1)
                if den != n and at_one % (den - n):
                    continue
                if den != -n and at_minus_one % (den + n):
                    continue
                if sum(c * n ** k * den ** (deg - k) for k, c in enumerate(ints)) == 0:
                    roots.append(Fraction(n, den))
    return sorted(set(roots))


def _factorize(n: int) -> dict:
    """Trial division; the cofactor shrinks as factors are removed."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    if n == 0:
        raise ValueError("divisors of zero")
    divs = [1]
    for prime, mult in _factorize(n).items():
        divs = [d * prime ** k for d in divs for k in range(mult + 1)]
    return sorted(divs)
