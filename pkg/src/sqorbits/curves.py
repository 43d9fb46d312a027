"""Elliptic curves over Q and birational maps from quartic models.

The quartic-to-Weierstrass step uses the classical explicit map for
v^2 = a t^4 + b t^3 + c t^2 + d t + q^2 (q != 0):

    x = (2q(v + q) + d t) / t^2
    y = (4q^2 (v + q) + 2q(d t + c t^2) - d^2 t^2 / (2q)) / t^3

onto y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a1 = d/q,
a2 = c - d^2/(4q^2), a3 = 2qb, a4 = -4q^2 a, a6 = a2 a4.  A quartic with a
square leading coefficient is first reversed (t = 1/u); one with an affine
point (u0, v0), v0 != 0, is translated (t = u - u0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import (
    ExceptionalPointError,
    NotOnCurveError,
    SingularCurveError,
    UnsupportedQuarticError,
)
from .exact import (
    RationalLike,
    UniPoly,
    format_rational,
    parse_rational,
    rationals_of_height,
    sqrt_exact,
    to_rational,
)

MAZUR_BOUND = 12


@dataclass(frozen=True)
class ECPoint:
    """An affine point (x, y), or the point at infinity when both are None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", to_rational(self.x))
            object.__setattr__(self, "y", to_rational(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def to_dict(self) -> dict:
        if self.is_infinity:
            return {"inf": True}
        return {"x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_dict(cls, d: dict) -> "ECPoint":
        if d.get("inf"):
            return INFINITY
        return cls(parse_rational(d["x"]), parse_rational(d["y"]))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "ECPoint(inf)"
        return f"ECPoint({format_rational(self.x)}, {format_rational(self.y)})"


INFINITY = ECPoint()


@dataclass(frozen=True)
class LongWeierstrass:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError(f"singular Weierstrass model {self}")

    @property
    def b_invariants(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def c4(self) -> Fraction:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @property
    def j_invariant(self) -> Fraction:
        return self.c4 ** 3 / self.discriminant

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return y * y + self.a1 * x * y + self.a3 * y == ((x + self.a2) * x + self.a4) * x + self.a6

    def negate(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        return ECPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def to_dict(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("a1", "a2", "a3", "a4", "a6")}

    @classmethod
    def from_dict(cls, d: dict) -> "LongWeierstrass":
        return cls(*(parse_rational(d[k]) for k in ("a1", "a2", "a3", "a4", "a6")))


def _check(E: LongWeierstrass, P: ECPoint) -> None:
    if not E.contains(P):
        raise NotOnCurveError(f"{P!r} is not on {E}")


def ec_add(E: LongWeierstrass, P: ECPoint, Q: ECPoint) -> ECPoint:
    _check(E, P)
    _check(E, Q)
    return _add(E, P, Q)


def _add(E: LongWeierstrass, P: ECPoint, Q: ECPoint) -> ECPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = E.a1, E.a2, E.a3, E.a4, E.a6
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    return ECPoint(x3, -(lam + a1) * x3 - nu - a3)


def ec_mul(E: LongWeierstrass, n: int, P: ECPoint) -> ECPoint:
    """n-fold sum by double-and-add; negative n multiplies the negation."""
    _check(E, P)
    if n < 0:
        return ec_mul(E, -n, E.negate(P))
    acc, base = INFINITY, P
    while n:
        if n & 1:
            acc = _add(E, acc, base)
        base = _add(E, base, base)
        n >>= 1
    return acc


def torsion_order(E: LongWeierstrass, P: ECPoint) -> Optional[int]:
    """Least n <= 12 with nP = O, or None.  None certifies infinite order."""
    _check(E, P)
    Q = P
    for n in range(1, MAZUR_BOUND + 1):
        if Q.is_infinity:
            return n
        Q = _add(E, Q, P)
    return None


def mazur_infinite_order(E: LongWeierstrass, P: ECPoint) -> bool:
    if P.is_infinity:
        raise ValueError("the identity has finite order by definition")
    return torsion_order(E, P) is None


@dataclass(frozen=True)
class QuarticPoint:
    """A point of v^2 = quartic(u).

    ``u is None`` denotes a point at infinity; ``v`` is then the branch value
    lim v/u^2, one of the square roots of the leading coefficient.
    """

    u: Optional[Fraction]
    v: Fraction

    def __post_init__(self):
        if self.u is not None:
            object.__setattr__(self, "u", to_rational(self.u))
        object.__setattr__(self, "v", to_rational(self.v))

    @property
    def at_infinity(self) -> bool:
        return self.u is None


class _AtInfinity:
    def __repr__(self) -> str:
        return "AT_INFINITY"


AT_INFINITY = _AtInfinity()


@dataclass(frozen=True)
class QuarticModel:
    """v^2 = c4 u^4 + c3 u^3 + c2 u^2 + c1 u + c0 with a known rational point."""

    c4: Fraction
    c3: Fraction
    c2: Fraction
    c1: Fraction
    c0: Fraction
    ratpoint: QuarticPoint

    def __post_init__(self):
        for name in ("c4", "c3", "c2", "c1", "c0"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if not self.is_nonsingular():
            raise SingularCurveError("quartic has a repeated root")
        if not self.contains(self.ratpoint):
            raise NotOnCurveError(f"{self.ratpoint} is not on the quartic")

    @property
    def poly(self) -> UniPoly:
        return UniPoly([self.c0, self.c1, self.c2, self.c3, self.c4])

    def is_nonsingular(self) -> bool:
        p = self.poly
        return p.degree in (3, 4) and p.is_squarefree()

    def __call__(self, u: RationalLike) -> Fraction:
        return self.poly(u)

    def contains(self, pt: QuarticPoint) -> bool:
        if pt.at_infinity:
            return pt.v * pt.v == self.c4
        return pt.v * pt.v == self.poly(pt.u)

    def points_at_infinity(self) -> list:
        e = sqrt_exact(self.c4)
        if e is None:
            return []
        return [QuarticPoint(None, e)] if e == 0 else [QuarticPoint(None, e), QuarticPoint(None, -e)]


# Working coordinates (t, w) with w^2 = a t^4 + b t^3 + c t^2 + d t + q^2.
# A working point with t = None is at infinity with branch w/t^2 -> w.


@dataclass(frozen=True)
class BirationalCorrespondence:
    """Mutually inverse maps between a quartic model and a Weierstrass curve.

    ``route`` is ``"reverse"`` (t = 1/u, base at infinity) or ``"translate"``
    (t = u - u0, affine base).  The base point maps to an affine point of E;
    the point with the same u and opposite v (origin) maps to O.
    """

    model: QuarticModel
    base: QuarticPoint
    route: str
    u0: Fraction
    wa: Fraction
    wb: Fraction
    wc: Fraction
    wd: Fraction
    q: Fraction
    curve: LongWeierstrass = field(init=False)
    exceptional_points: tuple = field(init=False)

    def __post_init__(self):
        q, wa, wb, wc, wd = self.q, self.wa, self.wb, self.wc, self.wd
        a2 = wc - wd * wd / (4 * q * q)
        a4 = -4 * q * q * wa
        E = LongWeierstrass(wd / q, a2, 2 * q * wb, a4, a2 * a4)
        object.__setattr__(self, "curve", E)
        exc = [(INFINITY, self.origin), (self.special_point, self.base)]
        exc.append((E.negate(self.special_point), self.backward(E.negate(self.special_point))))
        for pt in self.model.points_at_infinity():
            if pt not in (self.base, self.origin):
                exc.append((self.forward(pt), pt))
        e = sqrt_exact(wa)
        if e is not None:
            for br in {e, -e}:
                P = ECPoint(2 * q * br, 0)
                exc.append((P, self.backward(P)))
        object.__setattr__(self, "exceptional_points", tuple(dict(exc).items()))

    @property
    def origin(self) -> QuarticPoint:
        return QuarticPoint(self.base.u, -self.base.v)

    @property
    def special_point(self) -> ECPoint:
        q, wb, wc, wd = self.q, self.wb, self.wc, self.wd
        return ECPoint(-wc + wd * wd / (4 * q * q), -2 * q * wb + wc * wd / q - wd ** 3 / (4 * q ** 3))

    def _to_working(self, pt: QuarticPoint) -> Tuple[Optional[Fraction], Fraction]:
        if self.route == "reverse":
            if pt.at_infinity:
                return Fraction(0), pt.v
            if pt.u == 0:
                return None, pt.v
            return 1 / pt.u, pt.v / (pt.u * pt.u)
        if pt.at_infinity:
            return None, pt.v
        return pt.u - self.u0, pt.v

    def _from_working(self, t: Optional[Fraction], w: Fraction) -> QuarticPoint:
        if self.route == "reverse":
            if t is None:
                return QuarticPoint(Fraction(0), w)
            if t == 0:
                return QuarticPoint(None, w)
            return QuarticPoint(1 / t, w / (t * t))
        if t is None:
            return QuarticPoint(None, w)
        return QuarticPoint(t + self.u0, w)

    def forward(self, pt: QuarticPoint) -> ECPoint:
        if not self.model.contains(pt):
            raise NotOnCurveError(f"{pt} is not on the quartic")
        t, w = self._to_working(pt)
        q = self.q
        if t is None:
            return ECPoint(2 * q * w, 0)
        if t == 0:
            return INFINITY if w == q else self.special_point
        x = (2 * q * (w + q) + self.wd * t) / (t * t)
        y = (4 * q * q * (w + q) + 2 * q * (self.wd * t + self.wc * t * t)
             - self.wd ** 2 * t * t / (2 * q)) / t ** 3
        return ECPoint(x, y)

    def backward(self, P: ECPoint) -> QuarticPoint:
        E = self.curve
        _check(E, P)
        if P.is_infinity:
            return self.origin
        if P == self.special_point:
            return self.base
        q, wa, wb, wc, wd = self.q, self.wa, self.wb, self.wc, self.wd
        X, Y = P.x, P.y
        num = 2 * q * (X + wc) - wd * wd / (2 * q)
        if Y != 0:
            t = num / Y
        elif num != 0:
            return self._from_working(None, X / (2 * q))
        else:
            # -special: the second root of the fibre of x over X
            lead = X * X / (4 * q * q) - wa
            if lead == 0:
                return self._from_working(None, X / (2 * q))
            t = (X * wd / (2 * q * q) + wb) / lead
        w = (X * t * t - wd * t) / (2 * q) - q
        return self._from_working(t, w)


def _with_usable_base(model: QuarticModel, search_height: int = 20) -> QuarticModel:
    pt = model.ratpoint
    if pt.at_infinity or pt.v != 0:
        return model
    inf = model.points_at_infinity()
    if inf and inf[0].v != 0:
        return _replace_point(model, inf[0])
    for e in rationals_of_height(search_height):
        if e == 0:
            continue
        v = sqrt_exact(model(pt.u + e))
        if v:
            return _replace_point(model, QuarticPoint(pt.u + e, v))
    raise UnsupportedQuarticError("no rational point with v != 0 found near the given point")


def _replace_point(model: QuarticModel, pt: QuarticPoint) -> QuarticModel:
    return QuarticModel(model.c4, model.c3, model.c2, model.c1, model.c0, pt)


def quartic_to_weierstrass(model: QuarticModel) -> Tuple[LongWeierstrass, BirationalCorrespondence]:
    model = _with_usable_base(model)
    base = model.ratpoint
    if base.at_infinity:
        if base.v == 0:
            raise UnsupportedQuarticError("leading coefficient vanishes")
        corr = BirationalCorrespondence(
            model, base, "reverse", Fraction(0),
            model.c0, model.c1, model.c2, model.c3, -base.v,
        )
    else:
        shifted = model.poly.shift(base.u)
        corr = BirationalCorrespondence(
            model, base, "translate", base.u,
            shifted.coeff(4), shifted.coeff(3), shifted.coeff(2), shifted.coeff(1), -base.v,
        )
    return corr.curve, corr


def pullback_parameter(corr: BirationalCorrespondence, P: ECPoint, allow_infinity: bool = True):
    """u-coordinate of the quartic point over P (AT_INFINITY for the points at infinity)."""
    pt = corr.backward(P)
    if pt.at_infinity:
        if not allow_infinity:
            raise ExceptionalPointError(
                f"{P!r} pulls back to the point at infinity (branch {format_rational(pt.v)}) of the quartic"
            )
        return AT_INFINITY
    return pt.u
