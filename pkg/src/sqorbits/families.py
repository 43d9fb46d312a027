"""One-parameter families of quadratic maps with three consecutive squares.

Each family has a closed-form generator and a curve-based extension: the
family's quartic model is sent to a Weierstrass curve, the image of the base
point is multiplied by n, and the pulled-back parameter is pushed through the
matching conic parametrization.  For n = 2 the two routes agree exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .conics import param_thm22, param_thm24
from .curves import (
    QuarticModel,
    QuarticPoint,
    ec_mul,
    pullback_parameter,
    quartic_to_weierstrass,
)
from .dynamics import QuadMap
from .errors import DegenerateParameterError, InternalConsistencyError
from .exact import RationalLike, format_rational, parse_rational, sqrt_exact, to_rational

FAMILIES = ("xc", "xaxb", "xax_minus_a")
FAMILY_ALIASES = {"xc": "xc", "xaxb": "xaxb", "xax_minus_a": "xax_minus_a", "xaxma": "xax_minus_a"}


@dataclass(frozen=True)
class ThreeSquareWitness:
    """x0, f(x0), f^2(x0) with their nonnegative square roots.

    ``roots[0]`` is None when x0 itself is not a square (the xax_minus_a
    family at a non-square parameter); the other two are always present.
    """

    map: QuadMap
    x0: Fraction
    roots: Tuple[Optional[Fraction], Fraction, Fraction]
    family: str = field(default="", compare=False)
    parameter: Optional[Fraction] = field(default=None, compare=False)
    n: int = field(default=2, compare=False)

    @property
    def is_full(self) -> bool:
        return self.roots[0] is not None

    @property
    def orbit(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.x0, self.roots[1] ** 2, self.roots[2] ** 2

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "parameter": format_rational(self.parameter) if self.parameter is not None else None,
            "map": self.map.to_dict(),
            "x0": format_rational(self.x0),
            "roots": [format_rational(r) if r is not None else None for r in self.roots],
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ThreeSquareWitness":
        roots = tuple(parse_rational(r) if r is not None else None for r in d["roots"])
        param = parse_rational(d["parameter"]) if d.get("parameter") is not None else None
        return cls(QuadMap.from_dict(d["map"]), parse_rational(d["x0"]), roots,
                   d.get("family", ""), param, d.get("n", 2))


def verify_witness(w: ThreeSquareWitness) -> bool:
    r0, r1, r2 = w.roots
    if r0 is not None and (r0 < 0 or r0 * r0 != w.x0):
        return False
    if r1 < 0 or r2 < 0:
        return False
    first = w.map(w.x0)
    return first == r1 * r1 and w.map(first) == r2 * r2


def _build(family, parameter, n, f, x0, r1, r2, r0=None, require_square_x0=True) -> ThreeSquareWitness:
    if r0 is None:
        r0 = sqrt_exact(x0)
        if r0 is None and require_square_x0:
            raise InternalConsistencyError(f"{family}({parameter}): x0 = {x0} is not a square")
    w = ThreeSquareWitness(f, x0, (r0, abs(r1), abs(r2)), family, parameter, n)
    if not verify_witness(w):
        raise InternalConsistencyError(f"{family}({parameter}, n={n}) failed verification")
    return w


def family_xc(beta: RationalLike) -> ThreeSquareWitness:
    beta = to_rational(beta)
    if beta == 0:
        raise DegenerateParameterError("beta = 0 gives the trivial map x^2")
    b2 = beta * beta
    den = 1 + 8 * b2 + 4 * b2 * b2
    r0 = beta * (3 - 4 * b2 * b2) / den
    x0 = beta ** 2 * (3 - 4 * beta ** 4) ** 2 / den ** 2
    gamma = beta * (-1 + 24 * (b2 + 3 * beta ** 4 + 4 * beta ** 6 + 2 * beta ** 8)) / den ** 2
    c = (b2 - 49 * beta ** 4 + 400 * beta ** 6 + 2864 * beta ** 8 + 7264 * beta ** 10
         + 8864 * beta ** 12 + 6400 * beta ** 14 + 2816 * beta ** 16 + 256 * beta ** 18
         - 256 * beta ** 20) / den ** 4
    if c != b2 - x0 * x0:
        raise InternalConsistencyError("printed c disagrees with beta^2 - alpha^2")
    return _build("xc", beta, 2, QuadMap.normal(c), x0, beta, gamma, r0=abs(r0))


def xaxb_denominator(a: Fraction) -> Fraction:
    return 1 + a * (2 + a * (9 + 4 * a * (1 + a)))


def xaxb_printed_b(a: RationalLike) -> Fraction:
    """The long closed form for b, kept as an independent transcription check."""
    a = to_rational(a)
    coeffs = [0, 0, 1, -1, -69, -196, 314, 2226, 7622, 15308, 25285, 30279, 31599,
              24864, 16624, 6496, 160, -3072, -2560, -1280, -256]
    num = sum(c * a ** k for k, c in enumerate(coeffs))
    return num / xaxb_denominator(a) ** 4


def family_xaxb(a: RationalLike) -> ThreeSquareWitness:
    a = to_rational(a)
    den = xaxb_denominator(a)
    if den == 0:
        raise DegenerateParameterError(f"a = {a} makes 1 + a(2 + a(9 + 4a(1 + a))) vanish")
    delta = a * (1 + a) * (-3 + a + 4 * a ** 3) / den
    gamma = a * (-1 + a * a * (5 + 4 * a * (1 + a)) * (6 + a * (8 + 3 * a * (5 + 4 * a * (1 + a))))) / den ** 2
    d2 = delta * delta
    b = a * a - d2 * d2 - a * d2
    if b != xaxb_printed_b(a):
        raise InternalConsistencyError("printed b disagrees with a^2 - delta^4 - a delta^2")
    return _build("xaxb", a, 2, QuadMap.monic(a, b), d2, a, gamma, r0=abs(delta))


def xax_minus_a_coefficient(alpha: Fraction) -> Fraction:
    return -(alpha - 1) * alpha ** 2 * (alpha ** 2 - 9) / (4 + alpha - alpha ** 2) ** 2


def family_xax_minus_a(alpha: RationalLike) -> ThreeSquareWitness:
    alpha = to_rational(alpha)
    if alpha == 1:
        raise DegenerateParameterError("alpha = 1: the factor (alpha - 1) of the third element's denominator vanishes")
    # 4 + alpha - alpha^2 has discriminant 17, so it never vanishes on Q
    a = xax_minus_a_coefficient(alpha)
    second = (alpha ** 2 - 5 * alpha) / (alpha ** 2 - alpha - 4)
    third = ((3 * alpha ** 5 - 13 * alpha ** 4 + 13 * alpha ** 3 - 15 * alpha ** 2 + 12 * alpha)
             / ((alpha ** 4 - 2 * alpha ** 3 - 7 * alpha ** 2 + 8 * alpha + 16) * (alpha - 1)))
    return _build("xax_minus_a", alpha, 2, QuadMap.monic(a, -a), alpha, second, third,
                  require_square_x0=False)


def family_quartic(which: str, parameter: RationalLike) -> QuarticModel:
    """The quartic whose points parametrize further family members."""
    which = FAMILY_ALIASES[which]
    p = to_rational(parameter)
    if which == "xc":
        if p == 0:
            raise DegenerateParameterError("beta = 0")
        # v^2 = beta (beta m^4 - 2 m^3 - 2 m - beta), base at infinity with v/m^2 -> beta
        return QuarticModel(p * p, -2 * p, 0, -2 * p, -p * p, QuarticPoint(None, p))
    if which == "xaxb":
        if p == 0:
            raise DegenerateParameterError("a = 0")
        return QuarticModel(p * p, -2 * p, -p, -2 * p, -p * p - p, QuarticPoint(None, p))
    if p in (0, 1):
        raise DegenerateParameterError(f"alpha = {p}")
    return QuarticModel(p * (p - 1), 0, -(p - 1) * (1 + p * p), 0, (p - 1) * p * p,
                        QuarticPoint(1, p - 1))


def extend_family(which: str, parameter: RationalLike, n: int) -> ThreeSquareWitness:
    """Family member from n times the image of the quartic's base point."""
    which = FAMILY_ALIASES[which]
    if n < 2:
        raise ValueError("n must be >= 2")
    p = to_rational(parameter)
    model = family_quartic(which, p)
    E, corr = quartic_to_weierstrass(model)
    P = ec_mul(E, n, corr.forward(model.ratpoint))
    m = pullback_parameter(corr, P, allow_infinity=False)
    if which == "xc":
        alpha, gamma = param_thm22(p, m)
        if alpha == 0:
            raise DegenerateParameterError(f"n={n} lands on alpha = 0")
        return _build("xc", p, n, QuadMap.normal(p * p - alpha * alpha), alpha, p, gamma)
    if which == "xaxb":
        alpha, gamma = param_thm24(p, m)
        b = p * p - alpha * alpha - p * alpha
        return _build("xaxb", p, n, QuadMap.monic(p, b), alpha, p, gamma)
    beta = m
    a = (beta * beta - p * p) / (p - 1)
    f = QuadMap.monic(a, -a)
    third = sqrt_exact(f(beta * beta))
    if third is None:
        raise InternalConsistencyError(f"xax_minus_a({p}, n={n}): third element is not a square")
    return _build("xax_minus_a", p, n, f, p, beta, third, require_square_x0=False)


def generate(which: str, parameter: RationalLike) -> ThreeSquareWitness:
    which = FAMILY_ALIASES[which]
    return {"xc": family_xc, "xaxb": family_xaxb, "xax_minus_a": family_xax_minus_a}[which](parameter)


def sweep_multiples(which: str, parameter: RationalLike, ns) -> Tuple[dict, list]:
    """extend_family over several n at one parameter.

    Returns ``(witnesses, collisions)``: a dict n -> witness (or the error
    message when the pullback is exceptional) and a list of ``(n1, n2)``
    pairs whose maps coincide.  Distinct n need not give distinct maps at a
    fixed rational parameter, so collisions are reported rather than ruled out.
    """
    out = {}
    seen = {}
    collisions = []
    for n in ns:
        try:
            w = extend_family(which, parameter, n)
        except (DegenerateParameterError, ArithmeticError) as exc:
            out[n] = str(exc)
            continue
        out[n] = w
        key = (w.map.A, w.map.B, w.map.C)
        if key in seen:
            collisions.append((seen[key], n))
        else:
            seen[key] = n
    return out, collisions
