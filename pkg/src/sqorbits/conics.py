"""Rational parametrizations of the conics and quadrics behind the families."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

from .exact import RationalLike, to_rational


def param_thm22(beta: RationalLike, m: RationalLike) -> Tuple[Fraction, Fraction]:
    """Chord through (beta^2, beta) on alpha^2 + gamma^2 = beta^4 + beta^2."""
    beta, m = to_rational(beta), to_rational(m)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    den = 1 + m * m
    alpha = beta * (-2 * m - beta + m * m * beta) / den
    gamma = -beta * (-1 + 2 * beta * m + m * m) / den
    return alpha, gamma


def param_thm24(a: RationalLike, m: RationalLike) -> Tuple[Fraction, Fraction]:
    """Chord through (a^2, a) on alpha^2 + gamma^2 + a*alpha = a^4 + a^3 + a^2."""
    a, m = to_rational(a), to_rational(m)
    if a == 0:
        raise ValueError("a must be nonzero")
    den = 1 + m * m
    alpha = a * (-1 - a - 2 * m + a * m * m) / den
    gamma = -a * (-1 + m + 2 * a * m + m * m) / den
    return alpha, gamma


class ConicPoint(NamedTuple):
    """Homogeneous (z : X : T), unreduced."""

    z: Fraction
    X: Fraction
    T: Fraction

    @property
    def affine(self) -> Tuple[Fraction, Fraction]:
        return self.z / self.T, self.X / self.T


@dataclass(frozen=True)
class ConicSlopeParam:
    """The conic z^2 + X^2 = D T^2 with an affine base point (z0, X0)."""

    D: Fraction
    z0: Fraction
    X0: Fraction

    def __post_init__(self):
        for name in ("D", "z0", "X0"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.D == 0:
            raise ValueError("degenerate conic: D = 0")
        if self.z0 ** 2 + self.X0 ** 2 != self.D:
            raise ValueError("base point is not on the conic")

    def contains(self, p: ConicPoint) -> bool:
        return p.z ** 2 + p.X ** 2 == self.D * p.T ** 2

    def point(self, p: RationalLike, s: RationalLike = 1) -> ConicPoint:
        """Second intersection of the line of slope p/s through the base.

        (p, s) = (1, 0) is the vertical line.  Along X - X0 = t (z - z0) the
        second root is z = z0 - 2 (z0 + X0 t) / (1 + t^2); clearing t = p/s
        gives the homogeneous triple below.
        """
        p, s = to_rational(p), to_rational(s)
        if p == 0 and s == 0:
            raise ValueError("slope (0, 0) is undefined")
        z0, X0 = self.z0, self.X0
        z = z0 * p * p - 2 * X0 * p * s - z0 * s * s
        X = X0 * s * s - 2 * z0 * p * s - X0 * p * p
        T = p * p + s * s
        return ConicPoint(z, X, T)


def param_conic_slope(P: ConicSlopeParam, slope: RationalLike) -> ConicPoint:
    slope = to_rational(slope)
    return P.point(slope.numerator, slope.denominator)


def pythagorean_quadruple(s: RationalLike, t: RationalLike, u: RationalLike):
    """(gamma, w, Y, mu) with gamma^2 = w^2 + Y^2 + mu^2."""
    s, t, u = to_rational(s), to_rational(t), to_rational(u)
    return s * s + t * t + u * u, 2 * s * u, s * s + t * t - u * u, 2 * t * u


@dataclass(frozen=True)
class PqrDerived:
    p: Fraction
    q: Fraction
    r: Fraction
    s: Fraction
    t: Fraction
    u: Fraction
    y: Fraction
    T: Fraction
    Zsq: Fraction


def stuy_from_pqr(p: RationalLike, q: RationalLike, r: RationalLike) -> PqrDerived:
    p, q, r = to_rational(p), to_rational(q), to_rational(r)
    s = 4 * p * p + 2 * q * p - 2 * p * r - q * q + r * r
    t = 4 * q * p + q * q - 2 * q * r + r * r
    u = 4 * p * p + 2 * q * p - 2 * p * r + q * q - r * r
    y = 4 * p * r + 2 * q * r - q * q - r * r
    return PqrDerived(p, q, r, s, t, u, y, 4 * t * u, s * s + t * t + u * u - 2 * t * u)
