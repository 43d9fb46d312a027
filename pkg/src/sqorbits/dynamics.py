"""Quadratic maps over Q: iteration, cycles, square runs and conjugation."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import HeightGuardError
from .exact import (
    RationalLike,
    bit_size,
    format_rational,
    parse_rational,
    sqrt_exact,
    to_rational,
)

DEFAULT_MAX_BITS = 4096


@dataclass(frozen=True)
class QuadMap:
    """f(x) = A x^2 + B x + C with A != 0."""

    A: Fraction
    B: Fraction
    C: Fraction

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.A == 0:
            raise ValueError("a quadratic map needs A != 0")

    @classmethod
    def normal(cls, c: RationalLike) -> "QuadMap":
        return cls(1, 0, c)

    @classmethod
    def monic(cls, a: RationalLike, b: RationalLike) -> "QuadMap":
        return cls(1, a, b)

    @classmethod
    def parse(cls, spec: str) -> "QuadMap":
        """Accepts ``"A,B,C"`` or ``"c=<rational>"``."""
        spec = spec.strip()
        if spec.startswith("c="):
            return cls.normal(parse_rational(spec[2:]))
        parts = spec.split(",")
        if len(parts) != 3:
            raise ValueError(f"map spec must be 'A,B,C' or 'c=<q>', got {spec!r}")
        return cls(*(parse_rational(p) for p in parts))

    @property
    def is_monic(self) -> bool:
        return self.A == 1

    @property
    def is_normal_form(self) -> bool:
        return self.A == 1 and self.B == 0

    @property
    def discriminant(self) -> Fraction:
        return self.B * self.B - 4 * self.A * self.C

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        return (self.A * x + self.B) * x + self.C

    def to_dict(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("A", "B", "C")}

    @classmethod
    def from_dict(cls, d: dict) -> "QuadMap":
        return cls(*(parse_rational(d[k]) for k in ("A", "B", "C")))

    def __str__(self) -> str:
        return f"{format_rational(self.A)}*x^2 + {format_rational(self.B)}*x + {format_rational(self.C)}"


def _guard(x: Fraction, step: int, max_bits: int) -> None:
    bits = bit_size(x)
    if bits > max_bits:
        raise HeightGuardError(step, bits, max_bits)


def iterate(f: QuadMap, x0: RationalLike, n: int, max_bits: int = DEFAULT_MAX_BITS) -> Fraction:
    """f^n(x0), exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = to_rational(x0)
    for step in range(1, n + 1):
        x = f(x)
        _guard(x, step, max_bits)
    return x


@dataclass
class Orbit:
    x0: Fraction
    iterates: list
    tail_length: int = 0
    cycle_length: int = 0
    truncated: bool = False

    @property
    def is_periodic(self) -> bool:
        return self.cycle_length > 0 and self.tail_length == 0

    def cycle(self) -> list:
        if self.cycle_length == 0:
            return []
        return self.iterates[self.tail_length:self.tail_length + self.cycle_length]

    def to_dict(self) -> dict:
        return {
            "x0": format_rational(self.x0),
            "iterates": [format_rational(x) for x in self.iterates],
            "tail": self.tail_length,
            "period": self.cycle_length,
            "truncated": self.truncated,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Orbit":
        return cls(
            x0=parse_rational(d["x0"]),
            iterates=[parse_rational(x) for x in d["iterates"]],
            tail_length=d["tail"],
            cycle_length=d["period"],
            truncated=d["truncated"],
        )


def detect_cycle(f: QuadMap, x0: RationalLike, budget: int, max_bits: int = DEFAULT_MAX_BITS) -> Orbit:
    """Iterate at most ``budget`` times looking for a repeated value.

    On success the repeated value is the last entry of ``iterates``; the
    period found is the exact period of the cycle since the first repeat is
    detected.  Orbits whose height outgrows ``max_bits`` come back with
    ``truncated=True`` and no cycle.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    x = to_rational(x0)
    seen = {x: 0}
    orbit = Orbit(x0=x, iterates=[x])
    for step in range(1, budget + 1):
        x = f(x)
        if bit_size(x) > max_bits:
            orbit.truncated = True
            return orbit
        orbit.iterates.append(x)
        if x in seen:
            orbit.tail_length = seen[x]
            orbit.cycle_length = step - seen[x]
            return orbit
        seen[x] = step
    return orbit


@dataclass
class SquareRunReport:
    run_length: int
    roots: list
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "run_length": self.run_length,
            "roots": [format_rational(r) for r in self.roots],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SquareRunReport":
        roots = [parse_rational(r) for r in d["roots"]]
        return cls(run_length=d["run_length"], roots=roots)


def square_run(f: QuadMap, x0: RationalLike, max_len: int, max_bits: int = DEFAULT_MAX_BITS) -> SquareRunReport:
    """Length of the prefix x0, f(x0), ... made of rational squares.

    ``truncated`` is set when the scan stopped at ``max_len`` while still
    inside a run.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    x = to_rational(x0)
    roots = []
    for i in range(max_len):
        r = sqrt_exact(x)
        if r is None:
            return SquareRunReport(len(roots), roots)
        roots.append(r)
        if i + 1 < max_len:
            x = f(x)
            _guard(x, i + 1, max_bits)
    return SquareRunReport(len(roots), roots, truncated=True)


def conjugate_to_normal(f: QuadMap) -> Tuple[Fraction, Fraction]:
    """For monic x^2 + a x + b return ``(c, shift)`` with g(x + shift) = f(x) + shift, g = x^2 + c."""
    if not f.is_monic:
        raise ValueError("conjugate_to_normal expects a monic map")
    a, b = f.B, f.C
    return b - a * a / 4 + a / 2, a / 2


def is_irreducible(f: QuadMap) -> bool:
    return sqrt_exact(f.discriminant) is None


class Degeneracy(enum.Enum):
    NonDegenerate = "NonDegenerate"
    Case1_aZero = "Case1_aZero"
    Case2_DiscZero = "Case2_DiscZero"
    Case3_bZero_cNegInvA = "Case3_bZero_cNegInvA"
    Case4_b4_c0 = "Case4_b4_c0"
    Case5_OnePlus2bSquare = "Case5_OnePlus2bSquare"


@dataclass(frozen=True)
class DegeneracyClass:
    tag: Degeneracy
    witness: Optional[Fraction] = field(default=None)


def classify_degeneracy(a: RationalLike, b: RationalLike, c: RationalLike) -> DegeneracyClass:
    """Which exceptional case (if any) applies to f = a x^2 + b x + c.

    The cases are tried in order and the first match wins; they are not
    claimed to be mutually exclusive.
    """
    a, b, c = to_rational(a), to_rational(b), to_rational(c)
    if a == 0:
        return DegeneracyClass(Degeneracy.Case1_aZero)
    if b * b - 4 * a * c == 0:
        return DegeneracyClass(Degeneracy.Case2_DiscZero)
    if b == 0 and c == -1 / a:
        return DegeneracyClass(Degeneracy.Case3_bZero_cNegInvA, c)
    if b == 4 and c == 0:
        return DegeneracyClass(Degeneracy.Case4_b4_c0)
    s = sqrt_exact(1 + 2 * b)
    if s is not None and s != 0:
        for root in (s, -s):
            if c == (b * b - 2 * b - 2 + 2 * root) / (4 * a):
                return DegeneracyClass(Degeneracy.Case5_OnePlus2bSquare, s)
    return DegeneracyClass(Degeneracy.NonDegenerate)


def classify_map(f: QuadMap) -> DegeneracyClass:
    return classify_degeneracy(f.A, f.B, f.C)
