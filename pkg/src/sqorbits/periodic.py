"""Rational cycles of quadratic maps and cycles made of squares.

Poonen's parametrizations of the rational 1-, 2- and 3-cycles of x^2 + c,
the monic maps x^2 + a x + b carrying a 2- or 3-cycle of rational squares,
recovery of the Poonen parameter of a 3-cycle, and a small search.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dynamics import QuadMap, conjugate_to_normal, detect_cycle
from .errors import DegenerateParameterError, InternalConsistencyError
from .exact import RationalLike, format_rational, parse_rational, rational_roots, sqrt_exact, to_rational

log = logging.getLogger(__name__)

# Rational cycles of exact period >= 4 are conjectured not to exist; scans stop at 3 unless asked.
PERIOD_CAP = 3


@dataclass
class PoonenCycle:
    c: Fraction
    points: list
    parameter: Fraction
    kind: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "c": format_rational(self.c),
            "points": [format_rational(x) for x in self.points],
            "parameter": format_rational(self.parameter),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PoonenCycle":
        return cls(parse_rational(d["c"]), [parse_rational(x) for x in d["points"]],
                   parse_rational(d["parameter"]), d.get("kind", ""))


@dataclass
class SquareCycleWitness:
    """A monic map and a cycle of rational squares, listed in orbit order."""

    map: QuadMap
    squares: list
    roots: list
    params: tuple
    degenerate: bool = False
    period: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "map": self.map.to_dict(),
            "squares": [format_rational(x) for x in self.squares],
            "roots": [format_rational(x) for x in self.roots],
            "params": [format_rational(x) for x in self.params],
            "degenerate": self.degenerate,
            "period": self.period,
            **self.extra,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SquareCycleWitness":
        known = {"map", "squares", "roots", "params", "degenerate", "period"}
        return cls(QuadMap.from_dict(d["map"]), [parse_rational(x) for x in d["squares"]],
                   [parse_rational(x) for x in d["roots"]], tuple(parse_rational(x) for x in d["params"]),
                   d.get("degenerate", False), d.get("period", 0),
                   {k: v for k, v in d.items() if k not in known})


def _exact_period(f: QuadMap, x0: Fraction, budget: int = 16) -> int:
    orb = detect_cycle(f, x0, budget)
    return orb.cycle_length if orb.tail_length == 0 else 0


def poonen_fixed(rho: RationalLike) -> PoonenCycle:
    rho = to_rational(rho)
    c = Fraction(1, 4) - rho * rho
    points = sorted({Fraction(1, 2) + rho, Fraction(1, 2) - rho}, reverse=True)
    f = QuadMap.normal(c)
    if any(f(x) != x for x in points):
        raise InternalConsistencyError(f"rho = {rho}: fixed points do not verify")
    return PoonenCycle(c, points, rho, "fixed")


def poonen_two_cycle(sigma: RationalLike) -> PoonenCycle:
    sigma = to_rational(sigma)
    if sigma == 0:
        raise DegenerateParameterError("sigma = 0 collapses the 2-cycle to a fixed point")
    c = Fraction(-3, 4) - sigma * sigma
    x1, x2 = Fraction(-1, 2) + sigma, Fraction(-1, 2) - sigma
    f = QuadMap.normal(c)
    if f(x1) != x2 or f(x2) != x1:
        raise InternalConsistencyError(f"sigma = {sigma}: 2-cycle does not verify")
    return PoonenCycle(c, [x1, x2], sigma, "two-cycle")


def poonen_c3(tau: Fraction) -> Fraction:
    t = tau
    num = t ** 6 + 2 * t ** 5 + 4 * t ** 4 + 8 * t ** 3 + 9 * t ** 2 + 4 * t + 1
    return -num / (4 * t * t * (t + 1) ** 2)


def poonen_three_points(tau: Fraction) -> list:
    t = tau
    den = 2 * t * (t + 1)
    return [
        (t ** 3 + 2 * t ** 2 + t + 1) / den,
        (t ** 3 - t - 1) / den,
        -(t ** 3 + 2 * t ** 2 + 3 * t + 1) / den,
    ]


def poonen_three_cycle(tau: RationalLike) -> PoonenCycle:
    """The 3-cycle at tau, listed in orbit order starting from x1.

    The orientation is read off the map, not assumed; ``points`` is
    [x1, f(x1), f(f(x1))].
    """
    tau = to_rational(tau)
    if tau in (0, -1):
        raise DegenerateParameterError(f"tau = {tau} is excluded")
    c = poonen_c3(tau)
    f = QuadMap.normal(c)
    x1, x2, x3 = poonen_three_points(tau)
    orbit = [x1, f(x1), f(f(x1))]
    if f(orbit[2]) != x1 or sorted(orbit) != sorted([x1, x2, x3]) or len(set(orbit)) != 3:
        raise InternalConsistencyError(f"tau = {tau}: 3-cycle does not verify")
    return PoonenCycle(c, orbit, tau, "three-cycle")


def square_two_cycle(m: RationalLike, k: RationalLike) -> SquareCycleWitness:
    m, k = to_rational(m), to_rational(k)
    m2, k2 = m * m, k * k
    f = QuadMap.monic(-1 - m2 - k2, m2 + k2 + m2 * k2)
    if f(m2) != k2 or f(k2) != m2:
        raise InternalConsistencyError(f"(m, k) = ({m}, {k}) does not give a 2-cycle")
    degenerate = m2 == k2
    period = _exact_period(f, m2)
    if period != (1 if degenerate else 2):
        raise InternalConsistencyError(f"(m, k) = ({m}, {k}): detected period {period}")
    squares = [m2] if degenerate else [m2, k2]
    roots = [abs(m)] if degenerate else [abs(m), abs(k)]
    return SquareCycleWitness(f, squares, roots, (m, k), degenerate, period)


def square_three_cycle_condition(m: RationalLike, n: RationalLike, r: RationalLike) -> Fraction:
    m, n, r = to_rational(m), to_rational(n), to_rational(r)
    m2, n2, r2 = m * m, n * n, r * r
    return (m2 * m2 * (1 - n2 + r2) + m2 * (-n2 + n2 * n2 - r2 * (1 + r2)) + r2 * r2
            - n2 * n2 * (-1 + r2) + n2 * r2 * (-1 + r2))


def three_cycle_coefficients(m2: Fraction, n2: Fraction, r2: Fraction) -> tuple:
    """(d, a, b) solving d s^2 + a s + b = next(s) over the cycle m2 -> n2 -> r2 -> m2."""
    den = (m2 - n2) * (m2 - r2) * (n2 - r2)
    d = (m2 * m2 - m2 * n2 + n2 * n2 - m2 * r2 - n2 * r2 + r2 * r2) / den
    a = (-m2 ** 3 + m2 * n2 * n2 - n2 ** 3 + m2 * m2 * r2 + n2 * r2 * r2 - r2 ** 3) / den
    b = ((m2 ** 3 * n2 - m2 * m2 * n2 * n2 + n2 ** 3 * r2 - m2 * m2 * r2 * r2 - n2 * n2 * r2 * r2 + m2 * r2 ** 3)
         / ((n2 - m2) * (n2 - r2) * (r2 - m2)))
    return d, a, b


def square_three_cycle_map(m: RationalLike, n: RationalLike, r: RationalLike) -> SquareCycleWitness:
    m, n, r = to_rational(m), to_rational(n), to_rational(r)
    m2, n2, r2 = m * m, n * n, r * r
    if len({m2, n2, r2}) != 3:
        raise DegenerateParameterError(f"m^2, n^2, r^2 must be distinct, got {m2}, {n2}, {r2}")
    residual = square_three_cycle_condition(m, n, r)
    if residual != 0:
        raise ValueError(f"({m}, {n}, {r}) fails the 3-cycle condition, residual {format_rational(residual)}")
    d, a, b = three_cycle_coefficients(m2, n2, r2)
    if d != 1:
        raise InternalConsistencyError("condition vanished but the leading coefficient is not 1")
    f = QuadMap.monic(a, b)
    if f(m2) != n2 or f(n2) != r2 or f(r2) != m2:
        raise InternalConsistencyError(f"({m}, {n}, {r}): 3-cycle does not verify")
    period = _exact_period(f, m2)
    if period != 3:
        raise InternalConsistencyError(f"({m}, {n}, {r}): detected period {period}")
    return SquareCycleWitness(f, [m2, n2, r2], [abs(m), abs(n), abs(r)], (m, n, r), False, period)


def tau_polynomial(c: Fraction) -> list:
    """Coefficients (lowest first) of 4 tau^2 (tau+1)^2 c + tau^6 + ... + 1."""
    return [1, 4, 9 + 4 * c, 8 + 8 * c, 4 + 4 * c, 2, 1]


def recover_tau(f: QuadMap) -> list:
    """Every rational tau whose Poonen 3-cycle is the conjugate of f's.

    An empty list means x^2 + c (the conjugate of f) has no rational 3-cycle.
    """
    c, _ = conjugate_to_normal(f)
    return [t for t in rational_roots(tau_polynomial(c)) if t not in (0, -1)]


def poonen_orientation(w: SquareCycleWitness, tau: Fraction) -> Optional[int]:
    """Offset k with squares[i] + a/2 = poonen_three_points(tau)[(i + k) % 3], or None."""
    shift = w.map.B / 2
    shifted = [s + shift for s in w.squares]
    pts = poonen_three_points(tau)
    for k in range(3):
        if all(shifted[i] == pts[(i + k) % 3] for i in range(3)):
            return k
    return None


def _rf(text: str) -> Fraction:
    return parse_rational(text)


CATALOG = (
    ("f1", ("-29/8", "841/256"), ("7/4", "5/4", "1/4"), "-1/2"),
    ("f2", ("-301/72", "90601/20736"), ("23/12", "19/12", "5/12"), "2"),
    ("f3", ("-421/72", "177241/20736"), ("25/12", "17/12", "11/12"), "1/2"),
    ("f4", ("-1849/288", "3418801/331776"), ("55/24", "49/24", "23/24"), "3"),
    ("f5", ("-74333/4356", "211660729/4743684"), ("115/66", "47/33", "124/33"), "-12"),
)


def check_catalog_row(name, ab, roots, tau) -> dict:
    a, b = (_rf(x) for x in ab)
    m, n, r = (_rf(x) for x in roots)
    tau = _rf(tau)
    f = QuadMap.monic(a, b)
    squares = [m * m, n * n, r * r]
    checks = {
        "cycle": f(squares[0]) == squares[1] and f(squares[1]) == squares[2] and f(squares[2]) == squares[0],
        "condition": square_three_cycle_condition(m, n, r) == 0,
    }
    try:
        w = square_three_cycle_map(m, n, r)
        checks["coefficients"] = w.map == f
    except (ValueError, InternalConsistencyError):
        w = None
        checks["coefficients"] = False
    taus = recover_tau(f)
    checks["tau"] = tau in taus
    orientation = poonen_orientation(w, tau) if w is not None and checks["tau"] else None
    checks["poonen_points"] = orientation is not None
    return {
        "row": name,
        "map": f.to_dict(),
        "roots": [format_rational(x) for x in (m, n, r)],
        "printed_tau": format_rational(tau),
        "recovered_taus": [format_rational(t) for t in taus],
        "orientation": orientation,
        "checks": checks,
        "passed": all(checks.values()),
    }


def catalog_check(strict: bool = True) -> list:
    """Row-by-row report on the five printed 3-cycles of squares.

    With ``strict`` a failing row raises, naming the row.
    """
    report = [check_catalog_row(*row) for row in CATALOG]
    if strict:
        for row in report:
            if not row["passed"]:
                failed = [k for k, ok in row["checks"].items() if not ok]
                raise InternalConsistencyError(f"catalog row {row['row']} failed: {', '.join(failed)}")
    return report


def search_values(height_bound: int) -> list:
    """Nonnegative rationals with denominator and value both at most the bound."""
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    vals = {Fraction(p, d) for d in range(1, height_bound + 1) for p in range(0, height_bound * d + 1)}
    return sorted(vals)


def _in_box(x: Fraction, bound: int) -> bool:
    return x.denominator <= bound and abs(x) <= bound


def _cycle_key(m2, n2, r2) -> tuple:
    rots = [(m2, n2, r2), (n2, r2, m2), (r2, m2, n2)]
    return min(rots)


def _search_rows(args) -> list:
    bound, ms = args
    vals = search_values(bound)
    found = []
    for m in ms:
        m2 = m * m
        for n in vals:
            n2 = n * n
            if n2 == m2:
                continue
            # the condition as a quadratic in R = r^2
            A = 1 + n2 - m2
            B = m2 * m2 - m2 - n2 * n2 - n2
            C = m2 * m2 - m2 * m2 * n2 + m2 * n2 * n2 - m2 * n2 + n2 * n2
            if A == 0:
                Rs = [] if B == 0 else [-C / B]
            else:
                disc = sqrt_exact(B * B - 4 * A * C)
                Rs = [] if disc is None else sorted({(-B + disc) / (2 * A), (-B - disc) / (2 * A)})
            for R in Rs:
                r = sqrt_exact(R) if R >= 0 else None
                if r is None or not _in_box(r, bound) or R in (m2, n2):
                    continue
                found.append((m, n, r))
    return found


def square_cycle_search(height_bound: int, workers: int = 1) -> list:
    """Triples (m, n, r) from the bounded box giving a 3-cycle of squares.

    Witnesses are deduplicated up to signs and cyclic rotation and come back
    sorted by their canonical rotation.
    """
    vals = search_values(height_bound)
    if workers > 1:
        chunks = [(height_bound, vals[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            triples = [t for part in pool.map(_search_rows, chunks) for t in part]
    else:
        triples = _search_rows((height_bound, vals))
    best = {}
    for m, n, r in triples:
        key = _cycle_key(m * m, n * n, r * r)
        best.setdefault(key, (m, n, r))
    out = []
    for key in sorted(best):
        m2, n2, r2 = key
        out.append(square_three_cycle_map(sqrt_exact(m2), sqrt_exact(n2), sqrt_exact(r2)))
    return out


def rational_cycle_scan(f: QuadMap, height_bound: int, max_period: int = PERIOD_CAP) -> dict:
    """Periodic points among small-height starting values, grouped by exact period.

    Periods above the cap are not looked for.  If the cap is raised and a cycle
    of exact period 4 or more turns up, it is logged as a warning: such a
    cycle would contradict the conjectured bound.
    """
    vals = search_values(height_bound)
    vals = sorted(set(vals) | {-v for v in vals})
    found = {}
    for x in vals:
        orb = detect_cycle(f, x, max_period)
        if orb.tail_length == 0 and orb.cycle_length:
            found.setdefault(orb.cycle_length, set()).add(x)
    for period in found:
        if period >= 4:
            log.warning("rational point of exact period %d found for %s", period, f)
    return {p: sorted(xs) for p, xs in sorted(found.items())}
