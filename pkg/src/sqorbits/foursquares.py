"""Four consecutive squares under x^2 + c: the surface, M(p,q,r) and searches.

A rational point (x, y, z, w) of

    z^2 + x^4 = y^2 + y^4,    w^2 + y^4 = z^2 + z^4

gives c = y^2 - x^4 with x^2 -> y^2 -> z^2 -> w^2 under x^2 + c.
"""
from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernels
from .conics import ConicSlopeParam, stuy_from_pqr
from .curves import QuarticModel, QuarticPoint, quartic_to_weierstrass, torsion_order
from .dynamics import QuadMap, SquareRunReport, square_run
from .errors import DegenerateParameterError, InternalConsistencyError
from .exact import RationalLike, format_rational, int_sqrt, parse_rational, sqrt_exact, to_rational

log = logging.getLogger(__name__)

DEFAULT_RUN_BUDGET = 8


@dataclass(frozen=True)
class SurfacePointS:
    x: Fraction
    y: Fraction
    z: Fraction
    w: Fraction

    def __post_init__(self):
        for name in "xyzw":
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    def normalized(self) -> "SurfacePointS":
        return SurfacePointS(abs(self.x), abs(self.y), abs(self.z), abs(self.w))

    def to_dict(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in "xyzw"}

    @classmethod
    def from_dict(cls, d: dict) -> "SurfacePointS":
        return cls(*(parse_rational(d[k]) for k in "xyzw"))


def on_surface(x: RationalLike, y: RationalLike, z: RationalLike, w: RationalLike) -> bool:
    x, y, z, w = (to_rational(v) for v in (x, y, z, w))
    return z * z + x ** 4 == y * y + y ** 4 and w * w + y ** 4 == z * z + z ** 4


def is_trivial_point(pt: SurfacePointS) -> bool:
    return abs(pt.x) == abs(pt.y) == abs(pt.z) == abs(pt.w)


@dataclass
class FourSquareHit:
    point: SurfacePointS
    c: Fraction
    x0sq: Fraction
    run: SquareRunReport
    trivial: bool = False
    source: dict = field(default_factory=dict)

    @property
    def key(self) -> str:
        """Content hash of the normalized point and c; search metadata excluded."""
        payload = json.dumps({"point": self.point.normalized().to_dict(), "c": format_rational(self.c)},
                             sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_dict(self) -> dict:
        return {
            "c": format_rational(self.c),
            "x0sq": format_rational(self.x0sq),
            "point": self.point.to_dict(),
            "run_length": self.run.run_length,
            "roots": [format_rational(r) for r in self.run.roots],
            "trivial": self.trivial,
            "source": self.source,
            "hash": self.key,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FourSquareHit":
        run = SquareRunReport(d["run_length"], [parse_rational(r) for r in d["roots"]])
        return cls(SurfacePointS.from_dict(d["point"]), parse_rational(d["c"]),
                   parse_rational(d["x0sq"]), run, d.get("trivial", False), d.get("source", {}))


def c_from_surface_point(pt: SurfacePointS, max_len: int = DEFAULT_RUN_BUDGET,
                         source: Optional[dict] = None) -> FourSquareHit:
    """The map x^2 + c realized by a surface point, with its square run re-verified."""
    if not on_surface(pt.x, pt.y, pt.z, pt.w):
        raise ValueError(f"{pt} is not on the surface")
    if pt.x == 0:
        raise DegenerateParameterError("x0 = 0 cannot start four consecutive squares")
    c = pt.y * pt.y - pt.x ** 4
    x0sq = pt.x * pt.x
    run = square_run(QuadMap.normal(c), x0sq, max_len)
    expected = [abs(pt.x), abs(pt.y), abs(pt.z), abs(pt.w)]
    if run.run_length < 4 or run.roots[:4] != expected:
        raise InternalConsistencyError(f"surface point {pt} did not give four squares")
    return FourSquareHit(pt, c, x0sq, run, is_trivial_point(pt), dict(source or {}))


# M(p, q, r) as printed: (coefficient, deg p, deg q, deg r)
M_TERMS = (
    (-2048, 7, 1, 0), (-1536, 6, 2, 0), (-768, 5, 3, 0), (128, 4, 4, 0), (192, 3, 5, 0),
    (96, 2, 6, 0), (16, 1, 7, 0), (1, 0, 8, 0), (4096, 6, 1, 1), (1280, 5, 2, 1),
    (-960, 3, 4, 1), (-448, 2, 5, 1), (-160, 1, 6, 1), (-24, 0, 7, 1), (-512, 6, 0, 2),
    (-1280, 5, 1, 2), (1792, 4, 2, 2), (1664, 3, 3, 2), (1152, 2, 4, 2), (368, 1, 5, 2),
    (76, 0, 6, 2), (768, 5, 0, 3), (-2048, 4, 1, 3), (-1920, 3, 2, 3), (-1280, 2, 3, 3),
    (-384, 1, 4, 3), (-72, 0, 5, 3), (384, 4, 0, 4), (1728, 3, 1, 4), (480, 2, 2, 4),
    (240, 1, 3, 4), (-10, 0, 4, 4), (-704, 3, 0, 5), (-64, 2, 1, 5), (-32, 1, 2, 5),
    (24, 0, 3, 5), (64, 2, 0, 6), (-112, 1, 1, 6), (44, 0, 2, 6), (64, 1, 0, 7),
    (-56, 0, 1, 7), (17, 0, 0, 8),
)


def eval_M(p: RationalLike, q: RationalLike, r: RationalLike) -> Fraction:
    p, q, r = to_rational(p), to_rational(q), to_rational(r)
    return sum((c * p ** i * q ** j * r ** k for c, i, j, k in M_TERMS), Fraction(0))


def pipeline_M(p: RationalLike, q: RationalLike, r: RationalLike) -> Fraction:
    """y^2 T + y^4 - T Zsq from the (s, t, u, y) parametrization."""
    d = stuy_from_pqr(p, q, r)
    y2 = d.y * d.y
    return y2 * d.T + y2 * y2 - d.T * d.Zsq


@dataclass(frozen=True)
class SearchConfig:
    """Grid for the four-square searches.

    ``box`` bounds |p| and s (fixed-y mode) or |p|, |q|, |r| (M mode).
    Shards split the work units (one per (y, p) row, or per p) into
    contiguous blocks in lexicographic order.
    """

    y_grid: tuple = ()
    box: int = 8
    coprime: bool = True
    shards: int = 1
    workers: int = 1
    keep_trivial: bool = False
    keep_c_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "y_grid", tuple(to_rational(y) for y in self.y_grid))
        if self.box < 1 or self.shards < 1 or self.workers < 1:
            raise ValueError("box, shards and workers must be positive")
        if any(y == 0 for y in self.y_grid):
            raise ValueError("y = 0 is not allowed in the y grid")

    def to_dict(self) -> dict:
        return {
            "y_grid": [format_rational(y) for y in self.y_grid],
            "box": self.box,
            "coprime": self.coprime,
            "shards": self.shards,
            "workers": self.workers,
            "keep_trivial": self.keep_trivial,
            "keep_c_zero": self.keep_c_zero,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        d = dict(d)
        d["y_grid"] = tuple(parse_rational(y) for y in d.get("y_grid", ()))
        return cls(**d)


@dataclass
class SearchStats:
    candidates: int = 0
    exact_rejected: int = 0
    normalization_rejected: int = 0
    trivial_filtered: int = 0
    c_zero_filtered: int = 0
    duplicates: int = 0
    hits: int = 0
    rejected_cells: list = field(default_factory=list)

    def merge(self, other: "SearchStats") -> None:
        for name in ("candidates", "exact_rejected", "normalization_rejected",
                     "trivial_filtered", "c_zero_filtered", "duplicates", "hits"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.rejected_cells.extend(other.rejected_cells)


def work_units(cfg: SearchConfig, mode: str) -> list:
    ps = range(-cfg.box, cfg.box + 1)
    if mode == "fixed-y":
        return [(yi, p) for yi in range(len(cfg.y_grid)) for p in ps]
    if mode == "M":
        return list(ps)
    raise ValueError(f"unknown search mode {mode!r}")


def shard_units(cfg: SearchConfig, mode: str, shard: int) -> list:
    units = work_units(cfg, mode)
    n = len(units)
    return units[shard * n // cfg.shards:(shard + 1) * n // cfg.shards]


def _keep(hit: FourSquareHit, cfg: SearchConfig, stats: SearchStats) -> bool:
    if hit.trivial and not cfg.keep_trivial:
        stats.trivial_filtered += 1
        return False
    if hit.c == 0 and not cfg.keep_c_zero:
        stats.c_zero_filtered += 1
        return False
    return True


def fixed_y_hit(y: Fraction, p: int, s: int) -> Optional[FourSquareHit]:
    """Exact check of one slope; None unless it yields a surface point."""
    conic = ConicSlopeParam(y * y + y ** 4, y * y, y)
    z1, X1 = conic.point(p, s).affine
    if X1 == 0:
        return None
    x = sqrt_exact(X1)
    if x is None:
        return None
    w = sqrt_exact(z1 * z1 + z1 ** 4 - y ** 4)
    if w is None:
        return None
    pt = SurfacePointS(x, abs(y), abs(z1), w)
    return c_from_surface_point(pt, source={"mode": "fixed-y", "y": format_rational(y), "p": p, "s": s})


def _fixed_y_units(cfg: SearchConfig, units: list) -> tuple:
    hits, stats = [], SearchStats()
    for yi, p in units:
        y = abs(cfg.y_grid[yi])
        for pp, s in kernels.fixed_y_candidates(y.numerator, y.denominator, p, p, cfg.box, cfg.coprime):
            stats.candidates += 1
            hit = fixed_y_hit(y, pp, s)
            if hit is None:
                stats.exact_rejected += 1
            elif _keep(hit, cfg, stats):
                hits.append(hit)
    return hits, stats


def m_candidate_hit(p: int, q: int, r: int) -> tuple:
    """Normalize one (p, q, r) cell.  Returns (hit or None, rejection reason or None).

    Affine surface values: x^2 = sqrt(M)/T (either sign of the root),
    y^2 = y_pqr^2/T, z^2 = Zsq/T, w = 2su/T.
    """
    d = stuy_from_pqr(p, q, r)
    if d.T == 0:
        return None, "T = 0"
    M = eval_M(p, q, r)
    if M < 0:
        return None, "M < 0"
    root, exact = int_sqrt(int(M))
    if not exact:
        return None, "M not a square"
    ya = sqrt_exact(d.y * d.y / d.T)
    za = sqrt_exact(d.Zsq / d.T)
    if ya is None or za is None:
        return None, "y^2/T or Zsq/T not a square"
    xa = sqrt_exact(Fraction(root) / d.T)
    if xa is None:
        xa = sqrt_exact(Fraction(-root) / d.T)
    if xa is None:
        return None, "sqrt(M)/T not a square"
    if xa == 0:
        return None, "x0 = 0"
    w = abs(2 * d.s * d.u / d.T)
    if not on_surface(xa, ya, za, w):
        return None, "normalization-rejected"
    hit = c_from_surface_point(SurfacePointS(xa, ya, za, w),
                               source={"mode": "M", "p": p, "q": q, "r": r})
    return hit, None


def _m_units(cfg: SearchConfig, units: list) -> tuple:
    hits, stats = [], SearchStats()
    for p in units:
        for cell in kernels.m_box_candidates(p, p, cfg.box, cfg.coprime):
            stats.candidates += 1
            hit, why = m_candidate_hit(*cell)
            if hit is None:
                if why == "normalization-rejected":
                    stats.normalization_rejected += 1
                    stats.rejected_cells.append(cell)
                    log.info("normalization-rejected candidate %s", cell)
                else:
                    stats.exact_rejected += 1
            elif _keep(hit, cfg, stats):
                hits.append(hit)
    return hits, stats


def run_shard(cfg: SearchConfig, mode: str, shard: int) -> tuple:
    """Hits and stats for one shard, in enumeration order, before deduplication."""
    units = shard_units(cfg, mode, shard)
    hits, stats = (_fixed_y_units if mode == "fixed-y" else _m_units)(cfg, units)
    stats.hits = len(hits)
    return hits, stats


def _run_shard_packed(args):
    cfg_dict, mode, shard = args
    return run_shard(SearchConfig.from_dict(cfg_dict), mode, shard)


def iter_shards(cfg: SearchConfig, mode: str, shards=None):
    """Yield (shard, hits, stats) in shard order, fanning out over workers."""
    shards = list(range(cfg.shards)) if shards is None else list(shards)
    if cfg.workers == 1 or len(shards) <= 1:
        for k in shards:
            yield (k,) + run_shard(cfg, mode, k)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        jobs = [(cfg.to_dict(), mode, k) for k in shards]
        for k, (hits, stats) in zip(shards, pool.map(_run_shard_packed, jobs)):
            yield k, hits, stats


def dedupe(hits: list, stats: Optional[SearchStats] = None) -> list:
    seen, out = set(), []
    for h in hits:
        if h.key in seen:
            if stats is not None:
                stats.duplicates += 1
            continue
        seen.add(h.key)
        out.append(h)
    return out


def _search(cfg: SearchConfig, mode: str, stats: Optional[SearchStats]) -> list:
    total = SearchStats()
    hits = []
    for _, shard_hits, shard_stats in iter_shards(cfg, mode):
        hits.extend(shard_hits)
        total.merge(shard_stats)
    hits = dedupe(hits, total)
    total.hits = len(hits)
    if stats is not None:
        stats.merge(total)
    return hits


def search_fixed_y(y: RationalLike, cfg: SearchConfig, stats: Optional[SearchStats] = None) -> list:
    y = to_rational(y)
    if y == 0:
        raise ValueError("y must be nonzero")
    sub = SearchConfig((y,), cfg.box, cfg.coprime, cfg.shards, cfg.workers, cfg.keep_trivial, cfg.keep_c_zero)
    return _search(sub, "fixed-y", stats)


def search_grid(cfg: SearchConfig, stats: Optional[SearchStats] = None) -> list:
    """search_fixed_y over every y of the config's grid, merged and deduplicated."""
    return _search(cfg, "fixed-y", stats)


def search_M_fourth_power(cfg: SearchConfig, stats: Optional[SearchStats] = None) -> list:
    return _search(cfg, "M", stats)


def x0_zero_quartic() -> QuarticModel:
    """w^2 = c(1 + c + 2c^2 + c^3) = c^4 + 2c^3 + c^2 + c, through (0, 0)."""
    return QuarticModel(1, 2, 1, 1, 0, QuarticPoint(0, 0))


def prop31_torsion_demo() -> dict:
    """Send (0, 0) of the x0 = 0 quartic to a Weierstrass model and find its order."""
    model = x0_zero_quartic()
    E, corr = quartic_to_weierstrass(model)
    P = corr.forward(QuarticPoint(0, 0))
    order = torsion_order(E, P)
    return {
        "quartic": [format_rational(c) for c in (model.c4, model.c3, model.c2, model.c1, model.c0)],
        "nonsingular": model.is_nonsingular(),
        "point_on_quartic": model.contains(QuarticPoint(0, 0)),
        "curve": E.to_dict(),
        "image": P.to_dict(),
        "order": order,
        "infinite_order": order is None,
    }
