"""Pure-Python search kernels.

Both kernels are sound pre-filters: they return every grid cell whose
must-be-square quantities are quadratic residues modulo each entry of
MODULI.  A true square passes every residue test, so no hit is ever lost;
exact verification happens afterwards in ``foursquares``.  The compiled
kernels implement the same contract and must return identical lists.
"""
from math import gcd

MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47)

QR_TABLES = tuple(
    bytes(1 if any((k * k - v) % m == 0 for k in range(m)) else 0 for v in range(m))
    for m in MODULI
)

_PAIRS = tuple(zip(MODULI, QR_TABLES))


def _residue_square(v):
    for m, table in _PAIRS:
        if not table[v % m]:
            return False
    return True


def fixed_y_candidates(yn, yd, p_lo, p_hi, s_max, coprime=True):
    """Slopes (p, s) for the conic through (y^2, y) with y = yn/yd.

    The second intersection is z yd^2 = yn^2 p^2 - 2 yn yd p s - yn^2 s^2,
    X yd^2 = yn yd s^2 - 2 yn^2 p s - yn yd p^2, T = p^2 + s^2.  A hit needs
    X/T to be a square (so X*T is) and z1^2 + z1^4 - y^4 to be a square,
    whose numerator over (yd^2 T)^4 is N below.  s = 0 is only taken with
    p = 1 since every (p, 0) is the same slope.
    """
    out = []
    yn2, yd2 = yn * yn, yd * yd
    yn4yd4 = yn2 * yn2 * yd2 * yd2
    yd4 = yd2 * yd2
    for p in range(p_lo, p_hi + 1):
        for s in range(0, s_max + 1):
            if s == 0 and p != 1:
                continue
            if coprime and gcd(p, s) != 1:
                continue
            zn = yn2 * p * p - 2 * yn * yd * p * s - yn2 * s * s
            xn = yn * yd * s * s - 2 * yn2 * p * s - yn * yd * p * p
            T = p * p + s * s
            if not _residue_square(xn * T):
                continue
            zn2 = zn * zn
            T2 = T * T
            N = zn2 * yd4 * T2 + zn2 * zn2 - yn4yd4 * T2 * T2
            if _residue_square(N):
                out.append((p, s))
    return out


def m_box_candidates(p_lo, p_hi, bound, coprime=True):
    """Triples (p, q, r) of the box whose M value and Zsq*T are residues.

    M is evaluated through the identity M = y^2 T + y^4 - T Zsq.
    """
    out = []
    for p in range(p_lo, p_hi + 1):
        for q in range(-bound, bound + 1):
            for r in range(-bound, bound + 1):
                if p == 0 and q == 0 and r == 0:
                    continue
                if coprime and gcd(gcd(p, q), r) != 1:
                    continue
                s = 4 * p * p + 2 * q * p - 2 * p * r - q * q + r * r
                t = 4 * q * p + q * q - 2 * q * r + r * r
                u = 4 * p * p + 2 * q * p - 2 * p * r + q * q - r * r
                y = 4 * p * r + 2 * q * r - q * q - r * r
                T = 4 * t * u
                zsq = s * s + t * t + u * u - 2 * t * u
                y2 = y * y
                M = y2 * T + y2 * y2 - T * zsq
                if not _residue_square(M):
                    continue
                if _residue_square(zsq * T):
                    out.append((p, q, r))
    return out
