# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.  Same contract as ``_kernels_py``."""

from sqorbits._kernels_py import MODULI, QR_TABLES

cdef enum:
    NMOD = 13
    MAXMOD = 65

cdef int _mods[NMOD]
cdef unsigned char _qr[NMOD][MAXMOD]

cdef int _k, _v
for _k in range(NMOD):
    _mods[_k] = MODULI[_k]
    for _v in range(MODULI[_k]):
        _qr[_k][_v] = QR_TABLES[_k][_v]


cdef inline long long _mod(long long x, long long m) nogil:
    x = x % m
    return x + m if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def fixed_y_candidates(yn, yd, long long p_lo, long long p_hi, long long s_max, bint coprime=True):
    cdef long long ynr[NMOD]
    cdef long long ydr[NMOD]
    cdef int k, ok
    cdef long long p, s, m, P, S, YN, YD, zn, xn, T, zn2, T2, N
    for k in range(NMOD):
        ynr[k] = yn % MODULI[k]
        ydr[k] = yd % MODULI[k]
    out = []
    for p in range(p_lo, p_hi + 1):
        for s in range(0, s_max + 1):
            if s == 0 and p != 1:
                continue
            if coprime and _gcd(p, s) != 1:
                continue
            ok = 1
            for k in range(NMOD):
                m = _mods[k]
                P = _mod(p, m)
                S = _mod(s, m)
                YN = ynr[k]
                YD = ydr[k]
                xn = _mod(YN * YD % m * S % m * S - 2 * YN * YN % m * P % m * S - YN * YD % m * P % m * P, m)
                T = (P * P + S * S) % m
                if not _qr[k][xn * T % m]:
                    ok = 0
                    break
            if not ok:
                continue
            for k in range(NMOD):
                m = _mods[k]
                P = _mod(p, m)
                S = _mod(s, m)
                YN = ynr[k]
                YD = ydr[k]
                zn = _mod(YN * YN % m * P % m * P - 2 * YN * YD % m * P % m * S - YN * YN % m * S % m * S, m)
                T = (P * P + S * S) % m
                zn2 = zn * zn % m
                T2 = T * T % m
                N = _mod(zn2 * (YD * YD % m * YD % m * YD % m) % m * T2
                         + zn2 * zn2
                         - (YN * YN % m * YN % m * YN % m) * (YD * YD % m * YD % m * YD % m) % m * T2 % m * T2, m)
                if not _qr[k][N]:
                    ok = 0
                    break
            if ok:
                out.append((p, s))
    return out


def m_box_candidates(long long p_lo, long long p_hi, long long bound, bint coprime=True):
    cdef int k, ok
    cdef long long p, q, r, m, P, Q, R, s, t, u, y, T, zsq, y2, M
    out = []
    for p in range(p_lo, p_hi + 1):
        for q in range(-bound, bound + 1):
            for r in range(-bound, bound + 1):
                if p == 0 and q == 0 and r == 0:
                    continue
                if coprime and _gcd(_gcd(p, q), r) != 1:
                    continue
                ok = 1
                for k in range(NMOD):
                    m = _mods[k]
                    P = _mod(p, m)
                    Q = _mod(q, m)
                    R = _mod(r, m)
                    s = _mod(4 * P * P + 2 * Q * P - 2 * P * R - Q * Q + R * R, m)
                    t = _mod(4 * Q * P + Q * Q - 2 * Q * R + R * R, m)
                    u = _mod(4 * P * P + 2 * Q * P - 2 * P * R + Q * Q - R * R, m)
                    y = _mod(4 * P * R + 2 * Q * R - Q * Q - R * R, m)
                    T = 4 * t * u % m
                    zsq = _mod(s * s + t * t + u * u - 2 * t * u, m)
                    y2 = y * y % m
                    M = _mod(y2 * T + y2 * y2 - T * zsq, m)
                    if not _qr[k][M]:
                        ok = 0
                        break
                    if not _qr[k][zsq * T % m]:
                        ok = 0
                        break
                if ok:
                    out.append((p, q, r))
    return out
