import importlib
from fractions import Fraction as F

import pytest

from sqorbits import _kernels_py, kernels
from sqorbits.exact import sqrt_exact

try:
    from sqorbits import _kernels as _compiled
except ImportError:
    _compiled = None

needs_compiled = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")


def test_qr_tables_are_exact():
    for m, table in zip(_kernels_py.MODULI, _kernels_py.QR_TABLES):
        squares = {k * k % m for k in range(m)}
        assert {v for v in range(m) if table[v]} == squares


def test_fixed_y_contains_known_slopes():
    cands = kernels.fixed_y_candidates(9, 8, -8, 8, 8)
    assert (-7, 3) in cands and (1, 3) in cands


def test_fixed_y_filter_is_sound():
    # brute force over a small box: every slope with both square conditions is kept
    y = F(9, 8)
    kept = set(_kernels_py.fixed_y_candidates(9, 8, -10, 10, 10, coprime=False))
    for p in range(-10, 11):
        for s in range(0, 11):
            if s == 0 and p != 1:
                continue
            T = p * p + s * s
            z = (y * y * p * p - 2 * y * p * s - y * y * s * s) / T
            X = (y * s * s - 2 * y * y * p * s - y * p * p) / T
            if sqrt_exact(X) is not None and sqrt_exact(z * z + z ** 4 - y ** 4) is not None:
                assert (p, s) in kept


def test_m_box_filter_is_sound():
    from sqorbits.foursquares import eval_M, stuy_from_pqr

    kept = set(_kernels_py.m_box_candidates(-3, 3, 3, coprime=False))
    for p in range(-3, 4):
        for q in range(-3, 4):
            for r in range(-3, 4):
                if (p, q, r) == (0, 0, 0):
                    continue
                d = stuy_from_pqr(p, q, r)
                M = eval_M(p, q, r)
                if sqrt_exact(M) is not None and sqrt_exact(d.Zsq * d.T) is not None:
                    assert (p, q, r) in kept


@needs_compiled
@pytest.mark.parametrize("args", [(9, 8, -40, 40, 40, True), (1, 1, -12, 12, 12, False), (3, 2, -20, 5, 30, True),
                                  (-5, 7, 0, 25, 25, True)])
def test_backends_agree_fixed_y(args):
    assert _compiled.fixed_y_candidates(*args) == _kernels_py.fixed_y_candidates(*args)


@needs_compiled
@pytest.mark.parametrize("args", [(-6, 6, 6, True), (-4, 4, 4, False), (2, 3, 9, True)])
def test_backends_agree_m_box(args):
    assert _compiled.m_box_candidates(*args) == _kernels_py.m_box_candidates(*args)


def test_pure_python_override(monkeypatch):
    monkeypatch.setenv("SQORBITS_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.fixed_y_candidates is _kernels_py.fixed_y_candidates
    finally:
        monkeypatch.undo()
        importlib.reload(kernels)
