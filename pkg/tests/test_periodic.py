from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings

from sqorbits.dynamics import QuadMap, conjugate_to_normal, detect_cycle
from sqorbits.errors import DegenerateParameterError
from sqorbits.exact import sqrt_exact
from sqorbits.periodic import (
    CATALOG,
    PoonenCycle,
    SquareCycleWitness,
    catalog_check,
    poonen_fixed,
    poonen_orientation,
    poonen_three_cycle,
    poonen_three_points,
    poonen_two_cycle,
    rational_cycle_scan,
    recover_tau,
    square_cycle_search,
    square_three_cycle_condition,
    square_three_cycle_map,
    square_two_cycle,
)
from strategies import rational_in, rationals


def test_poonen_fixed():
    cyc = poonen_fixed(0)
    assert cyc.c == F(1, 4) and cyc.points == [F(1, 2)]
    cyc = poonen_fixed(F(3, 2))
    assert cyc.c == -2 and set(cyc.points) == {2, -1}
    assert set(poonen_fixed(F(1, 2)).points) == {1, 0}


def test_poonen_two_cycle():
    cyc = poonen_two_cycle(F(15, 8))
    assert cyc.c == F(-273, 64) and cyc.points == [F(11, 8), F(-19, 8)]
    cyc = poonen_two_cycle(1)
    assert cyc.c == F(-7, 4) and cyc.points == [F(1, 2), F(-3, 2)]
    with pytest.raises(DegenerateParameterError):
        poonen_two_cycle(0)


def test_poonen_three_cycle():
    cyc = poonen_three_cycle(F(-1, 2))
    assert cyc.c == F(-29, 16) and cyc.points == [F(-7, 4), F(5, 4), F(-1, 4)]
    assert poonen_three_cycle(2).c == F(-301, 144)
    for bad in (0, -1):
        with pytest.raises(DegenerateParameterError):
            poonen_three_cycle(bad)


def test_cycle_json_round_trip():
    cyc = poonen_three_cycle(3)
    assert PoonenCycle.from_dict(cyc.to_dict()).to_dict() == cyc.to_dict()
    w = square_three_cycle_map(F(7, 4), F(5, 4), F(1, 4))
    assert SquareCycleWitness.from_dict(w.to_dict()).to_dict() == w.to_dict()


def test_square_two_cycle_examples():
    w = square_two_cycle(2, F(1, 2))
    assert w.map == QuadMap.monic(F(-21, 4), F(21, 4)) and w.squares == [4, F(1, 4)] and w.period == 2
    w = square_two_cycle(0, 0)
    assert w.map == QuadMap.monic(-1, 0) and w.degenerate and w.squares == [0]
    w = square_two_cycle(1, 1)
    assert w.map == QuadMap.monic(-3, 3) and w.degenerate and w.map(1) == 1


@given(rationals, rationals)
def test_square_two_cycle_conjugates_to_poonen(m, k):
    w = square_two_cycle(m, k)
    if w.degenerate:
        return
    c, _ = conjugate_to_normal(w.map)
    sigma = sqrt_exact(-c - F(3, 4))
    assert sigma is not None and sigma != 0


@given(rational_in(-20, 20, 40))
def test_no_square_two_cycle_for_normal_maps(sigma):
    assert not (sqrt_exact(F(-1, 2) + sigma) is not None and sqrt_exact(F(-1, 2) - sigma) is not None)


def test_condition_examples():
    assert square_three_cycle_condition(F(7, 4), F(5, 4), F(1, 4)) == 0
    assert square_three_cycle_condition(F(3, 7), F(3, 7), F(3, 7)) == 0
    assert square_three_cycle_condition(1, 0, 0) == 1


def test_three_cycle_map_examples():
    w = square_three_cycle_map(F(7, 4), F(5, 4), F(1, 4))
    assert w.map == QuadMap.monic(F(-29, 8), F(841, 256)) and w.period == 3
    w = square_three_cycle_map(F(115, 66), F(47, 33), F(124, 33))
    assert w.map == QuadMap.monic(F(-74333, 4356), F(211660729, 4743684))
    with pytest.raises(DegenerateParameterError):
        square_three_cycle_map(1, 1, 2)
    with pytest.raises(ValueError, match="residual"):
        square_three_cycle_map(1, 2, 3)


def test_three_cycle_rotation_same_map():
    base = square_three_cycle_map(F(7, 4), F(5, 4), F(1, 4))
    rot = square_three_cycle_map(F(5, 4), F(1, 4), F(7, 4))
    assert rot.map == base.map


def test_recover_tau_examples():
    assert F(-1, 2) in recover_tau(QuadMap.monic(F(-29, 8), F(841, 256)))
    assert 3 in recover_tau(QuadMap.monic(F(-1849, 288), F(3418801, 331776)))
    assert recover_tau(QuadMap.normal(1)) == []


@settings(max_examples=25)
@given(rational_in(-30, 30, 30))
def test_recover_tau_inverts_poonen(tau):
    assume(tau not in (0, -1))
    taus = recover_tau(QuadMap.normal(poonen_three_cycle(tau).c))
    assert tau in taus


def test_catalog():
    report = catalog_check()
    assert [r["row"] for r in report] == ["f1", "f2", "f3", "f4", "f5"]
    assert all(r["passed"] for r in report)
    f3 = report[2]
    assert f3["roots"] == ["25/12", "17/12", "11/12"] and f3["printed_tau"] == "1/2"
    assert report[4]["printed_tau"] == "-12"


def test_catalog_shifted_points():
    for name, (a, b), roots, tau in CATALOG:
        w = square_three_cycle_map(*roots)
        shift = w.map.B / 2
        assert {s + shift for s in w.squares} == set(poonen_three_points(F(tau)))
        assert poonen_orientation(w, F(tau)) is not None
    assert F(49, 16) - F(29, 16) == F(5, 4)


def test_square_cycle_search():
    ws = square_cycle_search(4)
    assert any({F(7, 4), F(5, 4), F(1, 4)} == set(w.roots) for w in ws)
    for w in ws:
        assert detect_cycle(w.map, w.squares[0], 6).cycle_length == 3
    assert square_cycle_search(1) == []
    with pytest.raises(ValueError):
        square_cycle_search(0)


def test_square_cycle_search_parallel_matches():
    serial = [w.to_dict() for w in square_cycle_search(4)]
    assert [w.to_dict() for w in square_cycle_search(4, workers=2)] == serial


def test_rational_cycle_scan():
    found = rational_cycle_scan(QuadMap.normal(F(-29, 16)), 4)
    assert found[3] == [F(-7, 4), F(-1, 4), F(5, 4)]
    assert max(found) <= 3
