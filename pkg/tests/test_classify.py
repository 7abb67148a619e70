import csv
import io
import json

import pytest
from hypothesis import given, strategies as st

from bundleinterp.classify import (
    CSV_HEADER,
    QUINTIC_PARTIAL,
    Region,
    Status,
    elliptic_normal,
    elliptic_weak,
    genus2_quintic_audit,
    h0_general_linebundle,
    hilbert_irreducible,
    rows_to_csv,
    rows_to_json,
    scan,
    space_curve,
    trisecant_count,
)
from bundleinterp.surfaces import exceptional_count, secant_pullback
from bundleinterp.tableaux import admissible


@pytest.mark.parametrize("d, n, expected", [(7, 6, True), (7, 3, False), (6, 5, False), (9, 6, True), (10, 8, True)])
def test_elliptic_weak_examples(d, n, expected):
    assert elliptic_weak(d, n) is expected


def test_elliptic_weak_needs_n_at_least_three():
    with pytest.raises(ValueError):
        elliptic_weak(9, 2)


@given(st.integers(3, 14), st.integers(0, 40))
def test_elliptic_weak_periodic_in_d(n, offset):
    d = max(7, n + 1) + offset
    assert elliptic_weak(d, n) == elliptic_weak(d + n - 1, n)


def test_elliptic_region_excludes_small_n():
    assert not any(elliptic_weak(d, n) for d in range(3, 60) for n in (3, 4))


@pytest.mark.parametrize("d, weak", [(7, True), (6, False), (20, True), (3, False)])
def test_elliptic_normal_examples(d, weak):
    w, tail = elliptic_normal(d)
    assert w is weak
    assert tail == ((2, 2) if weak else ())


@pytest.mark.parametrize(
    "d, g, status",
    [(6, 3, Status.INTERPOLATION), (5, 2, Status.PARTIAL), (4, 2, Status.OUT_OF_RANGE)],
)
def test_space_curve_examples(d, g, status):
    v = space_curve(d, g)
    assert v.status is status
    if status is Status.PARTIAL:
        assert v.partial == (2,) * 9 and v.label() == "PARTIAL(2,2,2,2,2,2,2,2,2)"


def test_quintic_partial_is_admissible():
    # rank 2, h0 = 20
    assert admissible(QUINTIC_PARTIAL, 2, 20)
    assert not admissible(QUINTIC_PARTIAL + (2, 2), 2, 20)


def test_space_curve_ranges_nest():
    for d in range(0, 31):
        for g in range(0, d):
            if space_curve(d, g).status is Status.INTERPOLATION:
                assert hilbert_irreducible(d, g, 3) is True


@pytest.mark.parametrize("d, g, n, expected", [(9, 4, 3, True), (7, 5, 3, True), (5, 4, 4, None), (10, 9, 3, True)])
def test_hilbert_examples(d, g, n, expected):
    assert hilbert_irreducible(d, g, n) is expected


@given(st.integers(0, 40), st.integers(0, 20), st.integers(3, 10))
def test_hilbert_never_false(d, g, n):
    assert hilbert_irreducible(d, g, n) in (True, None)


@pytest.mark.parametrize("d, expected", [(3, 0), (4, 4), (6, 24)])
def test_trisecant_examples(d, expected):
    assert trisecant_count(d) == expected


@pytest.mark.parametrize("d", range(3, 9))
def test_trisecants_match_lattice(d):
    assert trisecant_count(d) == exceptional_count(d) == len(secant_pullback(d, 0, 1).mults) // 2


def test_quintic_audit():
    a = genus2_quintic_audit()
    assert h0_general_linebundle(12, 2) == 11
    assert h0_general_linebundle(10, 2) == 9
    assert h0_general_linebundle(1, 2) == 0
    assert a["h0_N"] == 20 == 2 * a["h0_N_over_rank"]
    assert a["quadric_projective_dim"] == 9
    assert a["after_10_points"]["h0_N_minus_D"] == 1 and a["after_10_points"]["expected"] == 0
    assert a["after_9_points"]["h0_N_minus_D"] == 2 == a["after_9_points"]["expected"]
    assert "general divisor" in a["caveat"]
    json.dumps(a)


def test_scan_examples():
    rows = scan(Region.ELLIPTIC, range(7, 10), range(5, 7))
    assert len(rows) == 6
    assert {(r.d, r.g_or_n): r.status for r in rows}[(7, 6)] == "true"
    rows = scan(Region.SPACE, range(5, 7), range(2, 4))
    assert any(r.status.startswith("PARTIAL") and (r.d, r.g_or_n) == (5, 2) for r in rows)
    rows = scan(Region.HILBERT, range(3, 5), [0], n=3)
    assert all(r.status == "true" for r in rows)
    with pytest.raises(ValueError):
        scan(Region.SPACE, [], range(3))


def test_scan_ordering_and_csv():
    rows = scan(Region.SPACE, [6, 3, 5], [2, 0])
    assert [(r.d, r.g_or_n) for r in rows] == sorted((r.d, r.g_or_n) for r in rows)
    text = rows_to_csv(rows)
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_HEADER
    assert len(parsed) == len(rows) + 1
    assert json.loads(rows_to_json(rows, Region.SPACE))["schema"] == "v1"
