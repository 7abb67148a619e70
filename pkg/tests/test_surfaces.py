import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bundleinterp.fields import QQ, PrimeField
from bundleinterp.surfaces import (
    HirzebruchState,
    InconsistencyError,
    PicardClass,
    PointKind,
    exceptional_count,
    intersect,
    k1_curve_through,
    modify,
    modify_general_sequence,
    on_k1_curve,
    p3_secant_closed_form,
    p3_secant_splitting,
    pullbacks_distinct,
    secant_modification_trace,
    secant_pullback,
    simulate_general_sequence,
    splitting_from_surface,
)

F = HirzebruchState


@pytest.mark.parametrize(
    "n, kind, expected",
    [(0, PointKind.GENERAL, 1), (2, PointKind.GENERAL, 1), (2, PointKind.ON_NEG_SECTION, 3)],
)
def test_modify_examples(n, kind, expected):
    assert modify(F(n), kind) == F(expected)


def test_f0_has_no_negative_section():
    with pytest.raises(ValueError):
        modify(F(0), PointKind.ON_NEG_SECTION)
    with pytest.raises(ValueError):
        F(-1)


@pytest.mark.parametrize("n, k, expected", [(3, 2, 1), (0, 3, 1), (2, 2, 0)])
def test_general_sequence_examples(n, k, expected):
    assert modify_general_sequence(n, k) == F(expected)
    assert str(F(expected)) == f"F{expected}"


@given(st.integers(0, 12), st.integers(0, 20))
def test_closed_form_matches_simulation(n, k):
    assert simulate_general_sequence(n, k)[-1] == modify_general_sequence(n, k)


def test_k1_examples():
    assert on_k1_curve([(0, 3), (1, 3)])
    assert not on_k1_curve([(0, 2), (1, 3)])
    assert not on_k1_curve([(0, 0), (1, 1), (2, 4), (3, 9)])
    a1, b1, a2, b2 = 2, 7, -3, Fraction(5, 4)
    assert on_k1_curve([(a1, b1), (b1, a1), (a2, b2), (b2, a2)])


def test_k1_curve_through_symmetric_points():
    pts = [(1, 4), (4, 1), (2, 9), (9, 2)]
    coeffs = k1_curve_through(pts)
    assert coeffs is not None
    A0, A1, B0, B1 = coeffs
    for x, y in pts:
        assert y * (A0 + A1 * x) + B0 + B1 * x == 0
    assert k1_curve_through([(0, 0), (1, 1), (2, 4), (3, 9)]) is None


def test_k1_rejects_shared_fibres():
    with pytest.raises(ValueError):
        on_k1_curve([(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        on_k1_curve([(1, 2), (2, 3), (3, 4)])


def test_k1_mod_p():
    assert on_k1_curve([(1, 4), (4, 1), (2, 9), (9, 2)], PrimeField(10007))


def test_intersection_examples():
    E1 = PicardClass(0, 0, (1, 0, 0, 0))
    assert intersect(E1, E1) == -1
    assert intersect(PicardClass(1, 1, (0, 0, 0, 0)), PicardClass(1, 1, (0, 0, 0, 0))) == 2
    A = PicardClass(1, 2, (1, 1, 1, 1))
    assert intersect(A, A) == 0


def test_secant_pullback_examples():
    assert secant_pullback(4, 0, 1) == PicardClass(1, 2, (-1, -1, -1, -1, 0, 0, 0, 0))
    assert secant_pullback(3, 2, 1) == PicardClass(2, 1, ())
    P = secant_pullback(5, 1, 0)
    assert (P.c1, P.c2) == (1, 0) and not any(P.mults)


@pytest.mark.parametrize("d", range(3, 9))
def test_pullback_lattice_identities(d):
    A = secant_pullback(d, 0, 1)
    assert intersect(A, A) == 0
    assert len(A.mults) == 2 * exceptional_count(d) == 4 * (d - 2) * (d - 3)
    assert A.swap().swap() == A
    # swapped class still squares to zero
    B = secant_pullback(d, 0, 1, swapped=True)
    assert intersect(B, B) == 0


@pytest.mark.parametrize("d, k, expected", [(4, 0, True), (3, 1, False), (3, 2, True)])
def test_pullbacks_distinct_examples(d, k, expected):
    assert pullbacks_distinct(d, k) is expected


@pytest.mark.parametrize("d, k, expected", [(3, 2, (8, 6)), (3, 1, (6, 6)), (5, 3, (12, 12))])
def test_p3_secant_examples(d, k, expected):
    assert p3_secant_splitting(d, k).splitting == expected


def test_p3_secant_trace_shows_twisted_cubic_obstruction():
    trace = p3_secant_splitting(3, 2).trace
    assert [r.surface for r in trace] == ["F0", "F1", "F0", "F1", "F2"]
    assert "on_k1_curve=true" in trace[-1].reason


@given(st.integers(3, 10), st.integers(0, 6), st.integers(0, 1000))
def test_trace_is_seed_independent(d, k, seed):
    final = secant_modification_trace(d, k, seed)[-1].surface
    assert final == secant_modification_trace(d, k, 0)[-1].surface
    assert splitting_from_surface(4 * d - 2 + 2 * k, int(final[1:])) == p3_secant_closed_form(d, k)


def test_splitting_from_surface_parity():
    assert splitting_from_surface(14, 2) == (8, 6)
    with pytest.raises(InconsistencyError):
        splitting_from_surface(14, 1)
