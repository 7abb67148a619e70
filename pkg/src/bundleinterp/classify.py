"""Closed-form numerology: where the interpolation and irreducibility
theorems apply, plus the genus-2 quintic counterexample ledger.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterable, Sequence

from .tableaux import Partition, format_partition
from .verdict import SCHEMA


class Status(Enum):
    INTERPOLATION = "INTERPOLATION"
    WEAK_ONLY = "WEAK_ONLY"
    FAILS = "FAILS"
    PARTIAL = "PARTIAL"
    OUT_OF_RANGE = "OUT_OF_RANGE"


class Region(Enum):
    ELLIPTIC = "elliptic"
    SPACE = "space"
    HILBERT = "hilbert"


@dataclass(frozen=True)
class TripleVerdict:
    d: int
    g: int
    n: int
    status: Status
    irreducible_hilbert: bool | None
    citation: str
    partial: Partition | None = None

    def label(self) -> str:
        if self.status is Status.PARTIAL:
            return f"PARTIAL({format_partition(self.partial)})"
        return self.status.value


def elliptic_weak(d: int, n: int) -> bool:
    if n < 3:
        raise ValueError("need n >= 3")
    return d >= 7 and d >= n + 1 and 3 <= (2 * d) % (n - 1) <= n - 2


def elliptic_normal(d: int) -> tuple[bool, Partition]:
    """Weak interpolation for elliptic normal curves of degree ``d`` and the tail that extends it."""
    if d < 3:
        raise ValueError("need d >= 3")
    # h0(N) - (d-2)(d+2) < d - 2 simplifies to d > 6
    weak = d * d - (d - 2) * (d + 2) < d - 2
    return weak, Partition([2, 2]) if weak else Partition()


QUINTIC_PARTIAL = Partition([2] * 9)


def space_curve(d: int, g: int) -> TripleVerdict:
    irr = hilbert_irreducible(d, g, 3)
    if (d, g) == (5, 2):
        return TripleVerdict(d, g, 3, Status.PARTIAL, irr, "quintic-genus-2", QUINTIC_PARTIAL)
    if d >= g + 3:
        return TripleVerdict(d, g, 3, Status.INTERPOLATION, irr, "curves-interpolation-P3")
    return TripleVerdict(d, g, 3, Status.OUT_OF_RANGE, irr, "none")


def hilbert_irreducible(d: int, g: int, n: int) -> bool | None:
    """``True`` where irreducibility of the restricted Hilbert scheme is known, else ``None``."""
    if n < 3:
        raise ValueError("need n >= 3")
    if d >= 2 * g - 1 and d >= n + g:
        return True
    if n == 3 and (d >= g + 3 or (d == g + 2 and g >= 5) or (d == g + 1 and g >= 9)):
        return True
    return None


def hilbert_citation(d: int, g: int, n: int) -> str:
    if d >= 2 * g - 1 and d >= n + g:
        return "Hilbert-scheme-irreducibility"
    if hilbert_irreducible(d, g, n):
        return "Kim-Keem"
    return "none"


def trisecant_count(d: int) -> int:
    """Tangential trisecants of a general rational space curve of degree ``d``."""
    if d < 3:
        raise ValueError("need d >= 3")
    return 2 * (d - 2) * (d - 3)


def h0_general_linebundle(e: int, g: int) -> int:
    """Sections of a general (nonspecial) line bundle of degree ``e`` on a genus ``g`` curve."""
    return max(e - g + 1, 0)


def genus2_quintic_audit() -> dict:
    """Section counts showing the general genus-2 quintic misses ``(2^10)`` but keeps ``(2^9)``."""
    g = 2
    deg_sub, deg_quot = 12, 10  # O_Q(2,3)|_C and O_C(2)
    h_sub = h0_general_linebundle(deg_sub, g)
    h_quot = h0_general_linebundle(deg_quot, g)
    total = h_sub + h_quot
    quadrics = comb(3 + 2, 2)

    def after(points: int) -> dict:
        sub = h0_general_linebundle(deg_sub - points, g)
        # O_C(2)(-D) of degree 0 is chosen nontrivial, so has no sections
        quot = 0 if deg_quot - points <= 0 else h0_general_linebundle(deg_quot - points, g)
        return {
            "points": points,
            "h0_sub": sub,
            "h0_quotient": quot,
            "h0_N_minus_D": sub + quot,
            "expected": max(total - 2 * points, 0),
            "quadrics_through_points": max(quadrics - points, 0),
        }

    return {
        "schema": SCHEMA,
        "genus": g,
        "degree": 5,
        "caveat": "line-bundle counts assume a general divisor (nonspecial residual)",
        "h0_sub_O_Q(2,3)|_C": h_sub,
        "h0_quotient_O_C(2)": h_quot,
        "h0_N": total,
        "rank_N": 2,
        "h0_N_over_rank": total // 2,
        "quadric_space_dim": quadrics,
        "quadric_projective_dim": quadrics - 1,
        "after_10_points": after(10),
        "after_9_points": after(9),
        "fails": "(2^10)",
        "satisfies": format_partition(QUINTIC_PARTIAL),
    }


@dataclass(frozen=True)
class Row:
    d: int
    g_or_n: int
    status: str
    citation: str

    def as_list(self) -> list:
        return [self.d, self.g_or_n, self.status, self.citation]


CSV_HEADER = ("d", "g_or_n", "status", "citation")


def scan(which: Region, d_range: Sequence[int], second: Sequence[int], n: int = 3) -> list[Row]:
    """One row per lattice point, ordered by ``d`` then the second coordinate.

    ``second`` is ``n`` for ELLIPTIC and ``g`` for SPACE and HILBERT; ``n`` is
    the ambient dimension for HILBERT.
    """
    d_range, second = list(d_range), list(second)
    if not d_range or not second:
        raise ValueError("empty scan range")
    rows = []
    for d in sorted(d_range):
        for s in sorted(second):
            if which is Region.ELLIPTIC:
                ok = elliptic_weak(d, s)
                rows.append(Row(d, s, "true" if ok else "false",
                                "elliptic-curves-interpolation" if ok else "none"))
            elif which is Region.SPACE:
                v = space_curve(d, s)
                rows.append(Row(d, s, v.label(), v.citation))
            elif which is Region.HILBERT:
                irr = hilbert_irreducible(d, s, n)
                rows.append(Row(d, s, "true" if irr else "UNKNOWN", hilbert_citation(d, s, n)))
            else:
                raise ValueError(f"unknown region {which!r}")
    return rows


def rows_to_csv(rows: Iterable[Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_list())
    return buf.getvalue()


def rows_to_json(rows: Iterable[Row], which: Region) -> str:
    return json.dumps(
        {"schema": SCHEMA, "region": which.value, "rows": [dict(zip(CSV_HEADER, r.as_list())) for r in rows]},
        indent=2,
    )
