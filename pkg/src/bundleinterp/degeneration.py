"""Interpolation statements carried through nodal degenerations.

A ``CurveModel`` is a ledger, not a geometric object: it records the
ambient space, degree, genus, normal-bundle cohomology and the lambdas
already proven for the normal bundle.  Attaching lines and secants updates
that ledger by the gluing rules; generality hypotheses (skew tangents, a
secant away from a subbundle, reattachment by a rigid motion) are boolean
inputs recorded in the trace.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence

from .p1bundles import SplittingType, classify, h0, h1, standard_lambda, InterpolationKind
from .tableaux import Partition, admissible, dominates
from .verdict import SCHEMA, Step, Verdict


class BookkeepingError(ArithmeticError):
    """h0 bookkeeping disagrees with the Euler characteristic."""


def normal_euler_characteristic(n: int, degree: int, genus: int) -> int:
    """``chi(N_X) = (n + 1) d + (n - 3)(1 - g)`` for a curve in ``P^n``."""
    return (n + 1) * degree + (n - 3) * (1 - genus)


def rational_normal_bundle(d: int, n: int) -> SplittingType:
    """Splitting type of the normal bundle of a general rational curve of degree ``d`` in ``P^n``."""
    if n < 2 or d < n:
        raise ValueError(f"need d >= n >= 2, got d={d}, n={n}")
    q, r = divmod(2 * d - 2, n - 1)
    return SplittingType([d + q + 1] * r + [d + q] * (n - 1 - r))


@dataclass(frozen=True)
class CurveModel:
    ambient: int
    degree: int
    genus: int
    h0_normal: int
    h1_normal: int = 0
    normal_splitting: SplittingType | None = None
    established: tuple[Partition, ...] = ()
    strongly_smoothable: bool = True
    spanning: bool = False
    planar: bool = False
    restriction_degree: int | None = None
    secant_restrictions: tuple[SplittingType, ...] = ()
    reattachment_required: bool = False
    chain: tuple[Step, ...] = ()

    def __post_init__(self):
        if self.ambient < 2:
            raise ValueError("ambient dimension must be at least 2")
        object.__setattr__(self, "established", tuple(Partition(p) for p in self.established))
        if self.normal_splitting is not None:
            N = self.normal_splitting
            if N.rank != self.rank:
                raise ValueError(f"normal bundle must have rank {self.rank}")
            if h0(N) != self.h0_normal or h1(N) != self.h1_normal:
                raise BookkeepingError("h0/h1 disagree with the recorded splitting")
        if self.h1_normal == 0:
            chi = normal_euler_characteristic(self.ambient, self.degree, self.genus)
            if chi != self.h0_normal:
                raise BookkeepingError(f"h0 = {self.h0_normal} but chi = {chi}")
        for lam in self.established:
            if not admissible(lam, self.rank, self.h0_normal):
                raise ValueError(f"{lam!r} is not admissible for rank {self.rank}, h0 {self.h0_normal}")

    @property
    def rank(self) -> int:
        return self.ambient - 1

    def satisfies(self, lam: Sequence[int]) -> bool:
        """Is ``lam`` implied by an established statement (via dominance)?"""
        return any(dominates(lam, mu) for mu in self.established)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "ambient": self.ambient,
            "degree": self.degree,
            "genus": self.genus,
            "h0_normal": self.h0_normal,
            "h1_normal": self.h1_normal,
            "normal_splitting": None if self.normal_splitting is None else list(self.normal_splitting),
            "established": [list(p) for p in self.established],
            "flags": {
                "strongly_smoothable": self.strongly_smoothable,
                "spanning": self.spanning,
                "planar": self.planar,
                "reattachment_required": self.reattachment_required,
            },
            "restriction_degree": self.restriction_degree,
            "secant_restrictions": [list(s) for s in self.secant_restrictions],
            "chain": [s.to_dict() for s in self.chain],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def rational_curve(d: int, n: int) -> CurveModel:
    """General rational curve of degree ``d >= n`` in ``P^n``: balanced normal bundle, regular interpolation."""
    N = rational_normal_bundle(d, n)
    (lam,) = standard_lambda(N, InterpolationKind.REGULAR)
    if not classify(N).regular:
        raise BookkeepingError(f"{N} should be balanced")
    step = Step(
        "general rational curve: balanced normal bundle, interpolation",
        {"d": d, "n": n},
        {"normal_splitting": list(N), "h0": h0(N), "lambda": list(lam)},
    )
    return CurveModel(
        ambient=n,
        degree=d,
        genus=0,
        h0_normal=h0(N),
        normal_splitting=N,
        established=(lam,),
        spanning=d >= n,
        planar=n == 2,
        restriction_degree=N.degree,
        chain=(step,),
    )


def line(n: int) -> CurveModel:
    """A line in ``P^n``: ``N = O(1)^(n-1)``, satisfying ``((n-1)^2)``-interpolation."""
    N = SplittingType([1] * (n - 1))
    step = Step("line: N_L = O(1)^(n-1)", {"n": n}, {"lambda": [n - 1, n - 1]})
    return CurveModel(
        ambient=n,
        degree=1,
        genus=0,
        h0_normal=h0(N),
        normal_splitting=N,
        established=(Partition([n - 1, n - 1]),),
        spanning=False,
        planar=True,
        restriction_degree=N.degree,
        chain=(step,),
    )


def attach_line_one_point(c: CurveModel) -> CurveModel:
    """Attach a line meeting ``c`` once: every established ``lam`` becomes ``(n-1, lam)``."""
    if not c.established:
        raise ValueError("no established interpolation statement to propagate")
    n = c.ambient
    new = tuple(Partition((n - 1,) + tuple(lam)) for lam in c.established)
    h0_new = c.h0_normal + n + 1
    step = Step(
        "curve plus one-point line: (n-1, lambda)-interpolation",
        {"established": [list(p) for p in c.established], "h0_C": c.h0_normal},
        {
            "established": [list(p) for p in new],
            "h0_X": h0_new,
            "arithmetic": f"h0(N_X|_C) + h0(N_X|_L) - (n-1) = ({c.h0_normal}+1) + {2 * n - 1} - {n - 1}",
        },
    )
    return replace(
        c,
        degree=c.degree + 1,
        h0_normal=h0_new,
        h1_normal=0,
        normal_splitting=None,
        established=new,
        planar=c.planar and n == 2,
        restriction_degree=None if c.restriction_degree is None else c.restriction_degree + 1,
        chain=c.chain + (step,),
    )


def secant_restriction(n: int, skew_tangents: bool) -> SplittingType:
    """``N_X|_L`` for a secant line ``L``: ``(2, 2, 1^(n-3))`` if the tangents are skew, else ``(3, 1^(n-2))``."""
    if skew_tangents:
        return SplittingType([2, 2] + [1] * (n - 3))
    return SplittingType([3] + [1] * (n - 2))


def attach_secant(c: CurveModel, skew_tangents: bool) -> CurveModel:
    """Attach a secant line: keeps every ``lam``, and adds ``(lam, 2)`` when the two tangent lines are skew."""
    if not c.established:
        raise ValueError("no established interpolation statement to propagate")
    if skew_tangents and c.planar:
        raise ValueError("a planar curve has no secant with skew tangent lines")
    if c.h1_normal:
        raise ValueError("secant attachment bookkeeping needs H^1(N_C) = 0")
    n = c.ambient
    new = list(c.established)
    if skew_tangents:
        new += [Partition(tuple(lam) + (2,)) for lam in c.established]
    h0_new = c.h0_normal + 4
    restr = secant_restriction(n, skew_tangents)
    step = Step(
        "curve plus secant line" + (" with skew tangents: (lambda, 2)" if skew_tangents else ": lambda kept"),
        {"established": [list(p) for p in c.established], "skew_tangents": skew_tangents, "h0_C": c.h0_normal},
        {"established": [list(p) for p in new], "h0_X": h0_new, "N_X|_L": list(restr)},
    )
    return replace(
        c,
        degree=c.degree + 1,
        genus=c.genus + 1,
        h0_normal=h0_new,
        normal_splitting=None,
        established=tuple(dict.fromkeys(new)),
        restriction_degree=None if c.restriction_degree is None else c.restriction_degree + 2,
        secant_restrictions=c.secant_restrictions + (restr,),
        chain=c.chain + (step,),
    )


def union_curves(c: CurveModel, d: CurveModel) -> CurveModel:
    """Union of two curves meeting once: ``lam`` on ``c`` and ``(n-1, mu)`` on ``d`` give ``(lam, mu)``."""
    if c.ambient != d.ambient:
        raise ValueError("curves live in different projective spaces")
    n = c.ambient
    if not c.established:
        raise ValueError("first curve has no established statement")
    mus = [Partition(p[1:]) for p in d.established if p and p[0] == n - 1]
    if not mus:
        raise ValueError(f"second curve must establish some (n-1, mu) = ({n - 1}, ...)")
    new = tuple(dict.fromkeys(Partition(tuple(lam) + tuple(mu)) for lam in c.established for mu in mus))
    h0_new = c.h0_normal + d.h0_normal + 2 - (n - 1)
    # a line needs no rigid motion: two points on a line have no moduli
    motion = not (d.degree == 1 and d.genus == 0)
    step = Step(
        "union of two curves meeting once: (lambda, mu)-interpolation",
        {"lambda": [list(p) for p in c.established], "mu": [list(p) for p in mus]},
        {
            "established": [list(p) for p in new],
            "h0_X": h0_new,
            "arithmetic": f"({c.h0_normal}+1) + ({d.h0_normal}+1) - {n - 1}",
            "reattachment_required": motion,
        },
    )
    return CurveModel(
        ambient=n,
        degree=c.degree + d.degree,
        genus=c.genus + d.genus,
        h0_normal=h0_new,
        h1_normal=0,
        established=new,
        strongly_smoothable=c.strongly_smoothable and d.strongly_smoothable,
        spanning=c.spanning or d.spanning,
        planar=c.planar and d.planar and n == 2,
        restriction_degree=None if c.restriction_degree is None else c.restriction_degree + 1,
        secant_restrictions=c.secant_restrictions,
        reattachment_required=c.reattachment_required or motion,
        chain=c.chain + d.chain + (step,),
    )


class SmoothingKind(Enum):
    SECANT_OR_TANGENT_LINE = "secant_or_tangent_line"
    MANY_ONE_POINT_LINES = "many_one_point_lines"
    MIXED = "mixed"


@dataclass(frozen=True)
class Smoothability:
    smoothable: bool
    h1_NX_zero: bool | None  # None: not decided by the available hypotheses


def smoothable(kind: SmoothingKind, h1_NC: int, a: int = 0, b: int = 0, general_lines: bool = False) -> Smoothability:
    """Strong smoothability of a smooth curve plus lines (``a`` one-point lines, ``b`` secants)."""
    if kind is SmoothingKind.MANY_ONE_POINT_LINES:
        ok = a >= h1_NC + 1
        if not ok:
            return Smoothability(False, None)
        return Smoothability(True, True if (h1_NC == 0 or general_lines) else None)
    if h1_NC == 0:
        return Smoothability(True, True)
    return Smoothability(False, None)


OPENNESS = Step(
    "interpolation is open: transfers to the general curve of the component",
    {"requires": "H^1(N_X) = 0 and X smoothable"},
    {},
)


def elliptic_pipeline(d: int, n: int) -> Verdict:
    """Weak interpolation for a general elliptic curve of degree ``d`` in ``P^n`` by degeneration.

    Degenerates to a rational curve of degree ``d - 1`` plus a secant line.
    """
    if n < 2 or d < n + 1:
        raise ValueError(f"need d >= n + 1 >= 3, got d={d}, n={n}")
    C = rational_curve(d - 1, n)
    N = C.normal_splitting
    q, r = divmod(2 * d - 4, n - 1)
    X = attach_secant(C, skew_tangents=not C.planar)
    chain = list(X.chain)
    caveats = []
    rank = n - 1
    qX = X.h0_normal // rank
    weak = Partition([rank] * qX)
    value = False
    if d < 7:
        caveats.append("degree below 7: outside the proven range")
    elif X.satisfies(weak):
        chain.append(
            Step(
                "floor test: weak lambda dominated by an established lambda",
                {"h0_C": C.h0_normal, "h0_X": X.h0_normal, "rank": rank},
                {"floor_C": C.h0_normal // rank, "floor_X": qX, "r_plus_4": r + 4},
            )
        )
        value = True
    else:
        # bump the single low-degree summand with a secant away from the top summand
        low = [a for a in N if a < max(N)]
        spanning = C.spanning
        if len(low) == 1 and spanning:
            bumped_min = min(N) + 1
            ok = bumped_min >= qX - 1
            chain.append(
                Step(
                    "general secant away from the top Harder-Narasimhan summand bumps the low summand",
                    {"N_C": list(N), "corank_top": len(low), "spanning": spanning},
                    {"min_degree_after": bumped_min, "twist_points": qX, "nonspecial_after_twist": ok},
                )
            )
            value = ok
            if not ok:
                caveats.append("bump insufficient: floor rises by more than one")
        else:
            caveats.append("congruence condition fails: no established lambda reaches weak interpolation")
    if value:
        X = replace(X, established=X.established + (weak,))
        sm = smoothable(SmoothingKind.SECANT_OR_TANGENT_LINE, C.h1_normal)
        chain.append(
            Step("curve plus secant is strongly smoothable", {"h1_N_C": C.h1_normal}, {"smoothable": sm.smoothable, "h1_N_X_zero": sm.h1_NX_zero})
        )
        chain.append(OPENNESS)
    return Verdict(value, tuple(weak) if value else None, tuple(chain), tuple(caveats))
