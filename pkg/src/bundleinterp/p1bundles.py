"""Vector bundles on P^1 given by their splitting type.

A bundle ``O(a_1) + ... + O(a_n)`` is stored as the weakly decreasing tuple
of twisting degrees.  Everything here is closed-form combinatorics on that
tuple; the ``oracle`` module checks the same answers by linear algebra.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .tableaux import (
    Partition,
    admissible,
    dominates,
    format_partition,
    parse_int_list,
    partitions_in_box,
    transpose,
)
from .verdict import Step, Verdict

STRONG_ENUMERATION_CAP = 50_000


class SplittingType(tuple):
    """Twisting degrees ``a_1 >= ... >= a_n`` of a bundle on P^1 (sorted on construction)."""

    __slots__ = ()

    def __new__(cls, degrees: Iterable[int]) -> "SplittingType":
        degrees = sorted((int(a) for a in degrees), reverse=True)
        if not degrees:
            raise ValueError("a splitting type needs rank >= 1")
        return super().__new__(cls, degrees)

    def __repr__(self) -> str:
        return f"SplittingType({format_partition(self)})"

    @classmethod
    def parse(cls, text: str) -> "SplittingType":
        return cls(parse_int_list(text))

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def twist(self, m: int) -> "SplittingType":
        return SplittingType(a + m for a in self)

    def to_json(self) -> str:
        return json.dumps({"degrees": list(self)})

    def __str__(self) -> str:
        return format_partition(self)


def h0(E: Sequence[int]) -> int:
    return sum(max(a + 1, 0) for a in E)


def h1(E: Sequence[int]) -> int:
    return sum(max(-a - 1, 0) for a in E)


def degree(E: Sequence[int]) -> int:
    return sum(E)


def slope(E: Sequence[int]) -> Fraction:
    return Fraction(sum(E), len(E))


def nonspecial(E: Sequence[int]) -> bool:
    return min(E) >= -1


def slope_semistable(E: Sequence[int]) -> bool:
    return len(set(E)) == 1


def slope_stable(E: Sequence[int]) -> bool:
    # every bundle of rank >= 2 on P^1 splits, so has a destabilising summand
    return len(E) == 1


def section_semistable(E: Sequence[int]) -> bool:
    return max(E) <= -1 or (slope_semistable(E) and min(E) >= -1)


def section_threshold(E: Sequence[int]) -> Partition:
    """The tableau ``(a + 1)^T``; lambda-interpolation holds iff lambda is dominated by it."""
    return transpose(max(a + 1, 0) for a in E)


def decide_interpolation(E: Sequence[int], lam: Sequence[int]) -> bool:
    return explain_interpolation(E, lam).value


def explain_interpolation(E: Sequence[int], lam: Sequence[int]) -> Verdict:
    E = SplittingType(E)
    lam = Partition(lam)
    if not admissible(lam, E.rank, h0(E)):
        raise ValueError(f"{lam!r} is not admissible for rank {E.rank}, h0 {h0(E)}")
    if not nonspecial(E):
        step = Step("nonspecial", {"bundle": list(E)}, {"h1": h1(E)})
        return Verdict(False, None, (step,), ("bundle is special (h1 > 0); interpolation requires h1 = 0",))
    b = section_threshold(E)
    ok = dominates(lam, b)
    step = Step(
        "P1 dominance criterion",
        {"bundle": list(E), "lambda": list(lam)},
        {"threshold": list(b), "lambda_prefix": lam.prefix_sums(), "threshold_prefix": b.prefix_sums(), "dominated": ok},
    )
    return Verdict(ok, tuple(lam) if ok else None, (step,))


def quotient_remainder(E: Sequence[int]) -> tuple[int, int]:
    """``h0 = q * rank + r`` with ``0 <= r < rank``."""
    return divmod(h0(E), len(E))


@dataclass(frozen=True)
class InterpolationKind:
    """Which lambda shape to test: weak, weak with tail, regular, strong or custom."""

    name: str
    partition: Partition | None = None

    @classmethod
    def weak_with_tail(cls, tail: Sequence[int]) -> "InterpolationKind":
        return cls("weak_with_tail", Partition(tail))

    @classmethod
    def custom(cls, lam: Sequence[int]) -> "InterpolationKind":
        return cls("custom", Partition(lam))

    @classmethod
    def parse(cls, text: str) -> "InterpolationKind":
        """``weak``, ``regular``, ``strong``, ``tail:2,2`` or ``custom:3,1``."""
        key, _, rest = text.partition(":")
        key = key.strip().lower()
        if key in ("weak", "regular", "strong") and not rest:
            return cls(key.upper())
        if key in ("tail", "weak_with_tail"):
            return cls.weak_with_tail(parse_int_list(rest))
        if key == "custom":
            return cls.custom(parse_int_list(rest))
        raise ValueError(f"unknown interpolation kind {text!r}")


InterpolationKind.WEAK = InterpolationKind("WEAK")
InterpolationKind.REGULAR = InterpolationKind("REGULAR")
InterpolationKind.STRONG = InterpolationKind("STRONG")


def standard_lambda(E: Sequence[int], kind: InterpolationKind, cap: int = STRONG_ENUMERATION_CAP) -> list[Partition]:
    E = SplittingType(E)
    if not nonspecial(E):
        raise ValueError("standard lambdas are defined for nonspecial bundles only")
    n = E.rank
    q, r = quotient_remainder(E)
    if kind.name == "WEAK":
        return [Partition([n] * q)]
    if kind.name == "weak_with_tail":
        return [Partition([n] * q + list(kind.partition))]
    if kind.name == "REGULAR":
        return [Partition([n] * q + [r])]
    if kind.name == "custom":
        return [kind.partition]
    if kind.name == "STRONG":
        out = []
        for lam in partitions_in_box(n, h0(E), h0(E)):
            out.append(lam)
            if len(out) > cap:
                raise ValueError(f"strong interpolation enumeration exceeds cap {cap}")
        return out
    raise ValueError(f"unknown interpolation kind {kind.name!r}")


class Classification(NamedTuple):
    weak: bool
    regular: bool
    strong: bool


def classify(E: Sequence[int]) -> Classification:
    E = SplittingType(E)
    if not nonspecial(E):
        return Classification(False, False, False)
    q, r = quotient_remainder(E)
    weak = all(a + 1 >= q for a in E)
    counts = Counter(E)
    regular = set(E) <= {q, q - 1} and counts[q] == r
    # strong is equivalent to regular for every rank
    return Classification(weak, regular, regular)


def general_modification(E: Sequence[int], lambda1: int) -> SplittingType:
    """Splitting type of a general ``(lambda1)``-modification: drop one box from each of the top rows."""
    E = SplittingType(E)
    if not 0 <= lambda1 <= E.rank:
        raise ValueError(f"lambda1={lambda1} outside [0, {E.rank}]")
    return SplittingType([a - 1 for a in E[:lambda1]] + list(E[lambda1:]))


def general_modification_seq(E: Sequence[int], lam: Sequence[int]) -> SplittingType:
    E = SplittingType(E)
    for part in lam:
        E = general_modification(E, part)
    return E


def is_submultiset(F: Sequence[int], E: Sequence[int]) -> bool:
    return not (Counter(F) - Counter(E))


def interpolation_inequality_holds(F: Sequence[int], E: Sequence[int], mode: str = "weak") -> bool:
    """Check the section-count bound for a direct-summand subbundle ``F`` of ``E``.

    ``mode`` is ``"weak"`` or ``"regular"``; arithmetic is exact.
    """
    F = SplittingType(F)
    E = SplittingType(E)
    if not is_submultiset(F, E):
        raise ValueError(f"{F!r} is not a summand of {E!r}")
    _, r = quotient_remainder(E)
    lhs = Fraction(h0(F), F.rank)
    base = Fraction(h0(E), E.rank)
    if mode == "weak":
        rhs = base + r * (Fraction(1, F.rank) - Fraction(1, E.rank))
    elif mode == "regular":
        rhs = base + min(Fraction(1), Fraction(r, F.rank)) - Fraction(r, E.rank)
    else:
        raise ValueError(f"mode must be 'weak' or 'regular', not {mode!r}")
    return 0 <= lhs <= rhs


def bundles_in_range(rank: int, lo: int, hi: int) -> Iterable[SplittingType]:
    """All splitting types of the given rank with degrees in ``[lo, hi]``."""
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(range(hi, lo - 1, -1), rank):
        yield SplittingType(combo)
