"""Partitions, dominance order and conjugation.

Partitions are stored as plain tuples with trailing zeros dropped, so that
tableaux of different lengths compare by padding with zeros.
"""
from __future__ import annotations

from itertools import accumulate, zip_longest
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers.

    Input is sorted into weakly decreasing order and zeros are dropped, so
    ``Partition([2, 3, 0])`` is ``(3, 2)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"partition parts must be nonnegative: {parts}")
        return super().__new__(cls, sorted((p for p in parts if p), reverse=True))

    def __repr__(self) -> str:
        return f"Partition({format_partition(self) or '()'})"

    def __getitem__(self, idx):
        # reading past the end gives 0, like a padded tableau
        if isinstance(idx, int) and idx >= len(self):
            return 0
        return super().__getitem__(idx)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return transpose(self)

    def prefix_sums(self) -> list[int]:
        return list(accumulate(self))

    def __add__(self, other):
        # concatenation of tableaux, as in (lambda, mu)
        return Partition(tuple(self) + tuple(other))


def dominates(lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    """True iff ``lhs`` is dominated by ``rhs``: every prefix sum of lhs is <= that of rhs."""
    left = accumulate(lhs)
    right = accumulate(rhs)
    sl = sr = 0
    for a, b in zip_longest(left, right):
        sl = sl if a is None else a
        sr = sr if b is None else b
        if sl > sr:
            return False
    return True


def transpose(p: Sequence[int]) -> Partition:
    p = Partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > i) for i in range(p[0]))


def admissible(lam: Sequence[int], rank: int, h0: int) -> bool:
    """Every part at most ``rank`` and total at most ``h0``."""
    if rank < 1:
        raise ValueError("rank must be positive")
    lam = Partition(lam)
    return all(part <= rank for part in lam) and lam.size <= h0


def partitions_in_box(max_part: int, max_len: int, max_size: int | None = None) -> Iterator[Partition]:
    """All partitions fitting in a ``max_len x max_part`` box (optionally bounded in size).

    Includes the empty partition.
    """

    def rec(prefix: tuple[int, ...], cap: int, remaining: int | None):
        yield Partition(prefix)
        if len(prefix) == max_len:
            return
        top = cap if remaining is None else min(cap, remaining)
        for part in range(top, 0, -1):
            yield from rec(prefix + (part,), part, None if remaining is None else remaining - part)

    yield from rec((), max_part, max_size)


def partitions_of(total: int) -> Iterator[Partition]:
    """All partitions of ``total``."""
    if total == 0:
        yield Partition()
        return
    for p in partitions_in_box(total, total, total):
        if p.size == total:
            yield p


def parse_int_list(text: str) -> list[int]:
    """Parse ``"4,4,3"`` or exponent shorthand ``"2^9,1"`` into a flat list."""
    text = text.strip()
    if not text or text in ("()", "-"):
        return []
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ValueError(f"empty entry in {text!r}")
        if "^" in token:
            base, _, exp = token.partition("^")
            count = int(exp)
            if count < 0:
                raise ValueError(f"negative exponent in {token!r}")
            out.extend([int(base)] * count)
        else:
            out.append(int(token))
    return out


def parse_partition(text: str) -> Partition:
    return Partition(parse_int_list(text))


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p)
