"""Exact scalar fields and the linear algebra the oracle needs.

Two fields are supported: the rationals (``Fraction``) and a prime field
``GF(p)`` with elements stored as ints in ``[0, p)``.  No floating point is
used anywhere.  Matrices are lists of rows.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

Matrix = list[list]

# entries of int64 arrays stay below 2**63 through one multiply-subtract step
_NUMPY_PRIME_LIMIT = 3_037_000_499


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    name = "QQ"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "RationalField()"

    zero = Fraction(0)
    one = Fraction(1)

    def div(self, a, b) -> Fraction:
        return Fraction(a) / Fraction(b)

    def random_element(self, rng: random.Random, bound: int = 10**6) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def rank(self, rows: Sequence[Sequence]) -> int:
        return bareiss_rank(_clear_denominators(rows))

    def to_json(self, x) -> str | int:
        x = Fraction(x)
        return int(x) if x.denominator == 1 else str(x)

    def from_json(self, value) -> Fraction:
        return Fraction(value)


class PrimeField:
    """Integers modulo a prime ``p``."""

    def __init__(self, p: int):
        p = int(p)
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def div(self, a, b) -> int:
        return a * pow(b, -1, self.p) % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def rank(self, rows: Sequence[Sequence]) -> int:
        if not rows or not len(rows[0]):
            return 0
        if self.p < _NUMPY_PRIME_LIMIT:
            return _rank_mod_p_numpy(np.array(rows, dtype=np.int64) % self.p, self.p)
        return len(rref(rows, self)[1])

    def to_json(self, x) -> int:
        return int(x)

    def from_json(self, value) -> int:
        return int(value) % self.p


Field = RationalField | PrimeField

QQ = RationalField()


def make_field(prime: int | None) -> Field:
    """``None`` selects the rationals, anything else a prime field."""
    return QQ if prime is None else PrimeField(prime)


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        rows = np.nonzero(below)[0]
        if rows.size:
            idx = rows + r + 1
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % p
        r += 1
    return r


def _clear_denominators(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        out.append([int(x * lcm) for x in fr])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(r + 1, m):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (pv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        r += 1
    return r


def rref(rows: Sequence[Sequence], field: Field) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over ``field``; returns (matrix, pivot columns)."""
    a = [[field(x) for x in row] for row in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.div(field.one, a[r][c])
        a[r] = [_norm(field, x * inv) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [_norm(field, x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _norm(field: Field, x):
    return x % field.p if isinstance(field, PrimeField) else x


def nullspace(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = _norm(field, -red[r][f])
        basis.append(v)
    return basis


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field) -> Matrix:
    cols = list(zip(*b))
    return [[_norm(field, sum(x * y for x, y in zip(row, col))) for col in cols] for row in a]


def columns(rows: Sequence[Sequence], idx: Sequence[int]) -> Matrix:
    return [[row[i] for i in idx] for row in rows]
