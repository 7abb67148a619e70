"""Brute-force interpolation checks by exact linear algebra.

Sections of ``O(a_1) + ... + O(a_n)`` are realised on the affine chart as
vectors of polynomials, component ``j`` of degree at most ``a_j``.  A
modification datum imposes ``Q_i . sigma(t_i) = 0`` at each point, so the
sections of the modified bundle are the kernel of a stacked evaluation
matrix.
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .fields import QQ, Field, PrimeField, make_field, matmul, nullspace
from .p1bundles import SplittingType, h0, nonspecial
from .tableaux import Partition, admissible
from .verdict import SCHEMA

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 10007


class Section(NamedTuple):
    """The section ``t**power`` placed in summand ``component``."""

    component: int
    power: int


class HypothesisError(ValueError):
    """Raised when the rank hypotheses of the subspace construction fail."""


class RetryExhausted(RuntimeError):
    pass


def section_basis(E: Sequence[int]) -> list[Section]:
    return [Section(j, e) for j, a in enumerate(SplittingType(E)) for e in range(a + 1)]


def evaluation_matrix(E: Sequence[int], t, field: Field = QQ) -> list[list]:
    """``rank(E) x h0(E)`` matrix of the basis sections evaluated at ``t``."""
    E = SplittingType(E)
    basis = section_basis(E)
    t = field(t)
    powers = _powers(t, max(E) if max(E) >= 0 else 0, field)
    rows = [[field.zero] * len(basis) for _ in range(E.rank)]
    for col, (j, e) in enumerate(basis):
        rows[j][col] = powers[e]
    return rows


def _powers(t, top: int, field: Field) -> list:
    out = [field.one]
    for _ in range(top):
        nxt = out[-1] * t
        out.append(nxt % field.p if isinstance(field, PrimeField) else nxt)
    return out


@dataclass(frozen=True)
class ModificationDatum:
    """Distinct affine points ``t_i`` with quotient matrices ``Q_i`` (``lambda_i x n``, full row rank).

    The subspace ``V_i`` of the fibre at ``t_i`` is ``ker Q_i``.
    """

    points: tuple
    quotients: tuple
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.field(t) for t in self.points))
        object.__setattr__(
            self, "quotients", tuple(tuple(tuple(self.field(x) for x in row) for row in Q) for Q in self.quotients)
        )
        if len(self.points) != len(self.quotients):
            raise ValueError("need one quotient matrix per point")
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"modification points must be distinct: {self.points}")
        for Q in self.quotients:
            if Q and self.field.rank([list(r) for r in Q]) != len(Q):
                raise ValueError("quotient matrices must have full row rank")

    @property
    def lam(self) -> tuple[int, ...]:
        return tuple(len(Q) for Q in self.quotients)

    def check_rank(self, n: int) -> None:
        for Q in self.quotients:
            if any(len(row) != n for row in Q):
                raise ValueError(f"quotient matrices must have {n} columns")

    def constraint_matrix(self, E: Sequence[int]) -> list[list]:
        E = SplittingType(E)
        self.check_rank(E.rank)
        rows: list[list] = []
        for t, Q in zip(self.points, self.quotients):
            if Q:
                rows.extend(matmul([list(r) for r in Q], evaluation_matrix(E, t, self.field), self.field))
        return rows

    def to_dict(self) -> dict:
        f = self.field
        return {
            "points": [f.to_json(t) for t in self.points],
            "quotients": [[[f.to_json(x) for x in row] for row in Q] for Q in self.quotients],
            "prime": f.p if isinstance(f, PrimeField) else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModificationDatum":
        f = make_field(data.get("prime"))
        return cls(
            tuple(f.from_json(t) for t in data["points"]),
            tuple(tuple(tuple(f.from_json(x) for x in row) for row in Q) for Q in data["quotients"]),
            f,
        )


def h0_modified(E: Sequence[int], d: ModificationDatum) -> int:
    """Dimension of the sections of ``E`` whose value at each ``t_i`` lies in ``ker Q_i``."""
    E = SplittingType(E)
    A = d.constraint_matrix(E)
    return h0(E) - (d.field.rank(A) if A and h0(E) else 0)


def _trial_rng(seed: int, trial: int) -> random.Random:
    state = np.random.SeedSequence([seed & (2**64 - 1), trial]).generate_state(2, dtype=np.uint64)
    return random.Random(int(state[0]) << 64 | int(state[1]))


def random_points(m: int, field: Field, rng: random.Random) -> list:
    pts: list = []
    while len(pts) < m:
        t = field.random_element(rng)
        if t not in pts:
            pts.append(t)
    return pts


def random_full_rank(rows: int, cols: int, field: Field, rng: random.Random, max_tries: int = 1000) -> tuple[list[list], int]:
    """Uniform random ``rows x cols`` matrix, resampled until full row rank; returns (matrix, resamples)."""
    if rows > cols:
        raise ValueError("cannot have full row rank with more rows than columns")
    for attempt in range(max_tries):
        Q = [[field.random_element(rng) for _ in range(cols)] for _ in range(rows)]
        if not rows or field.rank(Q) == rows:
            return Q, attempt
    raise RetryExhausted(f"no full-rank {rows}x{cols} matrix in {max_tries} tries")


def random_datum(E: Sequence[int], lam: Sequence[int], field: Field, rng: random.Random) -> tuple[ModificationDatum, int]:
    E = SplittingType(E)
    lam = [x for x in lam if x]
    pts = random_points(len(lam), field, rng)
    quotients = []
    resamples = 0
    for part in lam:
        Q, k = random_full_rank(part, E.rank, field, rng)
        quotients.append(Q)
        resamples += k
    return ModificationDatum(tuple(pts), tuple(quotients), field), resamples


@dataclass(frozen=True)
class OracleResult:
    value: bool
    bundle: SplittingType
    lam: Partition
    witness: ModificationDatum | None
    last_datum: ModificationDatum | None
    h0_drop: int
    trials_run: int
    seed: int
    field: Field
    witness_trial: int | None = None
    resamples: int = 0
    caveats: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.value

    def witness_json(self) -> dict | None:
        if self.witness is None:
            return None
        data = self.witness.to_dict()
        data.update(h0_drop=self.h0_drop, seed=self.seed, trial=self.witness_trial, schema=SCHEMA)
        return data

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "value": self.value,
            "bundle": list(self.bundle),
            "lambda": list(self.lam),
            "field": self.field.name,
            "seed": self.seed,
            "trials_run": self.trials_run,
            "best_h0_drop": self.h0_drop,
            "witness": self.witness_json(),
            "caveats": list(self.caveats),
        }


def decide_interpolation_oracle(
    E: Sequence[int],
    lam: Sequence[int],
    trials: int = 8,
    rng_seed: int = 0,
    field: Field | None = None,
) -> OracleResult:
    """Search random modification data for one achieving the full drop ``sum(lam)``.

    A ``True`` answer carries a replayable witness.  ``False`` is one-sided:
    no trial reached the full drop.
    """
    E = SplittingType(E)
    lam = Partition(lam)
    field = PrimeField(DEFAULT_PRIME) if field is None else field
    if trials < 1:
        raise ValueError("trials must be positive")
    if not admissible(lam, E.rank, h0(E)):
        raise ValueError(f"{lam!r} is not admissible for {E!r}")
    if not nonspecial(E):
        return OracleResult(False, E, lam, None, None, 0, 0, rng_seed, field, caveats=("bundle is special (h1 > 0)",))
    target = lam.size
    best = -1
    last = None
    resamples = 0
    for trial in range(trials):
        rng = _trial_rng(rng_seed, trial)
        datum, k = random_datum(E, lam, field, rng)
        resamples += k
        drop = h0(E) - h0_modified(E, datum)
        best = max(best, drop)
        last = datum
        if drop == target:
            if resamples:
                logger.debug("resampled %d quotient matrices", resamples)
            return OracleResult(True, E, lam, datum, datum, drop, trial + 1, rng_seed, field, trial, resamples)
    caveat = f"no witness in {trials} random trials (best drop {best} < {target}); negative answer is probabilistic"
    return OracleResult(False, E, lam, None, last, best, trials, rng_seed, field, None, resamples, (caveat,))


def replay_witness(E: Sequence[int], data: dict) -> int:
    """Recompute the h0 drop recorded in a witness dictionary."""
    datum = ModificationDatum.from_dict(data)
    return h0(E) - h0_modified(E, datum)


def criterion_check(E: Sequence[int], lam: Sequence[int], points: Sequence, field: Field = QQ) -> bool:
    """Prefix rank test: evaluation at the first ``i`` points has rank >= lam_1 + ... + lam_i."""
    E = SplittingType(E)
    lam = list(lam)
    pts = [field(t) for t in points]
    if len(set(pts)) != len(pts):
        raise ValueError("criterion points must be distinct")
    if len(pts) != len(lam):
        raise ValueError("need exactly one point per part of lambda")
    stacked: list[list] = []
    need = 0
    for t, part in zip(pts, lam):
        stacked.extend(evaluation_matrix(E, t, field))
        need += part
        have = field.rank(stacked) if h0(E) else 0
        if have < need:
            return False
    return True


def _project(rows: Sequence[Sequence], dims: Sequence[int], blocks: Sequence[int]) -> list[list]:
    offsets = np.cumsum([0, *dims])
    idx = [c for b in blocks for c in range(offsets[b], offsets[b + 1])]
    return [[row[c] for c in idx] for row in rows]


def lambda_subspaces(
    Lambda: Sequence[Sequence],
    dims: Sequence[int],
    lam: Sequence[int],
    rng_seed: int = 0,
    field: Field | None = None,
    retries: int = 20,
) -> list[list[list]]:
    """Choose independent subspaces ``Lambda_i`` of ``Lambda`` with ``dim = lam_i``, each injecting into ``E_i``.

    ``Lambda`` is given by spanning rows in coordinates of ``E_1 + ... + E_m``.
    Each ``Lambda_i`` is picked at random inside ``Lambda`` and accepted when
    it projects injectively to ``E_i`` and keeps the projections to
    ``E_1 + ... + E_i`` independent; a failed stage restarts the attempt.
    """
    field = PrimeField(DEFAULT_PRIME) if field is None else field
    dims = list(dims)
    lam = list(lam)
    if len(dims) != len(lam):
        raise ValueError("need one lambda entry per factor")
    if any(len(row) != sum(dims) for row in Lambda):
        raise ValueError("rows of Lambda must have sum(dims) coordinates")
    check_lambda_hypotheses(Lambda, dims, lam, field)
    basis = _row_basis(Lambda, field)
    k = len(basis)
    for attempt in range(retries):
        rng = _trial_rng(rng_seed, attempt)
        chosen: list[list[list]] = []
        for i, part in enumerate(lam):
            coeffs = [[field.random_element(rng) for _ in range(k)] for _ in range(part)]
            sub = matmul(coeffs, basis, field) if part else []
            if part and field.rank(_project(sub, dims, [i])) != part:
                break
            prefix = [row for s in chosen + [sub] for row in s]
            total = sum(lam[: i + 1])
            if prefix and field.rank(_project(prefix, dims, range(i + 1))) != total:
                break
            chosen.append(sub)
        else:
            if attempt:
                logger.debug("lambda_subspaces succeeded after %d retries", attempt)
            return chosen
    raise RetryExhausted(f"lambda_subspaces failed after {retries} attempts")


def check_lambda_hypotheses(Lambda, dims, lam, field: Field) -> None:
    total = 0
    for i, part in enumerate(lam):
        total += part
        if field.rank(_project(Lambda, dims, range(i + 1))) < total:
            raise HypothesisError(f"prefix rank hypothesis fails at i={i + 1}")
        if field.rank(_project(Lambda, dims, [i])) < part:
            raise HypothesisError(f"projection rank hypothesis fails at i={i + 1}")


def verify_lambda_subspaces(Lambda, dims, lam, subspaces, field: Field) -> bool:
    """Check dimensions, injectivity into each factor, joint independence, and containment in Lambda."""
    if len(subspaces) != len(lam):
        return False
    for i, (sub, part) in enumerate(zip(subspaces, lam)):
        if len(sub) != part:
            return False
        if part and field.rank(_project(sub, dims, [i])) != part:
            return False
    allrows = [row for sub in subspaces for row in sub]
    if allrows and field.rank(allrows) != sum(lam):
        return False
    base = field.rank(Lambda) if Lambda else 0
    return not allrows or field.rank([*map(list, Lambda), *allrows]) == base


def _row_basis(rows, field: Field) -> list[list]:
    basis: list[list] = []
    for row in rows:
        if field.rank(basis + [list(row)]) > len(basis):
            basis.append([field(x) for x in row])
    return basis


def infer_splitting(E: Sequence[int], d: ModificationDatum, max_steps: int = 10_000) -> SplittingType:
    """Recover the splitting type of the modification from h0 of its twists.

    Twisting by ``O(m)`` at infinity turns the problem into the same kernel
    computation for ``E(m)``.  Starting from a twist where every degree is
    negative, the jump ``h0(m) - h0(m-1)`` counts the summands of degree
    ``>= -m``; its increments are the multiplicities.
    """
    E = SplittingType(E)
    m = -max(E) - 1
    prev_f = 0  # E(m) has no sections, hence neither does the modification
    prev_count = 0
    degrees: list[int] = []
    for _ in range(max_steps):
        m += 1
        f = h0_modified(E.twist(m), d)
        count = f - prev_f
        degrees.extend([-m] * (count - prev_count))
        if count == E.rank:
            break
        prev_f, prev_count = f, count
    else:
        raise RuntimeError("twist ladder did not stabilise")
    result = SplittingType(degrees)
    expected = E.degree - sum(d.lam)
    if result.degree != expected:
        raise ArithmeticError(f"recovered degree {result.degree} != {expected}")
    return result
