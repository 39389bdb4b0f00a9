"""Exact linear algebra over the rationals: homogeneous inequality systems,
full-dimensionality of solution cones, deterministic solution sampling.

All arithmetic uses fractions.Fraction; no floating point anywhere.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "LinearForm",
    "IneqSystem",
    "RationalVector",
    "FullDimResult",
    "DimensionMismatch",
    "normalize_row",
    "feasible_point",
    "is_full_dimensional",
    "sample_solutions",
    "gcd_all",
    "rank_of",
    "DEFAULT_SEED",
]

LinearForm = tuple[int, ...]
RationalVector = tuple[Fraction, ...]

DEFAULT_SEED = 20260823


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IneqSystem:
    """Conjunction of rows read as row . x >= 0; the empty system is Q^n."""

    n: int
    rows: tuple[LinearForm, ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.n:
                raise DimensionMismatch(f"row {row} has length {len(row)}, expected {self.n}")

    def contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.n:
            raise DimensionMismatch(f"point has length {len(point)}, expected {self.n}")
        return all(_dot(row, point) >= 0 for row in self.rows)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(obj: dict) -> "IneqSystem":
        return IneqSystem(obj["n"], tuple(tuple(int(c) for c in r) for r in obj["rows"]))


@dataclass(frozen=True)
class FullDimResult:
    full_dimensional: bool
    basis: tuple[RationalVector, ...] | None  # n independent solutions when true
    certificate: LinearForm | None  # nonzero form vanishing on the cone when false


def _dot(row: Sequence, point: Sequence) -> Fraction:
    return sum((c * p for c, p in zip(row, point)), Fraction(0))


def normalize_row(row: Sequence[int]) -> LinearForm:
    g = math.gcd(*(abs(c) for c in row)) if any(row) else 0
    return tuple(c // g for c in row) if g > 1 else tuple(row)


def gcd_all(values: Sequence[int]) -> int:
    if not values or not any(values):
        raise ValueError("gcd_all requires at least one nonzero value")
    return math.gcd(*(abs(v) for v in values))


def rank_of(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by Gaussian elimination."""
    rows = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / prow[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Exact feasibility: phase-1 simplex with Bland's rule


def feasible_point(
    rows: Sequence[Sequence[int]], rhs: Sequence[int], n: int
) -> list[Fraction] | None:
    """Find x in Q^n with row . x >= b for every (row, b) pair, or None.

    Free variables are split x = u - v; each inequality gets a slack; phase-1
    artificials are driven to zero with Bland's rule (guaranteed termination).
    """
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * n
    # columns: u_1..u_n, v_1..v_n, s_1..s_m, a_1..a_m
    num_cols = 2 * n + 2 * m
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        # row.(u - v) - s_i = b, flipped to keep the right-hand side >= 0
        coeffs = [Fraction(0)] * (num_cols + 1)
        sign = 1 if b >= 0 else -1
        for j, c in enumerate(row):
            coeffs[j] = Fraction(sign * c)
            coeffs[n + j] = Fraction(-sign * c)
        coeffs[2 * n + i] = Fraction(-sign)
        coeffs[2 * n + m + i] = Fraction(1)
        coeffs[num_cols] = Fraction(abs(b))
        tableau.append(coeffs)
        basis.append(2 * n + m + i)
    # phase-1 objective: minimize the sum of artificials
    cost = [Fraction(0)] * (num_cols + 1)
    for trow in tableau:
        cost = [c - t for c, t in zip(cost, trow)]
    for j in range(2 * n + m, num_cols):
        cost[j] = Fraction(0)

    while True:
        entering = next(
            (j for j in range(num_cols) if cost[j] < 0 and j not in basis), None
        )
        if entering is None:
            break
        # ratio test, Bland tie-break on the leaving basic variable
        leaving = None
        best = None
        for i, trow in enumerate(tableau):
            if trow[entering] > 0:
                ratio = trow[num_cols] / trow[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            # unbounded in phase 1 cannot happen (objective bounded below by 0)
            raise RuntimeError("phase-1 simplex unbounded")
        _pivot(tableau, cost, leaving, entering, num_cols)
        basis[leaving] = entering

    total = sum(
        tableau[i][num_cols] for i in range(m) if basis[i] >= 2 * n + m
    )
    if total != 0:
        return None
    point = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            point[b] += tableau[i][num_cols]
        elif b < 2 * n:
            point[b - n] -= tableau[i][num_cols]
    return point


def _pivot(tableau, cost, leaving, entering, num_cols):
    prow = tableau[leaving]
    pval = prow[entering]
    tableau[leaving] = [c / pval for c in prow]
    prow = tableau[leaving]
    for i, trow in enumerate(tableau):
        if i != leaving and trow[entering] != 0:
            f = trow[entering]
            tableau[i] = [a - f * b for a, b in zip(trow, prow)]
    if cost[entering] != 0:
        f = cost[entering]
        cost[:] = [a - f * b for a, b in zip(cost, prow)]


# ---------------------------------------------------------------------------
# Full-dimensionality


def is_full_dimensional(s: IneqSystem) -> FullDimResult:
    """Decide whether the cone {x : rows.x >= 0} spans Q^n.

    A row is an implicit equality iff {rows.x >= 0, row_i.x >= 1} is
    infeasible (scale-invariance makes the >= 1 normalization sound); the
    cone is full-dimensional iff no implicit equality exists.  The rows can
    all be made strict jointly iff each can individually (sum the individual
    witnesses), so one feasibility probe with every row at >= 1 decides it.
    """
    nonzero = [row for row in s.rows if any(row)]
    if not nonzero:
        basis = tuple(_unit(s.n, j) for j in range(s.n))
        return FullDimResult(True, basis, None)
    point = feasible_point(nonzero, [1] * len(nonzero), s.n)
    if point is not None:
        return FullDimResult(True, _basis_around(point, nonzero, s.n), None)
    # locate an implicit-equality row for the certificate
    for i, row in enumerate(nonzero):
        rhs = [0] * len(nonzero)
        rhs[i] = 1
        if feasible_point(nonzero, rhs, s.n) is None:
            return FullDimResult(False, None, normalize_row(row))
    raise RuntimeError("joint probe infeasible but no implicit-equality row found")


def _unit(n: int, j: int) -> RationalVector:
    return tuple(Fraction(1 if i == j else 0) for i in range(n))


def _basis_around(point: list[Fraction], rows, n: int) -> tuple[RationalVector, ...]:
    """n independent solutions near an interior point with rows.point >= 1."""
    slack = max(sum(abs(c) for c in row) for row in rows)
    scale = Fraction(slack + 1)
    while True:
        candidates = [tuple(point)] + [
            tuple(scale * p + (1 if i == j else 0) for i, p in enumerate(point))
            for j in range(n)
        ]
        basis: list[RationalVector] = []
        for cand in candidates:
            if rank_of(basis + [list(cand)]) > len(basis):
                basis.append(cand)
            if len(basis) == n:
                return tuple(basis)
        scale += 1  # at most one scale makes the perturbed family degenerate


# ---------------------------------------------------------------------------
# Deterministic sampling


def sample_solutions(
    s: IneqSystem, budget: int, seed: int = DEFAULT_SEED
) -> list[RationalVector]:
    """Up to budget distinct exact solutions of s.

    Enumerates integer points of boxes with radius 1, 2, 4, ... in an order
    shuffled by the given seed, keeping points that satisfy the system.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = random.Random(seed)
    found: list[RationalVector] = []
    seen: set[RationalVector] = set()
    radius = 1
    while len(found) < budget and radius <= 64:
        points = [
            tuple(map(Fraction, p))
            for p in itertools.product(range(-radius, radius + 1), repeat=s.n)
        ]
        rng.shuffle(points)
        for p in points:
            if p not in seen and s.contains(p):
                seen.add(p)
                found.append(p)
                if len(found) == budget:
                    break
        radius *= 2
    return found
