"""Deterministic random generators for terms and rational points, shared by
the self-test suites and the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from .terms import (
    Diff,
    Join,
    Meet,
    MVNeg,
    Neg,
    Plus,
    Power,
    Scalar,
    Signature,
    Term,
    Var,
    ZERO,
)

__all__ = ["random_term", "random_rational_point"]


def random_term(
    rng: random.Random,
    sig: Signature,
    n: int,
    depth: int,
    coeff: int = 6,
    kinds: tuple[str, ...] = ("x",),
    m: int = 0,
) -> Term:
    """Random well-formed term of the given signature and nesting depth."""
    if depth <= 0 or rng.random() < 0.2:
        choices = ["var"] * 3 + ["zero"]
        pick = rng.choice(choices)
        if pick == "zero" or (n == 0 and m == 0):
            return ZERO
        kind = rng.choice([k for k in kinds if (n if k == "x" else m) > 0])
        bound = n if kind == "x" else m
        return Var(kind, rng.randint(1, bound))

    def sub():
        return random_term(rng, sig, n, depth - 1, coeff, kinds, m)

    if sig is Signature.GROUP:
        op = rng.choice(["plus", "neg", "join", "meet", "scalar"])
        if op == "plus":
            return Plus(sub(), sub())
        if op == "neg":
            return Neg(sub())
        if op == "join":
            return Join(sub(), sub())
        if op == "meet":
            return Meet(sub(), sub())
        # negative multiples are spelled with an explicit negation
        t = Scalar(rng.randint(2, max(2, coeff)), sub())
        return Neg(t) if rng.random() < 0.3 else t
    if sig is Signature.HOOP:
        op = rng.choice(["plus", "diff", "scalar"])
        if op == "plus":
            return Plus(sub(), sub())
        if op == "diff":
            return Diff(sub(), sub())
        return Scalar(rng.randint(2, max(2, coeff)), sub())
    op = rng.choice(["plus", "mvneg", "join", "meet", "diff", "scalar", "power"])
    if op == "plus":
        return Plus(sub(), sub())
    if op == "mvneg":
        return MVNeg(sub())
    if op == "join":
        return Join(sub(), sub())
    if op == "meet":
        return Meet(sub(), sub())
    if op == "diff":
        return Diff(sub(), sub())
    if op == "scalar":
        return Scalar(rng.randint(2, max(2, coeff)), sub())
    return Power(rng.randint(2, max(2, coeff // 2)), sub())


def random_rational_point(
    rng: random.Random, n: int, num_cap: int = 8, den_cap: int = 4
) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-num_cap, num_cap), rng.randint(1, den_cap))
        for _ in range(n)
    )
