"""Seeded random rational parameters for Schwartz-Zippel style identity checks."""

from __future__ import annotations

import random

from .field import GQ

__all__ = ["random_rational", "random_rationals"]


def random_rational(rng: random.Random, bound: int = 50, nonzero: bool = False) -> GQ:
    """Rational ``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
    while True:
        p = rng.randint(-bound, bound)
        if p or not nonzero:
            return GQ(p) / rng.randint(1, bound)


def random_rationals(seed: int, count: int, size: int, bound: int = 50, avoid=None) -> list[tuple[GQ, ...]]:
    """``count`` tuples of ``size`` random rationals.

    ``avoid`` is an optional predicate; tuples for which it returns true
    are redrawn (used to skip measure-zero degenerate parameter values).
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        tup = tuple(random_rational(rng, bound) for _ in range(size))
        if avoid is not None and avoid(*tup):
            continue
        out.append(tup)
    return out
