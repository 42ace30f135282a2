"""Exhaustive reference solvers. Kept deliberately naive."""
from __future__ import annotations

import itertools
import math

from .core import BitVector, Family, Instance, full_mask

DEFAULT_TUPLE_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration or materialization would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
        self.needed = needed
        self.budget = budget


def _check_budget(instance: Instance, budget: int) -> None:
    total = math.prod(instance.sizes)
    if total > budget:
        raise BudgetExceeded("brute-force tuple enumeration", total, budget)


def _walk(families: list[tuple[int, ...]], i: int, acc: int) -> int:
    """Number of ways to extend the running intersection ``acc`` to empty."""
    if i == len(families) - 1:
        return sum(1 for a in families[i] if a & acc == 0)
    return sum(_walk(families, i + 1, acc & a) for a in families[i])


def _exists(families: list[tuple[int, ...]], i: int, acc: int) -> bool:
    if i == len(families) - 1:
        return any(a & acc == 0 for a in families[i])
    return any(_exists(families, i + 1, acc & a) for a in families[i])


def decide_brute(instance: Instance, budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    """True iff some tuple in A_1 x ... x A_k has empty common intersection."""
    _check_budget(instance, budget)
    return _exists([f.masks for f in instance.families], 0, full_mask(instance.dim))


def count_brute(instance: Instance, budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """Exact number of orthogonal tuples, counting duplicate members separately."""
    _check_budget(instance, budget)
    return _walk([f.masks for f in instance.families], 0, full_mask(instance.dim))


def find_brute(instance: Instance, budget: int = DEFAULT_TUPLE_BUDGET) -> tuple[BitVector, ...] | None:
    """First orthogonal tuple in lexicographic order of member positions."""
    _check_budget(instance, budget)
    for combo in itertools.product(*(f.masks for f in instance.families)):
        acc = full_mask(instance.dim)
        for m in combo:
            acc &= m
        if acc == 0:
            return tuple(BitVector(m, instance.dim) for m in combo)
    return None


def decide_setcover_brute(d: int, family: Family, t: int) -> bool:
    """True iff some t sets of ``family`` (repetition allowed) cover ``{1..d}``."""
    if t < 1:
        raise ValueError("t must be positive")
    universe = full_mask(d)
    sets = sorted(set(family.masks))
    for combo in itertools.combinations_with_replacement(sets, t):
        union = 0
        for s in combo:
            union |= s
        if union == universe:
            return True
    return False
