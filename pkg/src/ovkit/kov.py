"""Deterministic k-OV by density splitting, plus the Set Cover reduction.

Members of size at most ``(1 - eps_k) * d`` are *light*; their down-closures
are small, so tuples made only of light members are decided by down-closure
counting. Heavy members are few (at most ``C(d, eps_k d) * d`` distinct ones),
so for every nonempty set ``H`` of families whose solution member is heavy we
enumerate heavy tuples over ``H``, restrict the universe to their common
intersection ``r`` and recurse on the light parts of the other families.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .core import BitVector, Family, Instance, full_mask, iter_bits
from .folklore import DEFAULT_CLOSURE_BUDGET, count_masks
from .mitm import find_pair_masks
from .oracle import BudgetExceeded
from .params import epsilon_table
from .representation import ReprConfig, find_pair_repr

Base2 = Literal["mitm", "repr", "folklore"]

_EPSILON_CACHE: dict[int, float] = {}


def _epsilon(k: int) -> float:
    if k not in _EPSILON_CACHE:
        _EPSILON_CACHE.update(epsilon_table(max(k, 8)))
    return _EPSILON_CACHE[k]


@dataclass(frozen=True)
class KovConfig:
    """``epsilon`` overrides the per-k thresholds; ``epsilon_scale`` shrinks them."""

    epsilon: dict[int, float] = field(default_factory=dict)
    epsilon_scale: float = 0.99
    max_enumeration_budget: int = 1 << 22
    closure_budget: int = DEFAULT_CLOSURE_BUDGET
    base2_solver: Base2 = "mitm"
    repr_config: ReprConfig = ReprConfig()

    def __post_init__(self):
        if any(v <= 0 for v in self.epsilon.values()):
            raise ValueError("epsilon values must be positive")
        if not 0 < self.epsilon_scale <= 1:
            raise ValueError("epsilon_scale must lie in (0, 1]")
        if self.base2_solver not in ("mitm", "repr", "folklore"):
            raise ValueError(f"unknown base-2 solver {self.base2_solver!r}")

    def threshold(self, k: int) -> float:
        eps = self.epsilon.get(k)
        if eps is None:
            eps = _epsilon(k)
        return eps * self.epsilon_scale


def compress(mask: int, r_bits: Sequence[int]) -> int:
    """Re-index ``mask & r`` onto ``0..|r|-1`` preserving coordinate order."""
    out = 0
    for new, old in enumerate(r_bits):
        if mask >> old & 1:
            out |= 1 << new
    return out


def restrict_universe(family: Family, r: BitVector) -> Family:
    """Map each member ``a`` to ``a & r`` over the compacted universe of ``r``."""
    if r.dim != family.dim:
        raise ValueError(f"dimension mismatch: {r.dim} vs {family.dim}")
    r_bits = list(iter_bits(r.mask))
    return Family(len(r_bits), tuple(compress(m, r_bits) for m in family.masks))


def _solve(families: list[list[int]], d: int, config: KovConfig) -> bool:
    k = len(families)
    if any(not f for f in families):
        return False
    if k == 1:
        return 0 in families[0]
    if k == 2:
        a_masks, b_masks = families
        if config.base2_solver == "mitm":
            return find_pair_masks(a_masks, b_masks, d) is not None
        if config.base2_solver == "repr":
            return find_pair_repr(a_masks, b_masks, d, config.repr_config) is not None
        return count_masks(families, d, budget=config.closure_budget) > 0

    cutoff = (1 - config.threshold(k)) * d
    light = [[m for m in f if m.bit_count() <= cutoff] for f in families]
    heavy = [[m for m in f if m.bit_count() > cutoff] for f in families]

    if all(light) and count_masks(light, d, budget=config.closure_budget) > 0:
        return True

    for h_size in range(1, k + 1):
        for H in itertools.combinations(range(k), h_size):
            if any(not heavy[i] for i in H):
                continue
            rest = [light[i] for i in range(k) if i not in H]
            if any(not f for f in rest):
                continue
            needed = math.prod(len(heavy[i]) for i in H)
            if needed > config.max_enumeration_budget:
                raise BudgetExceeded("heavy tuple enumeration", needed,
                                     config.max_enumeration_budget)
            seen: set[int] = set()
            for tup in itertools.product(*(heavy[i] for i in H)):
                r = full_mask(d)
                for m in tup:
                    r &= m
                if r in seen:
                    continue
                seen.add(r)
                if not rest:
                    if r == 0:
                        return True
                    continue
                r_bits = list(iter_bits(r))
                sub = [list(dict.fromkeys(compress(m, r_bits) for m in f)) for f in rest]
                if _solve(sub, len(r_bits), config):
                    return True
    return False


def solve_kov(instance: Instance, config: KovConfig = KovConfig()) -> bool:
    """Exact k-OV decision; deterministic unless ``base2_solver="repr"``."""
    families = [list(dict.fromkeys(f.masks)) for f in instance.families]
    return _solve(families, instance.dim, config)


def reduce_setcover(d: int, family: Family, t: int) -> Instance:
    """t copies of the complements of the sets in ``family``."""
    if t < 1:
        raise ValueError("t must be positive")
    if family.dim != d:
        raise ValueError(f"dimension mismatch: {family.dim} vs {d}")
    universe = full_mask(d)
    complements = Family(d, tuple(universe & ~s for s in family.masks))
    return Instance(d, (complements,) * t)


def decide_setcover_via_ov(d: int, family: Family, t: int,
                           config: KovConfig = KovConfig()) -> bool:
    return solve_kov(reduce_setcover(d, family, t), config)
