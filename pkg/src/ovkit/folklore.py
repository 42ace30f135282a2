"""Exact k-OV counting by signed sums over down-closures.

For every family ``A_i`` let ``f_i(x)`` be the number of members containing
``x``. Then the number of orthogonal tuples is

    sum over x of (-1)^|x| * f_1(x) * ... * f_k(x)

and only ``x`` lying in every down-closure contribute. Two backends compute
the ``f_i`` tables:

* ``sparse`` walks only the down-closure, keyed by bit pattern, and costs
  ``O(d * |down-closure|)``;
* ``dense`` fills a numpy array of length ``2**d`` and runs the same
  superset-sum recurrence vectorized. It is only used when ``2**d`` is small.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import BitVector, Family, Instance, iter_submasks
from .oracle import BudgetExceeded

DEFAULT_CLOSURE_BUDGET = 1 << 24
DENSE_MAX_DIM = 20

Backend = Literal["auto", "sparse", "dense"]


@dataclass(frozen=True)
class SupersetCountTable:
    """``table[x] = f(x)`` for every bit pattern ``x`` in the down-closure."""

    dim: int
    table: dict[int, int]

    def __getitem__(self, x: BitVector | int) -> int:
        key = x.mask if isinstance(x, BitVector) else x
        return self.table.get(key, 0)

    def __len__(self) -> int:
        return len(self.table)


def closure_bound(masks: Sequence[int]) -> int:
    """Upper bound on the down-closure size: sum of 2^|a| over distinct members."""
    return sum(1 << m.bit_count() for m in set(masks))


def _check_closure(masks: Sequence[int], budget: int) -> None:
    bound = closure_bound(masks)
    if bound > budget:
        raise BudgetExceeded("down-closure materialization", bound, budget)


def down_closure_masks(masks: Sequence[int], budget: int = DEFAULT_CLOSURE_BUDGET) -> set[int]:
    _check_closure(masks, budget)
    closure: set[int] = set()
    for m in set(masks):
        if m in closure:
            continue
        closure.update(iter_submasks(m))
    return closure


def down_closure(family: Family, budget: int = DEFAULT_CLOSURE_BUDGET) -> set[BitVector]:
    return {BitVector(x, family.dim) for x in down_closure_masks(family.masks, budget)}


def superset_table(masks: Sequence[int], dim: int,
                   budget: int = DEFAULT_CLOSURE_BUDGET) -> dict[int, int]:
    """Superset counts over the down-closure, one coordinate at a time.

    Start from the multiplicity of each pattern as an exact member. Processing
    coordinate ``j`` adds ``g(x | bit_j)`` into ``g(x)`` for every ``x`` lacking
    ``j`` whose extension is in the closure. Entries with ``j`` set are only
    read during that pass, so the update is safe in place.
    """
    closure = down_closure_masks(masks, budget)
    g = dict.fromkeys(closure, 0)
    for m, mult in Counter(masks).items():
        g[m] = mult
    keys = list(closure)
    for j in range(dim - 1, -1, -1):
        bit = 1 << j
        for x in keys:
            if not x & bit:
                up = g.get(x | bit)
                if up:
                    g[x] += up
    return g


def superset_counts(family: Family, budget: int = DEFAULT_CLOSURE_BUDGET) -> SupersetCountTable:
    return SupersetCountTable(family.dim, superset_table(family.masks, family.dim, budget))


def _count_sparse(families: Sequence[Sequence[int]], dim: int, budget: int) -> int:
    tables = [superset_table(masks, dim, budget) for masks in families]
    tables.sort(key=len)
    smallest, others = tables[0], tables[1:]
    total = 0
    for x, fx in smallest.items():
        prod = fx
        for t in others:
            v = t.get(x)
            if v is None:
                break
            prod *= v
        else:
            total += -prod if x.bit_count() & 1 else prod
    return total


def dense_superset_array(masks: Sequence[int], dim: int) -> np.ndarray:
    f = np.zeros(1 << dim, dtype=np.int64)
    np.add.at(f, np.asarray(masks, dtype=np.int64), 1)
    for j in range(dim):
        view = f.reshape(-1, 2, 1 << j)
        view[:, 0, :] += view[:, 1, :]
    return f


def _popcount_parity(dim: int) -> np.ndarray:
    parity = np.zeros(1 << dim, dtype=np.int8)
    for j in range(dim):
        view = parity.reshape(-1, 2, 1 << j)
        view[:, 1, :] ^= 1
    return parity


def _count_dense(families: Sequence[Sequence[int]], dim: int) -> int:
    arrays = [dense_superset_array(masks, dim) for masks in families]
    sign = 1 - 2 * _popcount_parity(dim).astype(np.int64)
    if len(arrays) == 1:
        return int((sign * arrays[0]).sum())
    # products of k counts fit in int64 when the full product of sizes does
    prod = arrays[0] * sign
    for arr in arrays[1:]:
        prod *= arr
    return int(prod.sum())


def _dense_fits(families: Sequence[Sequence[int]], dim: int) -> bool:
    size_product = 1
    for masks in families:
        size_product *= max(len(masks), 1)
    # each term and their sum stay below 2^62
    return dim <= DENSE_MAX_DIM and size_product < (1 << 62) >> dim


def count_masks(families: Sequence[Sequence[int]], dim: int, backend: Backend = "auto",
                budget: int = DEFAULT_CLOSURE_BUDGET) -> int:
    if not families:
        raise ValueError("need at least one family")
    if any(len(masks) == 0 for masks in families):
        return 0
    if backend == "auto":
        backend = "dense" if _dense_fits(families, dim) and \
            max(closure_bound(m) for m in families) > (1 << dim) // 4 else "sparse"
    if backend == "dense":
        if not _dense_fits(families, dim):
            raise ValueError(f"dense backend unavailable for d={dim} with these family sizes")
        return _count_dense(families, dim)
    if backend == "sparse":
        return _count_sparse(families, dim, budget)
    raise ValueError(f"unknown backend {backend!r}")


def count_kov_folklore(instance: Instance, backend: Backend = "auto",
                       budget: int = DEFAULT_CLOSURE_BUDGET) -> int:
    """Exact number of orthogonal tuples (duplicates counted by position)."""
    return count_masks([f.masks for f in instance.families], instance.dim, backend, budget)


def decide_kov_folklore(instance: Instance, backend: Backend = "auto",
                        budget: int = DEFAULT_CLOSURE_BUDGET) -> bool:
    return count_kov_folklore(instance, backend, budget) > 0
