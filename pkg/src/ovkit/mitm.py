"""Deterministic 2-OV in O~(2^(d/2) * n) by splitting coordinates into halves.

Every ``a`` is expanded into the keys ``a_low | x_high`` for all ``x_high``
disjoint from ``a_high``; every ``b`` into ``x_low | b_high`` for all
``x_low`` disjoint from ``b_low``. A key shared by both sides pins down
``a_low`` and ``b_high`` and certifies ``a`` and ``b`` disjoint on both halves.
"""
from __future__ import annotations

from typing import Sequence

from .core import BitVector, Family, full_mask, iter_submasks


def halves(d: int) -> tuple[int, int]:
    """Masks of the low coordinates ``1..floor(d/2)`` and the rest."""
    low = full_mask(d // 2)
    return low, full_mask(d) & ~low


def expand_a(masks: Sequence[int], d: int) -> dict[int, int]:
    """Map each key of the A-side expansion to the first member producing it."""
    low, high = halves(d)
    table: dict[int, int] = {}
    for a in dict.fromkeys(masks):
        a_low = a & low
        for x in iter_submasks(high & ~a):
            table.setdefault(a_low | x, a)
    return table


def expand_b(masks: Sequence[int], d: int) -> set[int]:
    """The B-side expansion, materialized. The solver streams it instead."""
    low, _ = halves(d)
    keys: set[int] = set()
    for b in dict.fromkeys(masks):
        b_high = b & ~low
        keys.update(x | b_high for x in iter_submasks(low & ~b))
    return keys


def find_pair_masks(a_masks: Sequence[int], b_masks: Sequence[int], d: int) -> tuple[int, int] | None:
    if not a_masks or not b_masks:
        return None
    table = expand_a(a_masks, d)
    low, _ = halves(d)
    for b in dict.fromkeys(b_masks):
        b_high = b & ~low
        for x in iter_submasks(low & ~b):
            a = table.get(x | b_high)
            if a is not None:
                assert a & b == 0
                return a, b
    return None


def solve_2ov_mitm(A: Family, B: Family) -> tuple[BitVector, BitVector] | None:
    """Return a disjoint pair ``(a, b)`` with ``a`` from A and ``b`` from B, or None."""
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    pair = find_pair_masks(A.masks, B.masks, A.dim)
    if pair is None:
        return None
    return BitVector(pair[0], A.dim), BitVector(pair[1], A.dim)
