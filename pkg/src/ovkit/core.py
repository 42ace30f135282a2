"""Bit-vector data model, instance types and seeded generators.

A vector over dimension ``d`` is a subset of ``{1..d}`` stored as a Python
int: coordinate ``j`` lives at bit ``j - 1``. Solvers work on raw masks; the
:class:`BitVector` wrapper exists for the public surface and for witnesses.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

MAX_DIM = 128


def _check_dim(dim: int) -> None:
    if not 0 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must lie in [0, {MAX_DIM}], got {dim}")


def full_mask(dim: int) -> int:
    return (1 << dim) - 1


def iter_bits(mask: int) -> Iterable[int]:
    """Yield the 0-based positions of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_submasks(mask: int) -> Iterable[int]:
    """Yield every submask of ``mask``, including ``mask`` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def round_half_up(x: float) -> int:
    # tolerate float noise such as 0.33 * 12 = 3.9600000000000004
    return math.floor(x + 0.5 + 1e-9)


@dataclass(frozen=True, slots=True)
class BitVector:
    mask: int
    dim: int

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if self.mask < 0 or self.mask >> self.dim:
            raise ValueError(f"mask {self.mask:#x} has bits outside 1..{self.dim}")

    @classmethod
    def from_coords(cls, coords: Iterable[int], dim: int) -> BitVector:
        mask = 0
        for j in coords:
            if not 1 <= j <= dim:
                raise ValueError(f"coordinate {j} outside 1..{dim}")
            mask |= 1 << (j - 1)
        return cls(mask, dim)

    @property
    def bits(self) -> frozenset[int]:
        return frozenset(j + 1 for j in iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __and__(self, other: BitVector) -> BitVector:
        _same_dim(self, other)
        return BitVector(self.mask & other.mask, self.dim)

    def __or__(self, other: BitVector) -> BitVector:
        _same_dim(self, other)
        return BitVector(self.mask | other.mask, self.dim)

    def isdisjoint(self, other: BitVector) -> bool:
        _same_dim(self, other)
        return self.mask & other.mask == 0

    def issubset(self, other: BitVector) -> bool:
        _same_dim(self, other)
        return self.mask & ~other.mask == 0

    def to_bitstring(self) -> str:
        return "".join("1" if self.mask >> j & 1 else "0" for j in range(self.dim))

    def __str__(self) -> str:
        return self.to_bitstring()


def _same_dim(u: BitVector, v: BitVector) -> None:
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")


@dataclass(frozen=True)
class Family:
    """Ordered multiset of vectors over a common dimension."""

    dim: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        object.__setattr__(self, "masks", tuple(self.masks))
        limit = 1 << self.dim
        for m in self.masks:
            if not 0 <= m < limit:
                raise ValueError(f"mask {m:#x} has bits outside 1..{self.dim}")

    @classmethod
    def from_vectors(cls, vectors: Iterable[BitVector], dim: int) -> Family:
        masks = []
        for v in vectors:
            if v.dim != dim:
                raise ValueError(f"dimension mismatch: {v.dim} vs {dim}")
            masks.append(v.mask)
        return cls(dim, tuple(masks))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], dim: int) -> Family:
        return cls.from_vectors((BitVector.from_coords(s, dim) for s in sets), dim)

    @property
    def members(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(m, self.dim) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class Instance:
    dim: int
    families: tuple[Family, ...]

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        object.__setattr__(self, "families", tuple(self.families))
        if not self.families:
            raise ValueError("an instance needs at least one family")
        for fam in self.families:
            if fam.dim != self.dim:
                raise ValueError(f"family dimension {fam.dim} != instance dimension {self.dim}")

    @classmethod
    def from_sets(cls, families: Sequence[Iterable[Iterable[int]]], dim: int) -> Instance:
        return cls(dim, tuple(Family.from_sets(f, dim) for f in families))

    @property
    def k(self) -> int:
        return len(self.families)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.families)


@dataclass(frozen=True)
class PlantedInstance:
    instance: Instance
    witness: tuple[BitVector, ...]


def parse_bitstring(s: str) -> BitVector:
    """Leftmost character is coordinate 1."""
    if not s:
        raise ValueError("empty bitstring")
    if len(s) > MAX_DIM:
        raise ValueError(f"bitstring longer than {MAX_DIM}")
    mask = 0
    for j, ch in enumerate(s):
        if ch == "1":
            mask |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid character {ch!r} in bitstring")
    return BitVector(mask, len(s))


def is_orthogonal(vectors: Sequence[BitVector]) -> bool:
    """True iff the common intersection of all vectors is empty."""
    if not vectors:
        raise ValueError("need at least one vector")
    dim = vectors[0].dim
    for v in vectors:
        if v.dim != dim:
            raise ValueError(f"dimension mismatch: {v.dim} vs {dim}")
    return reduce(lambda x, y: x & y, (v.mask for v in vectors)) == 0


def gen_random(d: int, k: int, sizes: Sequence[int], p: float, seed: int) -> Instance:
    """Each coordinate of each vector is present independently with probability ``p``."""
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"d must lie in [1, {MAX_DIM}]")
    if len(sizes) != k or k < 1:
        raise ValueError("need exactly k >= 1 family sizes")
    if any(n < 1 for n in sizes):
        raise ValueError("family sizes must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    families = []
    for n in sizes:
        masks = []
        for _ in range(n):
            m = 0
            for j in range(d):
                if rng.random() < p:
                    m |= 1 << j
            masks.append(m)
        families.append(Family(d, tuple(masks)))
    return Instance(d, tuple(families))


def random_subset(rng: random.Random, d: int, size: int) -> int:
    mask = 0
    for j in rng.sample(range(d), size):
        mask |= 1 << j
    return mask


def gen_planted(d: int, k: int, weights: Sequence[float], n: int, seed: int) -> PlantedInstance:
    """Plant a k-tuple with sizes ``round(w_i * d)`` and empty common intersection.

    The remaining ``n - 1`` vectors of each family are uniform decoys of the
    same size. Decoys may create further solutions.
    """
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"d must lie in [1, {MAX_DIM}]")
    if k < 1 or len(weights) != k:
        raise ValueError("need exactly k >= 1 weights")
    if n < 1:
        raise ValueError("n must be positive")
    sizes = [round_half_up(w * d) for w in weights]
    if any(not 0 <= s <= d for s in sizes):
        raise ValueError(f"weights {list(weights)} give sizes outside [0, {d}]")
    # every coordinate must be missing from at least one witness vector
    if sum(d - s for s in sizes) < d:
        raise ValueError(f"weights {list(weights)} admit no tuple with empty common intersection")

    rng = random.Random(seed)
    order = list(range(d))
    rng.shuffle(order)
    family_order = list(range(k))
    rng.shuffle(family_order)
    witness_masks = [0] * k
    pos = 0
    for i in family_order:
        missing = 0
        for t in range(d - sizes[i]):
            missing |= 1 << order[(pos + t) % d]
        pos += d - sizes[i]
        witness_masks[i] = full_mask(d) & ~missing

    families = []
    for i in range(k):
        masks = [random_subset(rng, d, sizes[i]) for _ in range(n - 1)]
        masks.insert(rng.randrange(n), witness_masks[i])
        families.append(Family(d, tuple(masks)))
    witness = tuple(BitVector(m, d) for m in witness_masks)
    return PlantedInstance(Instance(d, tuple(families)), witness)
