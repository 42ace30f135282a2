"""Randomized one-sided-error 2-OV via sampled certificates of orthogonality.

For a disjoint pair ``(a, b)`` there is a set ``c`` with ``a <= c`` and
``b & c == 0``. The universe is split at random into ``ell`` equal blocks and
each block gets a family of candidate pieces ``c_i`` of a fixed size. Phase
one inserts every tuple ``(c_1, ..., c_ell)`` with ``a & u_i <= c_i`` for
some ``a``; phase two looks up every tuple with ``b & c_i == 0`` for some
``b``. A hit proves the recorded ``a`` and the current ``b`` disjoint, so the
solver never reports a false positive.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

from .core import BitVector, Family, iter_bits, round_half_up
from .params import exponents, kappa_min, lambda_analytic, optimize_lambda

log = logging.getLogger(__name__)

LambdaMode = Literal["analytic", "optimized"]
CandidateMode = Literal["auto", "exhaustive", "sampled"]

# sampled mode never draws more than this many times the number of subsets
_MAX_OVERSAMPLE = 16


def default_ell(d: int) -> int:
    """Block count giving blocks of roughly 8 coordinates."""
    return min(max(math.ceil(d / 8), 1), max(d, 1))


@dataclass(frozen=True)
class ReprConfig:
    """Tuning knobs for :func:`solve_2ov_repr`.

    ``ell=None`` picks :func:`default_ell`. ``repetitions=None`` runs
    ``rep_factor * d**2`` independent rounds. ``candidates="auto"`` takes all
    subsets of a block whenever the sampling target is at least their count.
    ``caps=False`` disables the per-vector enumeration caps.
    """

    ell: int | None = None
    rep_factor: int = 1
    repetitions: int | None = None
    sample_poly_exponent: float = 1.0
    cap_poly_exponent: float = 2.0
    seed: int = 0
    lambda_mode: LambdaMode = "optimized"
    candidates: CandidateMode = "auto"
    caps: bool = True
    eager_tables: bool = False

    def __post_init__(self):
        if self.ell is not None and self.ell < 1:
            raise ValueError("ell must be positive")
        if self.rep_factor < 1:
            raise ValueError("rep_factor must be positive")
        if self.repetitions is not None and self.repetitions < 1:
            raise ValueError("repetitions must be positive")
        if self.sample_poly_exponent < 0 or self.cap_poly_exponent < 0:
            raise ValueError("polynomial exponents must be nonnegative")
        if self.lambda_mode not in ("analytic", "optimized"):
            raise ValueError(f"unknown lambda_mode {self.lambda_mode!r}")
        if self.candidates not in ("auto", "exhaustive", "sampled"):
            raise ValueError(f"unknown candidate mode {self.candidates!r}")

    def repetition_count(self, d: int) -> int:
        if self.repetitions is not None:
            return self.repetitions
        return self.rep_factor * max(d * d, 1)


@dataclass(frozen=True)
class ReprParams:
    alpha: float
    beta: float
    lam: float
    kappa: float
    c_A: float
    c_B: float
    ell: int
    padded_dim: int
    sample_target: int
    cap_A: float
    cap_B: float


def make_params(alpha: float, beta: float, d: int, config: ReprConfig) -> ReprParams:
    ell = config.ell or default_ell(d)
    padded = ell * math.ceil(d / ell)
    block = padded // ell
    if config.lambda_mode == "analytic":
        lam = lambda_analytic(alpha, beta)
    else:
        lam, _ = optimize_lambda(alpha, beta)
    lam = min(max(lam, alpha), 1 - beta)
    kappa = kappa_min(alpha, beta, lam)
    exps = exponents(alpha, beta, lam)
    target = math.ceil(2.0 ** (kappa * block) * padded ** config.sample_poly_exponent)
    if config.caps:
        slack = padded ** config.cap_poly_exponent
        cap_a = 2.0 ** (exps.c_A * padded) * slack
        cap_b = 2.0 ** (exps.c_B * padded) * slack
    else:
        cap_a = cap_b = math.inf
    return ReprParams(alpha, beta, lam, kappa, exps.c_A, exps.c_B, ell, padded,
                      target, cap_a, cap_b)


@dataclass(frozen=True)
class UniversePartition:
    blocks: tuple[int, ...]
    padded_dim: int

    @property
    def ell(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return self.padded_dim // self.ell


def pad_and_partition(d: int, ell: int, rng: random.Random) -> UniversePartition:
    """Pad ``d`` up to a multiple of ``ell`` and split uniformly into equal blocks.

    Padding coordinates ``d+1..d'`` occur in no input vector.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    padded = ell * math.ceil(d / ell)
    coords = list(range(padded))
    rng.shuffle(coords)
    size = padded // ell
    blocks = []
    for i in range(ell):
        mask = 0
        for j in coords[i * size:(i + 1) * size]:
            mask |= 1 << j
        blocks.append(mask)
    return UniversePartition(tuple(blocks), padded)


def block_sizes(lam: float, partition: UniversePartition) -> tuple[int, ...]:
    """Certificate piece size per block.

    The total ``round(lam * d')`` is spread as evenly as possible, so each
    block gets ``round(lam * |u_i|)`` whenever that is an integer.
    """
    return split_sizes(lam, partition.padded_dim, partition.ell)


def split_sizes(lam: float, padded_dim: int, ell: int) -> tuple[int, ...]:
    total = round_half_up(lam * padded_dim)
    q, r = divmod(total, ell)
    return tuple(q + (1 if i < r else 0) for i in range(ell))


class CandidateIndex:
    """Per-block candidate pieces with memoized superset/disjoint lookups."""

    def __init__(self, blocks: Sequence[int], candidates: Sequence[Sequence[int]],
                 exhaustive: Sequence[bool] | None = None, check: bool = True):
        if len(blocks) != len(candidates):
            raise ValueError("one candidate list per block is required")
        self.blocks = tuple(blocks)
        self.candidates = tuple(tuple(c) for c in candidates)
        if check:
            for u, cands in zip(self.blocks, self.candidates):
                for c in cands:
                    if c & ~u:
                        raise ValueError("candidate piece leaves its block")
        self.exhaustive = tuple(exhaustive) if exhaustive is not None else (False,) * len(self.blocks)
        self._L: list[dict[int, tuple[int, ...]]] = []
        self._R: list[dict[int, tuple[int, ...]]] = []
        for u, cands, full in zip(self.blocks, self.candidates, self.exhaustive):
            if full and cands and cands is all_pieces(u, cands[0].bit_count()):
                # exhaustive pieces are a function of (u, s): share lookups across rounds
                lt, rt = _shared_tables(u, cands[0].bit_count())
            else:
                lt, rt = {}, {}
            self._L.append(lt)
            self._R.append(rt)

    @property
    def ell(self) -> int:
        return len(self.blocks)

    def _check(self, i: int, x: int) -> None:
        if x & ~self.blocks[i]:
            raise ValueError(f"query {x:#x} is not a subset of block {i}")

    def lookup_L(self, i: int, x: int) -> tuple[int, ...]:
        """Ids of candidates in block ``i`` that contain ``x``."""
        table = self._L[i]
        ids = table.get(x)
        if ids is None:
            self._check(i, x)
            ids = tuple(j for j, c in enumerate(self.candidates[i]) if x & ~c == 0)
            table[x] = ids
        return ids

    def lookup_R(self, i: int, x: int) -> tuple[int, ...]:
        """Ids of candidates in block ``i`` disjoint from ``x``."""
        table = self._R[i]
        ids = table.get(x)
        if ids is None:
            self._check(i, x)
            ids = tuple(j for j, c in enumerate(self.candidates[i]) if x & c == 0)
            table[x] = ids
        return ids

    def build_eager(self) -> int:
        """Fill both tables for every subset of every block; return the pair checks done."""
        checks = 0
        for i, u in enumerate(self.blocks):
            bits = [1 << j for j in iter_bits(u)]
            cands = self.candidates[i]
            for combo in itertools.product((0, 1), repeat=len(bits)):
                x = sum(b for b, take in zip(bits, combo) if take)
                self._L[i][x] = tuple(j for j, c in enumerate(cands) if x & ~c == 0)
                self._R[i][x] = tuple(j for j, c in enumerate(cands) if x & c == 0)
                checks += 2 * len(cands)
        return checks

    def piece(self, i: int, cid: int) -> int:
        return self.candidates[i][cid]


@lru_cache(maxsize=1 << 14)
def _shared_tables(u: int, s: int) -> tuple[dict, dict]:
    return {}, {}


@lru_cache(maxsize=1 << 14)
def all_pieces(u: int, s: int) -> tuple[int, ...]:
    """Every size-``s`` subset of block ``u``, as masks."""
    return tuple(sum(1 << j for j in combo) for combo in itertools.combinations(iter_bits(u), s))


def draw_candidates(partition: UniversePartition, sizes: Sequence[int], target: int,
                    mode: CandidateMode, rng: random.Random) -> CandidateIndex:
    """Draw ``target`` uniform pieces of the given size per block, deduplicated.

    If ``target`` reaches the number of such pieces (``auto``), or on request
    (``exhaustive``), every piece is taken instead.
    """
    all_cands, flags = [], []
    for u, s in zip(partition.blocks, sizes):
        total = math.comb(u.bit_count(), s)
        exhaustive = mode == "exhaustive" or (mode == "auto" and target >= total)
        if exhaustive:
            cands = all_pieces(u, s)
        else:
            coords = list(iter_bits(u))
            draws = min(target, _MAX_OVERSAMPLE * total)
            seen: dict[int, None] = {}
            for _ in range(draws):
                seen[sum(1 << j for j in rng.sample(coords, s))] = None
            cands = list(seen)
        all_cands.append(cands)
        flags.append(exhaustive)
    return CandidateIndex(partition.blocks, all_cands, flags, check=False)


def sample_candidates(partition: UniversePartition, params: ReprParams, config: ReprConfig,
                      rng: random.Random) -> CandidateIndex:
    sizes = block_sizes(params.lam, partition)
    return draw_candidates(partition, sizes, params.sample_target, config.candidates, rng)


@dataclass
class RunStats:
    """Counters accumulated over every round of a solve."""

    runs: int = 0
    insertions: int = 0
    skipped_a: int = 0
    skipped_b: int = 0
    per_a_max: int = 0


def run_once(A_alpha: Sequence[int], B_beta: Sequence[int], params: ReprParams,
             index: CandidateIndex, stats: RunStats | None = None) -> tuple[int, int] | None:
    """One round of the two-phase certificate search. Returns a mask pair or None.

    A member whose tuple count exceeds its cap is skipped outright rather
    than partially enumerated.
    """
    stats = stats if stats is not None else RunStats()
    stats.runs += 1
    pairs = list(enumerate(index.blocks))
    lookup_L, lookup_R = index.lookup_L, index.lookup_R
    cap_a, cap_b = params.cap_A, params.cap_B
    table: dict[tuple[int, ...], int] = {}

    for a in A_alpha:
        lists = [lookup_L(i, a & u) for i, u in pairs]
        size = math.prod(map(len, lists))
        if size == 0:
            continue
        if size > cap_a:
            stats.skipped_a += 1
            continue
        stats.insertions += size
        if size > stats.per_a_max:
            stats.per_a_max = size
        for tup in itertools.product(*lists):
            table.setdefault(tup, a)

    if not table:
        return None

    for b in B_beta:
        lists = [lookup_R(i, b & u) for i, u in pairs]
        size = math.prod(map(len, lists))
        if size == 0:
            continue
        if size > cap_b:
            stats.skipped_b += 1
            continue
        for tup in itertools.product(*lists):
            a = table.get(tup)
            if a is not None:
                # a lies inside the pieces, b avoids them, so they are disjoint
                assert a & b == 0, "certificate soundness violated"
                return a, b
    return None


def _stream_seed(seed: int, rep: int) -> int:
    return seed * 1_000_003 + rep


def _buckets(masks: Sequence[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = defaultdict(list)
    for m in dict.fromkeys(masks):
        out[m.bit_count()].append(m)
    return dict(out)


def find_pair_repr(a_masks: Sequence[int], b_masks: Sequence[int], d: int,
                   config: ReprConfig = ReprConfig(),
                   stats: RunStats | None = None) -> tuple[int, int] | None:
    """Mask-level solver. Returns ``(a, b)`` with ``a & b == 0`` or None."""
    if not a_masks or not b_masks:
        return None
    A, B = _buckets(a_masks), _buckets(b_masks)
    if 0 in A:
        return 0, b_masks[0]
    if 0 in B:
        return a_masks[0], 0

    # (size_a, size_b) pairs, oriented so the smaller side plays the A role
    jobs = []
    for sa in sorted(A):
        for sb in sorted(B):
            if sa + sb > d:
                continue
            swapped = sa > sb
            small, large = (sb, sa) if swapped else (sa, sb)
            left, right = (B[sb], A[sa]) if swapped else (A[sa], B[sb])
            params = make_params(small / d, large / d, d, config)
            sizes = split_sizes(params.lam, params.padded_dim, params.ell)
            jobs.append((left, right, params, sizes, swapped))
    if not jobs:
        return None

    ell = jobs[0][2].ell
    live = list(range(len(jobs)))
    for rep in range(config.repetition_count(d)):
        rng = random.Random(_stream_seed(config.seed, rep))
        partition = pad_and_partition(d, ell, rng)
        indexes: dict[tuple, CandidateIndex] = {}
        settled = []
        for j in live:
            left, right, params, sizes, swapped = jobs[j]
            key = (sizes, params.sample_target)
            index = indexes.get(key)
            if index is None:
                index = draw_candidates(partition, sizes, params.sample_target,
                                        config.candidates, rng)
                if config.eager_tables:
                    index.build_eager()
                indexes[key] = index
            hit = run_once(left, right, params, index, stats)
            if hit is not None:
                a, b = (hit[1], hit[0]) if swapped else hit
                if a & b == 0:
                    return a, b
                log.warning("discarding unverified witness %#x, %#x", a, b)
            if ell == 1 and all(index.exhaustive):
                # a single exhaustive block makes the round deterministic
                settled.append(j)
        if settled:
            live = [j for j in live if j not in settled]
            if not live:
                break
    return None


def solve_2ov_repr(A: Family, B: Family, config: ReprConfig = ReprConfig(),
                   stats: RunStats | None = None) -> tuple[BitVector, BitVector] | None:
    """Return a verified disjoint pair or None. Never returns a false positive."""
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    pair = find_pair_repr(A.masks, B.masks, A.dim, config, stats)
    if pair is None:
        return None
    return BitVector(pair[0], A.dim), BitVector(pair[1], A.dim)
