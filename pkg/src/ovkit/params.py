"""Entropy helpers and the exponent formulas that size the representation solver.

All set sizes are expressed as fractions of the dimension: ``alpha`` and
``beta`` are the sizes of the two solution vectors, ``lam`` the size of the
certificate sets, ``kappa`` the log2 of the per-block sample count per
coordinate. Exponents are in bits per coordinate, so a running-time base is
``2 ** exponent``.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, TextIO

FORMULA_TOL = 1e-9
OPTIMIZER_TOL = 1e-4

_INV_PHI = (math.sqrt(5) - 1) / 2
_PRESCAN_POINTS = 200


def binary_entropy(x: float) -> float:
    if not -FORMULA_TOL <= x <= 1 + FORMULA_TOL:
        raise ValueError(f"binary entropy is defined on [0, 1], got {x}")
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def multinomial_entropy(weights: Sequence[float]) -> float:
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    if abs(sum(weights) - 1.0) > FORMULA_TOL:
        raise ValueError(f"weights must sum to 1, got {sum(weights)}")
    return -sum(w * math.log2(w) for w in weights if w > 0)


def log2_binomial(n: int, k: int) -> float:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    return sum(math.log2(n - i) - math.log2(i + 1) for i in range(k))


def _check_sizes(alpha: float, beta: float) -> None:
    if alpha < -FORMULA_TOL or beta < -FORMULA_TOL:
        raise ValueError("alpha and beta must be nonnegative")
    if alpha > beta + FORMULA_TOL:
        raise ValueError(f"need alpha <= beta, got {alpha} > {beta}")
    if alpha + beta > 1 + FORMULA_TOL:
        raise ValueError(f"need alpha + beta <= 1, got {alpha + beta}")


def _check_lambda(alpha: float, beta: float, lam: float) -> None:
    _check_sizes(alpha, beta)
    if not alpha - FORMULA_TOL <= lam <= 1 - beta + FORMULA_TOL:
        raise ValueError(f"lambda={lam} outside [{alpha}, {1 - beta}]")


def _scaled_entropy(scale: float, num: float) -> float:
    """``scale * h(num / scale)`` with the 0 * h(0/0) = 0 convention."""
    if scale <= FORMULA_TOL:
        return 0.0
    return scale * binary_entropy(min(max(num / scale, 0.0), 1.0))


def kappa_min(alpha: float, beta: float, lam: float) -> float:
    """Smallest log2-sample rate per coordinate that keeps a certificate likely."""
    _check_lambda(alpha, beta, lam)
    value = binary_entropy(lam) - _scaled_entropy(1 - alpha - beta, lam - alpha)
    return max(value, 0.0)


@dataclass(frozen=True)
class ExponentPair:
    c_A: float
    c_B: float

    @property
    def base(self) -> float:
        return 2.0 ** max(self.c_A, self.c_B)


def exponents(alpha: float, beta: float, lam: float) -> ExponentPair:
    """Per-vector enumeration exponents with kappa at its minimum."""
    _check_lambda(alpha, beta, lam)
    shared = _scaled_entropy(1 - alpha - beta, lam - alpha)
    c_a = _scaled_entropy(1 - alpha, lam - alpha) - shared
    c_b = _scaled_entropy(1 - beta, 1 - lam - beta) - shared
    return ExponentPair(max(c_a, 0.0), max(c_b, 0.0))


def lambda_analytic(alpha: float, beta: float) -> float:
    _check_sizes(alpha, beta)
    return (1 + alpha - beta) / 2


def _worst(alpha: float, beta: float, lam: float) -> float:
    e = exponents(alpha, beta, lam)
    return max(e.c_A, e.c_B)


@lru_cache(maxsize=4096)
def optimize_lambda(alpha: float, beta: float, tol: float = OPTIMIZER_TOL) -> tuple[float, float]:
    """Return ``(lambda*, base)`` minimizing ``max(c_A, c_B)`` over ``[alpha, 1 - beta]``.

    A uniform pre-scan picks the best grid cell, then golden-section search
    refines inside the neighbouring bracket. The pre-scan guards against the
    objective not being unimodal.
    """
    _check_sizes(alpha, beta)
    lo, hi = alpha, max(1 - beta, alpha)
    if hi - lo <= tol:
        lam = (lo + hi) / 2
        return lam, 2.0 ** _worst(alpha, beta, lam)

    step = (hi - lo) / _PRESCAN_POINTS
    grid = [lo + i * step for i in range(_PRESCAN_POINTS + 1)]
    values = [_worst(alpha, beta, x) for x in grid]
    best = min(range(len(grid)), key=values.__getitem__)
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, _PRESCAN_POINTS)]

    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = _worst(alpha, beta, x1), _worst(alpha, beta, x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = _worst(alpha, beta, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = _worst(alpha, beta, x2)
    lam = (a + b) / 2
    value = _worst(alpha, beta, lam)
    if values[best] < value:
        lam, value = grid[best], values[best]
    return lam, 2.0 ** value


def analytic_bound(alpha: float, beta: float) -> float:
    """Exponent of the closed-form bound obtained with the analytic lambda."""
    _check_sizes(alpha, beta)
    if alpha >= 1:
        raise ValueError("analytic bound is undefined at alpha = 1")
    return (binary_entropy(0.5 - beta / (2 * (1 - alpha))) - 1) * (1 - alpha) + beta


@dataclass(frozen=True)
class LandscapeCell:
    alpha: float
    beta: float
    lambda_star: float
    base: float


def admissible_grid(step: float) -> list[tuple[float, float]]:
    """Grid points with alpha <= beta and alpha + beta <= 1, ordered by (alpha, beta)."""
    if not 0 < step <= 1:
        raise ValueError(f"grid step must lie in (0, 1], got {step}")
    count = int(math.floor(1 / step + FORMULA_TOL))
    points = []
    for i in range(count + 1):
        for j in range(i, count + 1):
            alpha, beta = round(i * step, 12), round(j * step, 12)
            if alpha + beta <= 1 + FORMULA_TOL:
                points.append((alpha, beta))
    return points


def _cell(args: tuple[float, float, float]) -> LandscapeCell:
    alpha, beta, tol = args
    lam, base = optimize_lambda(alpha, beta, tol)
    return LandscapeCell(alpha, beta, lam, base)


def resolve_workers(workers: int | None = None) -> int:
    """``None`` reads OVKIT_THREADS; 0 means one worker per CPU."""
    if workers is None:
        workers = int(os.environ.get("OVKIT_THREADS", "1") or 1)
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def landscape(grid_step: float = 0.02, tol: float = OPTIMIZER_TOL,
              workers: int | None = None) -> list[LandscapeCell]:
    if not 0 < grid_step <= 0.5:
        raise ValueError(f"grid step must lie in (0, 0.5], got {grid_step}")
    jobs = [(a, b, tol) for a, b in admissible_grid(grid_step)]
    workers = resolve_workers(workers)
    if workers == 1:
        return [_cell(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_cell, jobs, chunksize=64))


def landscape_argmax(cells: Sequence[LandscapeCell]) -> LandscapeCell:
    return max(cells, key=lambda c: c.base)


LANDSCAPE_COLUMNS = ("alpha", "beta", "lambda", "base")


def write_landscape_csv(cells: Sequence[LandscapeCell], fh: TextIO) -> None:
    """Fixed schema, six decimals, rows in the order given."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(LANDSCAPE_COLUMNS)
    for c in cells:
        writer.writerow([f"{c.alpha:.6f}", f"{c.beta:.6f}", f"{c.lambda_star:.6f}", f"{c.base:.6f}"])


def _admissible(alpha: float, beta: float) -> bool:
    return 0 <= alpha <= beta and alpha + beta <= 1


_DIRECTIONS = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)]


def refine_argmax(start: LandscapeCell, step: float, tol: float = OPTIMIZER_TOL) -> LandscapeCell:
    """Polish a grid argmax by compass search over admissible (alpha, beta).

    Diagonal moves let the search slide along the alpha = beta edge, where
    the maximum sits. The inner lambda search runs much tighter than ``tol``
    so that its own error cannot masquerade as a better cell.
    """
    inner = min(tol, 1e-6) * 1e-3
    lam, base = optimize_lambda(start.alpha, start.beta, inner)
    best = LandscapeCell(start.alpha, start.beta, lam, base)
    while step > tol:
        moved = False
        for da, db in _DIRECTIONS:
            alpha, beta = best.alpha + da * step, best.beta + db * step
            if not _admissible(alpha, beta):
                continue
            lam, base = optimize_lambda(alpha, beta, inner)
            if base > best.base:
                best = LandscapeCell(alpha, beta, lam, base)
                moved = True
        if not moved:
            step /= 2
    return best


def analytic_argmax(grid_step: float = 0.01) -> tuple[float, float, float]:
    """Return ``(alpha, beta, exponent)`` maximizing :func:`analytic_bound` on the grid."""
    best = None
    for alpha, beta in admissible_grid(grid_step):
        if alpha >= 1:
            continue
        value = analytic_bound(alpha, beta)
        if best is None or value > best[2]:
            best = (alpha, beta, value)
    return best


def _epsilon_feasible(x: float, k: int, eps: dict[int, float]) -> bool:
    h = binary_entropy(x)
    return all(x + h * (k - ell + 1) <= eps[ell - 1] for ell in range(2, k + 1))


def epsilon_table(k_max: int, tol: float = 1e-12) -> dict[int, float]:
    """Density thresholds for the recursive k-OV solver.

    ``eps[k]`` is the largest ``x`` in ``(0, 1/2]`` with
    ``x + h(x) * (k - l + 1) <= eps[l - 1]`` for every ``l`` in ``2..k``.
    The left side is increasing in ``x`` on that interval, so the feasible
    set is an interval starting at 0 and bisection finds its end.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    eps = {1: 1.0, 2: 0.5}
    for k in range(3, k_max + 1):
        if _epsilon_feasible(0.5, k, eps):
            eps[k] = 0.5
            continue
        lo, hi = 0.0, 0.5
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if _epsilon_feasible(mid, k, eps):
                lo = mid
            else:
                hi = mid
        eps[k] = lo
    return eps
