"""Discrete universality experiments: disk-hit scans on vertical grids,
joint Beatty-progression hit densities, the swap-permutation variant with
its density transfer bound, and the left-half flip through the functional
equation."""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import zeta_core
from .beatty import BeattyPair, sigma_alpha
from .equidist import _guarded_floor
from .errors import ChiBoundUnavailable, DomainOverflow, VanishingTarget

_BLOCK = 512


@dataclass(frozen=True)
class VerticalGrid:
    """Anchor s with step h and l points s + i h (k - 1), k = 1..l."""

    s: complex
    h: float
    l: int

    def __post_init__(self):
        if self.h <= 0 or self.l < 1:
            raise ValueError("h > 0 and l >= 1 required")

    def require_strip(self, lo: float, hi: float) -> None:
        if not (lo < self.s.real < hi):
            raise ValueError(f"Re s = {self.s.real} outside ({lo}, {hi})")

    def points(self) -> np.ndarray:
        return self.s + 1j * self.h * np.arange(self.l)


@dataclass(frozen=True)
class TargetDisk:
    a: complex
    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class ShiftHit:
    n: int
    deviations: tuple[float, ...]
    max_dev: float


@dataclass(frozen=True)
class HitDensityReport:
    N: int
    hits: int
    density: float
    first_hits: tuple[int, ...]
    params: dict

    def __post_init__(self):
        if not (0.0 <= self.density <= 1.0):
            raise ValueError("density must lie in [0, 1]")

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.N,
                "hits": self.hits,
                "density": self.density,
                "first_hits": list(self.first_hits),
                "params": self.params,
            },
            sort_keys=True,
            default=str,
        )


def _zeta_shift_values(
    sigma: float,
    heights: np.ndarray,
    domain: zeta_core.EvalDomain,
    threads: int = 1,
) -> np.ndarray:
    """zeta(sigma + i t) for an ascending array of heights, evaluated in
    blocks of comparable height (deterministic merge order)."""
    points = sigma + 1j * heights
    blocks = [(i, points[i : i + _BLOCK]) for i in range(0, points.size, _BLOCK)]
    out = np.empty(points.size, dtype=np.complex128)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(lambda ib: (ib[0], zeta_core.zeta_grid(ib[1], domain)), blocks)
            for i, vals in results:
                out[i : i + _BLOCK] = vals
    else:
        for i, blk in blocks:
            out[i : i + _BLOCK] = zeta_core.zeta_grid(blk, domain)
    return out


def scan_disk_hits(
    grid: VerticalGrid,
    disk: TargetDisk,
    N: int,
    domain: zeta_core.EvalDomain = zeta_core.DEFAULT_DOMAIN,
    threads: int = 1,
) -> tuple[list[ShiftHit], HitDensityReport]:
    """All n <= N with |zeta(grid point + i h n) - a| < epsilon for every
    grid point, plus a density report."""
    grid.require_strip(0.5, 1.0)
    t_top = abs(grid.s.imag) + grid.h * (N + grid.l - 1)
    if t_top > domain.t_max:
        raise DomainOverflow(
            f"scan reaches t = {t_top}, beyond certified t_max = {domain.t_max}"
        )
    # grid point k of shift n sits at height Im s + h (n + k - 1): evaluate
    # every needed height once.
    heights = grid.s.imag + grid.h * np.arange(1, N + grid.l)
    values = _zeta_shift_values(grid.s.real, heights, domain, threads)
    dev = np.abs(values - disk.a)
    inside = dev < disk.epsilon
    # hit(n) = all of inside[n - 1 .. n + l - 2]
    window = np.ones(N, dtype=bool)
    for k in range(grid.l):
        window &= inside[k : k + N]
    hit_indices = np.nonzero(window)[0] + 1
    hits = [
        ShiftHit(
            n=int(n),
            deviations=tuple(float(dev[n - 1 + k]) for k in range(grid.l)),
            max_dev=float(dev[n - 1 : n - 1 + grid.l].max()),
        )
        for n in hit_indices
    ]
    report = HitDensityReport(
        N=N,
        hits=len(hits),
        density=len(hits) / N,
        first_hits=tuple(int(n) for n in hit_indices[:10]),
        params={
            "s": str(grid.s),
            "h": grid.h,
            "l": grid.l,
            "a": str(disk.a),
            "epsilon": disk.epsilon,
        },
    )
    return hits, report


def hits_to_csv(hits: list[ShiftHit], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "max_dev"])
        for h in hits:
            w.writerow([h.n, f"{h.max_dev:.17g}"])


def _sup_dev_per_shift(
    grid_pts: np.ndarray,
    shifts: np.ndarray,
    target: complex,
    domain: zeta_core.EvalDomain,
    threads: int = 1,
) -> np.ndarray:
    """max over grid points of |zeta(point + i shift) - target| per shift."""
    sup = np.zeros(shifts.size)
    for pt in np.asarray(grid_pts, dtype=np.complex128).ravel():
        heights = pt.imag + shifts
        vals = _zeta_shift_values(pt.real, heights, domain, threads)
        sup = np.maximum(sup, np.abs(vals - target))
    return sup


def joint_beatty_hits(
    pair: BeattyPair,
    t1: float,
    t2: float,
    delta1: float,
    delta2: float,
    grid_pts: np.ndarray,
    targets: tuple[complex, complex],
    epsilon: float,
    N: int,
    domain: zeta_core.EvalDomain = zeta_core.DEFAULT_DOMAIN,
    threads: int = 1,
) -> HitDensityReport:
    """Density of n <= N whose Beatty shifts on both lines approximate the
    constant targets within epsilon over the finite grid."""
    a1, a2 = targets
    if a1 == 0 or a2 == 0:
        raise VanishingTarget("constant targets must be nonzero")
    n = np.arange(1, N + 1, dtype=np.float64)
    fa = _guarded_floor(n * pair.alpha, pair.alpha)
    fb = _guarded_floor(n * pair.alpha_prime, pair.alpha_prime)
    shifts1 = t1 + delta1 * fa
    shifts2 = t2 + delta2 * fb
    sup1 = _sup_dev_per_shift(grid_pts, shifts1, complex(a1), domain, threads)
    sup2 = _sup_dev_per_shift(grid_pts, shifts2, complex(a2), domain, threads)
    ok = (sup1 < epsilon) & (sup2 < epsilon)
    idx = np.nonzero(ok)[0] + 1
    return HitDensityReport(
        N=N,
        hits=int(ok.sum()),
        density=float(ok.mean()),
        first_hits=tuple(int(i) for i in idx[:10]),
        params={
            "alpha": pair.alpha,
            "t1": t1,
            "t2": t2,
            "delta1": delta1,
            "delta2": delta2,
            "a1": str(a1),
            "a2": str(a2),
            "epsilon": epsilon,
            "caveat": "alpha membership in the admissible set is only testable "
                      "by the finite exclusion scan",
        },
    )


def corollary_sis_density(
    pair: BeattyPair,
    t1: float,
    t2: float,
    delta1: float,
    delta2: float,
    grid_pts: np.ndarray,
    targets: tuple[complex, complex],
    epsilon: float,
    N: int,
    domain: zeta_core.EvalDomain = zeta_core.DEFAULT_DOMAIN,
    threads: int = 1,
) -> HitDensityReport:
    """Density over n <= N of the progression pair (t1 + d1 n,
    t2 + d2 sigma_alpha(n)); also reports the transferred lower bound
    (1/alpha) * (Beatty-line density) for comparison."""
    a1, a2 = targets
    if a1 == 0 or a2 == 0:
        raise VanishingTarget("constant targets must be nonzero")
    n = np.arange(1, N + 1, dtype=np.float64)
    swapped = np.array([sigma_alpha(pair, int(k)) for k in range(1, N + 1)], dtype=np.float64)
    shifts1 = t1 + delta1 * n
    shifts2 = t2 + delta2 * swapped
    sup1 = _sup_dev_per_shift(grid_pts, shifts1, complex(a1), domain, threads)
    # shifts2 is not monotone; evaluate in sorted order, undo afterwards
    order = np.argsort(shifts2, kind="stable")
    sup2 = np.empty(N)
    sup2[order] = _sup_dev_per_shift(grid_pts, shifts2[order], complex(a2), domain, threads)
    ok = (sup1 < epsilon) & (sup2 < epsilon)
    idx = np.nonzero(ok)[0] + 1
    beatty_report = joint_beatty_hits(
        pair, t1, t2, delta1, delta2, grid_pts, targets, epsilon, N, domain, threads
    )
    return HitDensityReport(
        N=N,
        hits=int(ok.sum()),
        density=float(ok.mean()),
        first_hits=tuple(int(i) for i in idx[:10]),
        params={
            "alpha": pair.alpha,
            "t1": t1,
            "t2": t2,
            "delta1": delta1,
            "delta2": delta2,
            "a1": str(a1),
            "a2": str(a2),
            "epsilon": epsilon,
            "beatty_line_density": beatty_report.density,
            "transferred_lower_bound": beatty_report.density / pair.alpha,
            "sampling_slack": 2.0 / math.sqrt(N),
        },
    )


@dataclass(frozen=True)
class FlipReport:
    N: int
    predicted_hits: tuple[int, ...]
    confirmed_hits: tuple[int, ...]
    disagreements: tuple[int, ...]
    params: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.N,
                "predicted": list(self.predicted_hits),
                "confirmed": list(self.confirmed_hits),
                "disagreements": list(self.disagreements),
                "params": self.params,
            },
            sort_keys=True,
            default=str,
        )


def left_half_flip(
    grid: VerticalGrid,
    r: float,
    c: float,
    N: int,
    t0: float,
    domain: zeta_core.EvalDomain = zeta_core.DEFAULT_DOMAIN,
    threads: int = 1,
) -> FlipReport:
    """Find n <= N with |zeta(1 - s - i h (n + k - 1))| >= 2 r / c on the
    whole grid, then verify |zeta(s + i h (n + k - 1))| > r by direct
    evaluation; c and its onset t0 must come from a chi lower-bound scan
    for Re s and the scanned t-range."""
    grid.require_strip(0.0, 0.5)
    if grid.s.imag < t0:
        raise ChiBoundUnavailable(
            f"scan starts at t = {grid.s.imag}, below certified t0 = {t0}"
        )
    t_top = grid.s.imag + grid.h * (N + grid.l - 1)
    if t_top > domain.t_max:
        raise DomainOverflow(f"scan reaches t = {t_top} beyond t_max = {domain.t_max}")
    heights = grid.s.imag + grid.h * np.arange(1, N + grid.l)
    # |zeta(1 - s - i t)| = |zeta((1 - Re s) + i t)| by reflection
    mirrored = np.abs(_zeta_shift_values(1.0 - grid.s.real, heights, domain, threads))
    big = mirrored >= 2.0 * r / c
    window = np.ones(N, dtype=bool)
    for k in range(grid.l):
        window &= big[k : k + N]
    predicted = np.nonzero(window)[0] + 1
    confirmed, disagreements = [], []
    for n in predicted:
        pts = grid.s + 1j * grid.h * (n + np.arange(grid.l))
        direct = np.abs(zeta_core.zeta_grid(pts, domain))
        if np.all(direct > r):
            confirmed.append(int(n))
        else:
            disagreements.append(int(n))
    return FlipReport(
        N=N,
        predicted_hits=tuple(int(n) for n in predicted),
        confirmed_hits=tuple(confirmed),
        disagreements=tuple(disagreements),
        params={
            "s": str(grid.s),
            "h": grid.h,
            "l": grid.l,
            "r": r,
            "c": c,
            "t0": t0,
        },
    )
