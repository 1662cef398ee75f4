"""Truncated Euler products, random Euler products with unit phases,
the discrete mean-square approximation statistic, the Bergman sup bound
on rectangles, and the empirical two-sample analogue of the discrete
limit theorem."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import zeta_core
from .equidist import validate_shift_sequence
from .errors import PointOnBoundary, VanishingFactor
from .primes import first_n_primes, is_prime


@dataclass(frozen=True)
class TruncationLevel:
    """The first m primes, trial-division verified."""

    m: int
    primes: np.ndarray

    def __post_init__(self):
        if self.primes.size != self.m:
            raise ValueError("prime count does not match m")
        if np.any(np.diff(self.primes) <= 0):
            raise ValueError("primes must be strictly ascending")
        check = self.primes if self.m <= 100 else self.primes[:: max(1, self.m // 100)]
        for p in check:
            if not is_prime(int(p)):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def of(cls, m: int) -> "TruncationLevel":
        return cls(m=m, primes=first_n_primes(m))

    @property
    def log_primes(self) -> np.ndarray:
        return np.log(self.primes.astype(np.float64))


@dataclass(frozen=True)
class RandomPhase:
    """One unit-modulus phase per prime of a truncation level."""

    phases: np.ndarray
    seed: int

    def __post_init__(self):
        if np.any(np.abs(np.abs(self.phases) - 1.0) > 1e-14):
            raise ValueError("phases must have unit modulus")

    @classmethod
    def sample(cls, level: TruncationLevel, seed: int) -> "RandomPhase":
        rng = np.random.default_rng(seed)
        angles = rng.uniform(0.0, 2.0 * math.pi, size=level.m)
        return cls(phases=np.exp(1j * angles), seed=seed)

    @classmethod
    def all_ones(cls, level: TruncationLevel) -> "RandomPhase":
        return cls(phases=np.ones(level.m, dtype=np.complex128), seed=0)

    @classmethod
    def vertical_shift(cls, level: TruncationLevel, tau: float) -> "RandomPhase":
        """omega(p) = p^{-i tau}, which twists zeta_m into zeta_m(s + i tau)."""
        return cls(phases=np.exp(-1j * tau * level.log_primes), seed=0)


def zeta_m(level: TruncationLevel, s: complex) -> complex:
    """Truncated Euler product prod (1 - p^{-s})^{-1}, evaluated in log space."""
    s = complex(s)
    if s.real <= 0.0:
        raise ValueError("zeta_m requires Re s > 0")
    factors = 1.0 - np.exp(-s * level.log_primes)
    return complex(np.exp(-np.log(factors).sum()))


def random_zeta_m(level: TruncationLevel, phase: RandomPhase, s: complex) -> complex:
    """Random Euler product prod (1 - omega(p) p^{-s})^{-1} at level m."""
    s = complex(s)
    factors = 1.0 - phase.phases * np.exp(-s * level.log_primes)
    if np.any(np.abs(factors) < 1e-14):
        raise VanishingFactor("a random Euler factor vanished")
    return complex(np.exp(-np.log(factors).sum()))


def _zeta_m_on_shifts(level: TruncationLevel, s0: complex, shifts: np.ndarray) -> np.ndarray:
    """zeta_m(s0 + i x) for an array of real shifts, vectorised over shifts."""
    lp = level.log_primes
    base = np.exp(-complex(s0) * lp)  # p^{-s0}
    twist = np.exp(-1j * np.outer(shifts, lp))  # p^{-i x_n}
    factors = 1.0 - twist * base[None, :]
    return np.exp(-np.log(factors).sum(axis=1))


@dataclass(frozen=True)
class MeanSquareStat:
    m: int
    N: int
    sigma: float
    value: float
    mode: str  # "pointwise" or "sup-on-K"

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("mean-square statistic must be non-negative")


def mean_square_discrete(
    level: TruncationLevel,
    sigma: float,
    shifts: np.ndarray,
    N: int,
    grid: Optional[np.ndarray] = None,
    domain: zeta_core.EvalDomain = zeta_core.DEFAULT_DOMAIN,
    allow_irregular: bool = False,
) -> MeanSquareStat:
    """(1/N) sum |zeta(sigma + i x_n) - zeta_m(sigma + i x_n)|^2, or with the
    sup over a compact grid of anchor points when `grid` is given."""
    if not (0.5 < sigma < 1.0):
        raise ValueError("sigma must lie in (1/2, 1)")
    shifts = np.asarray(shifts, dtype=np.float64)[:N]
    if shifts.size != N:
        raise ValueError("fewer shifts than N")
    validate_shift_sequence(shifts, allow_irregular=allow_irregular)
    anchors = np.asarray(grid, dtype=np.complex128) if grid is not None else np.array([sigma + 0j])
    mode = "sup-on-K" if grid is not None else "pointwise"
    dev_sq = np.zeros(N)
    for anchor in anchors:
        s0 = complex(anchor)
        points = s0 + 1j * shifts
        exact = _zeta_on_shift_points(points, domain)
        truncated = _zeta_m_on_shifts(level, s0, shifts)
        dev_sq = np.maximum(dev_sq, np.abs(exact - truncated) ** 2)
    return MeanSquareStat(m=level.m, N=N, sigma=sigma, value=float(dev_sq.mean()), mode=mode)


def _zeta_on_shift_points(points: np.ndarray, domain: zeta_core.EvalDomain) -> np.ndarray:
    """zeta over points with comparable heights grouped into blocks."""
    out = np.empty(points.size, dtype=np.complex128)
    block = 512
    for start in range(0, points.size, block):
        out[start : start + block] = zeta_core.zeta_grid(points[start : start + block], domain)
    return out


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned closed rectangle [x0, x1] x [y0, y1]."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("degenerate rectangle")

    @property
    def area(self) -> float:
        return (self.x1 - self.x0) * (self.y1 - self.y0)

    def boundary_distance(self, z: complex) -> float:
        return min(z.real - self.x0, self.x1 - z.real, z.imag - self.y0, self.y1 - z.imag)

    def midpoint_grid(self, step: float) -> np.ndarray:
        nx = max(1, int(round((self.x1 - self.x0) / step)))
        ny = max(1, int(round((self.y1 - self.y0) / step)))
        xs = self.x0 + (np.arange(nx) + 0.5) * (self.x1 - self.x0) / nx
        ys = self.y0 + (np.arange(ny) + 0.5) * (self.y1 - self.y0) / ny
        return xs[:, None] + 1j * ys[None, :]


def bergman_sup_bound(f_samples: np.ndarray, rect: Rectangle, z: complex) -> float:
    """Right-hand side of the Bergman pointwise bound
    (sqrt(pi) d(z, boundary))^{-1} (integral |f|^2 dA)^{1/2}
    with the integral done by midpoint quadrature on the sample grid."""
    d = rect.boundary_distance(complex(z))
    if d <= 0.0:
        raise PointOnBoundary(f"{z} is not strictly inside {rect}")
    cell = rect.area / f_samples.size
    integral = float((np.abs(f_samples) ** 2).sum() * cell)
    return (math.sqrt(math.pi) * d) ** -1 * math.sqrt(integral)


def ks_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    data = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, data, side="right") / a.size
    cdf_b = np.searchsorted(b, data, side="right") / b.size
    return float(np.abs(cdf_a - cdf_b).max())


@dataclass(frozen=True)
class LimitTheoremReport:
    m: int
    h: float
    s0: complex
    N: int
    trials: int
    seed: int
    ks_re: float
    ks_im: float
    ks_log_abs: float

    @property
    def max_ks(self) -> float:
        return max(self.ks_re, self.ks_im, self.ks_log_abs)

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "h": self.h,
                "s0": {"re": self.s0.real, "im": self.s0.imag},
                "N": self.N,
                "trials": self.trials,
                "seed": self.seed,
                "ks_re": self.ks_re,
                "ks_im": self.ks_im,
                "ks_log_abs": self.ks_log_abs,
                "note": "finitely many phases only; truncated surrogate of the limit law",
            },
            sort_keys=True,
        )


def empirical_limit_theorem(
    level: TruncationLevel,
    h: float,
    s0: complex,
    N: int,
    trials: int,
    seed: int,
) -> LimitTheoremReport:
    """Compare {zeta_m(s0 + i h n)}_{n<=N} against {zeta_m(s0, omega)} over
    `trials` random phase draws via KS distances of the Re, Im and
    log-modulus marginals."""
    s0 = complex(s0)
    if not (0.5 < s0.real < 1.0):
        raise ValueError("Re s0 must lie in (1/2, 1)")
    if h <= 0.0:
        raise ValueError("h must be positive")
    shifts = h * np.arange(1, N + 1, dtype=np.float64)
    shifted = _zeta_m_on_shifts(level, s0, shifts)
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=(trials, level.m))
    factors = 1.0 - np.exp(1j * angles) * np.exp(-s0 * level.log_primes)[None, :]
    if np.any(np.abs(factors) < 1e-14):
        raise VanishingFactor("a random Euler factor vanished")
    random_sample = np.exp(-np.log(factors).sum(axis=1))
    return LimitTheoremReport(
        m=level.m,
        h=h,
        s0=s0,
        N=N,
        trials=trials,
        seed=seed,
        ks_re=ks_distance(shifted.real, random_sample.real),
        ks_im=ks_distance(shifted.imag, random_sample.imag),
        ks_log_abs=ks_distance(np.log(np.abs(shifted)), np.log(np.abs(random_sample))),
    )
