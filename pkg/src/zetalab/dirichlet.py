"""Bounded-coefficient Dirichlet series on vertical arithmetic progressions:
the coefficient difference phi_n(m), the minimal nonzero index mu, the
per-n bound b_n = 1 + 2 B mu / |phi_n(mu)| and the uniqueness certificate
built from a finite scan."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DivergentRegion, SampleBelowBound

DEFAULT_TOL = 1e-12  # decides "phi_n(m) != 0" in floating point


@dataclass(frozen=True)
class BoundedCoeffFn:
    """Arithmetic function m -> f(m) with declared bound |f(m)| <= B.

    `support_hint` may mark indices where f is certainly zero, letting
    scans skip them; it is advisory and checked against eval lazily.
    """

    eval: Callable[[int], complex]
    bound_B: float
    support_hint: Optional[Callable[[int], bool]] = None

    def __call__(self, m: int) -> complex:
        value = complex(self.eval(m))
        if abs(value) > self.bound_B * (1.0 + 1e-12):
            raise ValueError(
                f"|f({m})| = {abs(value)} exceeds declared bound {self.bound_B}"
            )
        return value

    def maybe_nonzero(self, m: int) -> bool:
        return self.support_hint is None or self.support_hint(m)


def constant_one(bound: float = 1.0) -> BoundedCoeffFn:
    """f = 1: the zeta specialisation."""
    return BoundedCoeffFn(eval=lambda m: 1.0, bound_B=bound)


def power_of_two_indicator() -> BoundedCoeffFn:
    """f(m) = 1 iff m is a power of two: the counterexample coefficient."""
    def is_pow2(m: int) -> bool:
        return m & (m - 1) == 0

    return BoundedCoeffFn(eval=lambda m: 1.0 if is_pow2(m) else 0.0,
                          bound_B=1.0, support_hint=is_pow2)


@dataclass(frozen=True)
class Progression:
    """Vertical arithmetic progression generating shifts t + delta * n."""

    t: float
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    def shift(self, n: int) -> float:
        return self.t + self.delta * n


class Permutation:
    """Lazily evaluated bijection of the positive integers.

    kind is one of {"identity", "transposition", "beatty", "explicit-table"}.
    Bijectivity is only checkable on finite prefixes; see check_prefix.
    """

    def __init__(self, forward: Callable[[int], int], kind: str = "explicit-table"):
        self.forward = forward
        self.kind = kind

    def __call__(self, n: int) -> int:
        image = self.forward(n)
        if image < 1:
            raise ValueError(f"permutation image {image} of {n} not a positive integer")
        return image

    def check_prefix(self, n_max: int) -> dict:
        """Injectivity of {1..n_max} under forward; overflow images tracked."""
        images = [self(n) for n in range(1, n_max + 1)]
        distinct = len(set(images)) == len(images)
        overflow = [im for im in images if im > n_max]
        return {"injective": distinct, "overflow": overflow, "images": images}


def identity_permutation() -> Permutation:
    return Permutation(lambda n: n, kind="identity")


def transposition(n1: int, n2: int) -> Permutation:
    def fwd(n: int) -> int:
        if n == n1:
            return n2
        if n == n2:
            return n1
        return n

    return Permutation(fwd, kind="transposition")


def dirichlet_eval(f: BoundedCoeffFn, s: complex, n_terms: int) -> tuple[complex, float]:
    """Partial sum of sum f(m) m^{-s} with a rigorous tail bound
    B * n_terms^(1 - Re s) / (Re s - 1)."""
    s = complex(s)
    if s.real <= 1.0:
        raise DivergentRegion(f"Re s = {s.real} <= 1: no absolute convergence")
    total = 0.0 + 0.0j
    logs = np.log(np.arange(1, n_terms + 1, dtype=np.float64))
    if f.support_hint is not None:
        idx = [m for m in range(1, n_terms + 1) if f.maybe_nonzero(m)]
        if idx:
            coeffs = np.array([f(m) for m in idx], dtype=np.complex128)
            total = complex((coeffs * np.exp(-s * logs[np.array(idx) - 1])).sum())
    else:
        coeffs = np.array([f(m) for m in range(1, n_terms + 1)], dtype=np.complex128)
        total = complex((coeffs * np.exp(-s * logs)).sum())
    tail = f.bound_B * n_terms ** (1.0 - s.real) / (s.real - 1.0)
    return total, tail


def _unit_power(m: int, theta: float) -> complex:
    """m^{-i theta} = exp(-i theta log m), branch-unambiguous for m >= 1."""
    return cmath.exp(-1j * theta * math.log(m))


def phi_n(
    f1: BoundedCoeffFn,
    f2: BoundedCoeffFn,
    p1: Progression,
    p2: Progression,
    sigma: Permutation,
    n: int,
    m: int,
) -> complex:
    """phi_n(m) = f1(m) m^{-i(t1 + d1 n)} - f2(m) m^{-i(t2 + d2 sigma(n))}."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    a = f1(m) * _unit_power(m, p1.shift(n)) if f1.maybe_nonzero(m) else 0.0
    b = f2(m) * _unit_power(m, p2.shift(sigma(n))) if f2.maybe_nonzero(m) else 0.0
    return a - b


def find_mu(
    f1: BoundedCoeffFn,
    f2: BoundedCoeffFn,
    p1: Progression,
    p2: Progression,
    sigma: Permutation,
    n: int,
    m_max: int,
    tol: float = DEFAULT_TOL,
) -> Optional[int]:
    """Smallest m <= m_max with |phi_n(m)| > tol; None if all vanish.

    The zero test widens with the phase magnitude: exp(-i theta log m) is
    computed with absolute error ~ |theta log m| eps, so a fixed tol would
    misread roundoff as a nonzero coefficient on long progressions."""
    if m_max < 1 or tol <= 0:
        raise ValueError("m_max >= 1 and tol > 0 required")
    eps = math.ulp(1.0)
    for m in range(1, m_max + 1):
        if not (f1.maybe_nonzero(m) or f2.maybe_nonzero(m)):
            continue
        phases = abs(p1.shift(n)) + abs(p2.shift(sigma(n)))
        guard = tol + 16.0 * eps * phases * math.log(m + 1)
        if abs(phi_n(f1, f2, p1, p2, sigma, n, m)) > guard:
            return m
    return None


@dataclass(frozen=True)
class UniquenessCertificate:
    """Finite-scan proxy for the explicit uniqueness bound b.

    b is the min of b_n over the scanned n (an upper proxy for the true
    infimum); the witness fields describe the n achieving it.
    """

    n: int
    mu: int
    phi_mu: complex
    b_n: float
    b: float
    scan_limits: tuple[int, int]
    tol: float = DEFAULT_TOL

    def to_json(self) -> str:
        return json.dumps(
            {
                "tool": "zetalab",
                "witness_n": self.n,
                "mu": self.mu,
                "phi_mu": {"re": self.phi_mu.real, "im": self.phi_mu.imag},
                "b_n": self.b_n,
                "b": self.b,
                "scan_n_max": self.scan_limits[0],
                "scan_m_max": self.scan_limits[1],
                "tol": self.tol,
            },
            sort_keys=True,
        )


def uniqueness_bound(
    f1: BoundedCoeffFn,
    f2: BoundedCoeffFn,
    p1: Progression,
    p2: Progression,
    sigma: Permutation,
    n_max: int,
    m_max: int,
    tol: float = DEFAULT_TOL,
) -> Optional[UniquenessCertificate]:
    """Scan n <= n_max, compute b_n = 1 + 2 B mu / |phi_n(mu)| wherever a
    nonzero phi was found, and return the best certificate (or None)."""
    if n_max < 1 or m_max < 1:
        raise ValueError("scan limits must be >= 1")
    bound = max(f1.bound_B, f2.bound_B)
    best = None
    for n in range(1, n_max + 1):
        mu = find_mu(f1, f2, p1, p2, sigma, n, m_max, tol)
        if mu is None:
            continue
        value = phi_n(f1, f2, p1, p2, sigma, n, mu)
        b_n = 1.0 + 2.0 * bound * mu / abs(value)
        if best is None or b_n < best.b_n:
            best = UniquenessCertificate(
                n=n, mu=mu, phi_mu=value, b_n=b_n, b=b_n,
                scan_limits=(n_max, m_max), tol=tol,
            )
    return best


@dataclass(frozen=True)
class DistinctnessReport:
    samples: list
    differences: list
    lower_bounds: list
    violations: list


def verify_distinct_beyond_b(
    cert: UniquenessCertificate,
    f1: BoundedCoeffFn,
    f2: BoundedCoeffFn,
    p1: Progression,
    p2: Progression,
    sigma: Permutation,
    s_samples: list[complex],
    n_terms: int = 20000,
    slack: float = 1e-9,
) -> DistinctnessReport:
    """At each sample with Re s > b, confirm that the two series differ by
    at least |phi(mu)| mu^{-Re s} - 2 B mu^{1 - Re s} / (Re s - 1) - slack."""
    bound = max(f1.bound_B, f2.bound_B)
    n = cert.n
    diffs, lbs, bad = [], [], []
    for s in s_samples:
        s = complex(s)
        if s.real <= cert.b:
            raise SampleBelowBound(f"Re {s} <= certified bound {cert.b}")
        v1, tail1 = dirichlet_eval(f1, s + 1j * p1.shift(n), n_terms)
        v2, tail2 = dirichlet_eval(f2, s + 1j * p2.shift(sigma(n)), n_terms)
        diff = abs(v1 - v2)
        lb = (
            abs(cert.phi_mu) * cert.mu ** (-s.real)
            - 2.0 * bound * cert.mu ** (1.0 - s.real) / (s.real - 1.0)
        )
        diffs.append(diff)
        lbs.append(lb)
        if diff < lb - slack - tail1 - tail2:
            bad.append(s)
    return DistinctnessReport(
        samples=list(s_samples), differences=diffs, lower_bounds=lbs, violations=bad
    )
