"""Small prime utilities (desk scale)."""

import math

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n by a byte sieve."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def first_n_primes(m: int) -> np.ndarray:
    """The first m primes in ascending order."""
    if m < 1:
        return np.array([], dtype=np.int64)
    # p_m < m (log m + log log m) for m >= 6; pad the small cases.
    bound = 15 if m < 6 else int(m * (math.log(m) + math.log(math.log(m))) * 1.2) + 10
    ps = primes_up_to(bound)
    while ps.size < m:
        bound *= 2
        ps = primes_up_to(bound)
    return ps[:m]


def is_prime(n: int) -> bool:
    """Trial division; used to verify truncation levels."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
