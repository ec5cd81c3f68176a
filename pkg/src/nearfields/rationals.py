"""Exact rational arithmetic in prime-exponent coordinates.

Rational values are carried by fractions.Fraction, which already maintains
the lowest-terms, positive-denominator normal form everything here relies
on. This module adds the multiplicative view of a nonzero rational: a sign
together with a finite map from primes to nonzero integer exponents.

Factoring is trial division against a shared, lock-protected sieve, which
settles inputs up to about 1e12 outright (smallest factor of the cofactor
exceeds the 1e6 default cap, so the cofactor is prime). Past the cap, a
deterministic Miller-Rabin test and Brent's rho splitter take over; both
remain exponential-time methods, there is nothing sub-exponential here.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError

Rat = Fraction

__all__ = [
    "Rat",
    "SignedFactorization",
    "factor_int",
    "factor_rat",
    "rebuild",
    "nth_prime",
    "primes_upto",
    "prime_mask",
    "is_prime",
]

TRIAL_CAP = 10**6

# Deterministic Miller-Rabin witness set, valid below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_VALID_BELOW = 3_317_044_064_679_887_385_961_981


class _PrimeCache:
    """Growable prime table backed by a numpy sieve, safe under threads."""

    def __init__(self):
        self._lock = threading.RLock()
        self._limit = 0
        self._primes: list[int] = []

    def extend(self, limit: int) -> None:
        with self._lock:
            if limit <= self._limit:
                return
            limit = max(limit, 2 * self._limit, 1 << 16)
            mask = np.ones(limit + 1, dtype=bool)
            mask[:2] = False
            for p in range(2, math.isqrt(limit) + 1):
                if mask[p]:
                    mask[p * p :: p] = False
            primes = np.flatnonzero(mask).tolist()
            # Swap in atomically; readers hold a snapshot reference.
            self._primes = primes
            self._limit = limit

    def upto(self, n: int) -> list[int]:
        self.extend(n)
        primes = self._primes
        return primes[: bisect_right(primes, n)]

    def iter_upto(self, cap: int):
        i = 0
        while True:
            primes = self._primes
            while i < len(primes):
                p = primes[i]
                if p > cap:
                    return
                yield p
                i += 1
            if self._limit >= cap:
                return
            self.extend(min(cap, 4 * max(self._limit, 1 << 14)))

    def nth(self, k: int) -> int:
        if k < 1:
            raise DomainError("prime indexing starts at 1")
        if k < 6:
            return [2, 3, 5, 7, 11][k - 1]
        # Rosser-Schoenfeld upper bound for the k-th prime, k >= 6.
        bound = int(k * (math.log(k) + math.log(math.log(k)))) + 10
        while True:
            self.extend(bound)
            primes = self._primes
            if len(primes) >= k:
                return primes[k - 1]
            bound *= 2


_CACHE = _PrimeCache()


@dataclass(frozen=True)
class SignedFactorization:
    """A nonzero rational as sign * prod(p**e) with nonzero exponents."""

    sign: int
    exponents: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if any(e == 0 for e in self.exponents.values()):
            raise DomainError("zero exponents are not stored")

    def value(self) -> Rat:
        num = den = 1
        for p, e in self.exponents.items():
            if e > 0:
                num *= p**e
            else:
                den *= p**-e
        return Fraction(self.sign * num, den)

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [[p, e] for p, e in sorted(self.exponents.items())],
        }


def is_prime(n: int) -> bool:
    """Deterministic primality test for |n| < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    if n >= _MR_VALID_BELOW:
        raise DomainError(f"primality test not deterministic at {n}")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of odd composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise DomainError(f"rho failed to split {n}")  # unreachable for composite n


def _factor_hard(m: int, out: dict[int, int]) -> None:
    stack = [m]
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        d = _brent_rho(v)
        stack.append(d)
        stack.append(v // d)


def factor_int(n: int, *, trial_cap: int | None = None) -> SignedFactorization:
    """Factor a nonzero integer into a sign and prime exponents."""
    if n == 0:
        raise DomainError("zero has no factorization")
    cap = TRIAL_CAP if trial_cap is None else trial_cap
    sign = 1 if n > 0 else -1
    m = abs(n)
    factors: dict[int, int] = {}
    exhausted_cap = True
    for p in _CACHE.iter_upto(cap):
        if p * p > m:
            exhausted_cap = False
            break
        while m % p == 0:
            m //= p
            factors[p] = factors.get(p, 0) + 1
    if m > 1:
        if not exhausted_cap or m <= cap * cap:
            factors[m] = factors.get(m, 0) + 1
        else:
            _factor_hard(m, factors)
    return SignedFactorization(sign, factors)


def factor_rat(q: Rat | int) -> SignedFactorization:
    """Factor a nonzero rational; denominator primes get negative exponents."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("zero has no factorization")
    top = factor_int(q.numerator)
    exps = dict(top.exponents)
    for p, e in factor_int(q.denominator).exponents.items():
        exps[p] = exps.get(p, 0) - e  # cannot cancel: q is in lowest terms
    return SignedFactorization(top.sign, exps)


def rebuild(f: SignedFactorization) -> Rat:
    """Inverse of factor_rat."""
    return f.value()


def nth_prime(k: int) -> int:
    """The k-th prime, 1-indexed: nth_prime(1) == 2."""
    return _CACHE.nth(k)


def primes_upto(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n < 2:
        return []
    return _CACHE.upto(n)


def prime_mask(n: int) -> np.ndarray:
    """Boolean array of length n + 1 with mask[k] iff k is prime.

    Built fresh per call rather than cached: the callers that need a mask
    (bulk norm-primality tests) need it once per growth step, and keeping a
    large mask alive between calls would cost far more than resieving.
    """
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask
