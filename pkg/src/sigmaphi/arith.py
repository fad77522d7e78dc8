"""Exact arithmetic kernel: primality, factorization, and sigma/phi/spf sieves.

Scalar operations accept any positive integer below 2**63 and are exact
(Python integers throughout).  Bulk operations are numpy-backed segmented
sieves; table inputs are capped at 2**48 so every sigma value stays well
below 2**64.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import CapacityError, UsageError

SCALAR_LIMIT = 1 << 63
TABLE_LIMIT = 1 << 48
U64_MAX = (1 << 64) - 1

# Entries per sieve segment.  Tuning only: results must not depend on it.
DEFAULT_SEGMENT = 1 << 20

# Sufficient Miller-Rabin witnesses for every n < 3.3 * 10**24, so the test
# below is deterministic over the whole scalar range.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Gaps between consecutive integers coprime to 30, starting from 7.
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)

Factorization = list[tuple[int, int]]


def _check_scalar(n: int, name: str = "n", minimum: int = 1) -> None:
    if n < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {n}")
    if n >= SCALAR_LIMIT:
        raise CapacityError(f"{name} must be < 2**63, got {n}")


def is_prime(n: int) -> bool:
    """Deterministic primality verdict for 0 <= n < 2**63."""
    _check_scalar(n, minimum=0)
    if n < 2:
        return False
    for p in _WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization as an ascending list of (prime, exponent) pairs.

    Wheel trial division with a primality short-circuit once the remaining
    cofactor is prime; factorize(1) is the empty list.
    """
    _check_scalar(n)
    out: Factorization = []
    rem = n
    for p in (2, 3, 5):
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            out.append((p, e))
    f, wi = 7, 0
    while rem > 1:
        if is_prime(rem):
            out.append((rem, 1))
            break
        while f * f <= rem and rem % f:
            f += _WHEEL[wi]
            wi = (wi + 1) & 7
        if f * f > rem:
            # unreachable while is_prime is correct; kept as a safety net
            out.append((rem, 1))
            break
        e = 0
        while rem % f == 0:
            rem //= f
            e += 1
        out.append((f, e))
    return out


def sigma(n: int) -> int:
    """Sum of all positive divisors of n."""
    total = 1
    for p, e in factorize(n):
        total *= (p ** (e + 1) - 1) // (p - 1)
    if total > U64_MAX:
        raise CapacityError(f"sigma({n}) does not fit in 64 bits")
    return total


def phi(n: int) -> int:
    """Euler totient of n; phi(1) = 1."""
    total = 1
    for p, e in factorize(n):
        total *= p ** (e - 1) * (p - 1)
    return total


def largest_prime_factor(n: int) -> int:
    """Largest prime dividing n, with the value 1 at n = 1."""
    fac = factorize(n)
    return fac[-1][0] if fac else 1


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; rad(1) = 1."""
    total = 1
    for p, _ in factorize(n):
        total *= p
    return total


def _simple_primes(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (plain boolean sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit < 0:
        raise UsageError(f"limit must be >= 0, got {limit}")
    return [int(p) for p in _simple_primes(limit)]


@dataclass(frozen=True)
class ArithTable:
    """Densely sieved sigma, phi, and smallest-prime-factor values on [lo, hi].

    Arrays are indexed by n - lo.  spf(1) is defined as 1; spf(n) for n >= 2
    is the smallest prime dividing n, so spf(n) == n exactly for primes.
    """

    lo: int
    hi: int
    sigma: np.ndarray
    phi: np.ndarray
    spf: np.ndarray

    def _index(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise UsageError(f"n={n} outside table range [{self.lo}, {self.hi}]")
        return n - self.lo

    def sigma_at(self, n: int) -> int:
        return int(self.sigma[self._index(n)])

    def phi_at(self, n: int) -> int:
        return int(self.phi[self._index(n)])

    def spf_at(self, n: int) -> int:
        return int(self.spf[self._index(n)])


def _sieve_segment(lo: int, hi: int, primes: np.ndarray):
    """Sieve one segment [lo, hi]; returns (sigma, phi, spf) uint64 arrays."""
    size = hi - lo + 1
    sig = np.ones(size, dtype=np.uint64)
    tot = np.ones(size, dtype=np.uint64)
    spf = np.zeros(size, dtype=np.uint64)
    rem = np.arange(lo, hi + 1, dtype=np.uint64)
    one = np.uint64(1)
    for p in primes:
        p = int(p)
        if p * p > hi:
            break
        start = (-lo) % p
        if start >= size:
            continue
        pu = np.uint64(p)
        idx = np.arange(start, size, p, dtype=np.intp)
        hit = spf[idx]
        spf[idx] = np.where(hit == 0, pu, hit)
        rem[idx] //= pu
        tot[idx] *= pu - one
        # term accumulates 1 + p + ... + p**e per entry as powers divide out
        term = np.full(idx.size, p + 1, dtype=np.uint64)
        alive = idx
        pos = np.arange(idx.size, dtype=np.intp)
        while alive.size:
            more = (rem[alive] % pu) == 0
            if not more.any():
                break
            alive = alive[more]
            pos = pos[more]
            rem[alive] //= pu
            tot[alive] *= pu
            term[pos] = term[pos] * pu + one
        sig[idx] *= term
    # leftover cofactors are single primes > sqrt(hi)
    big = rem > one
    bv = rem[big]
    sig[big] *= bv + one
    tot[big] *= bv - one
    hit = spf[big]
    spf[big] = np.where(hit == 0, bv, hit)
    spf[spf == 0] = one  # only n = 1 remains unset
    return sig, tot, spf


def build_table(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> ArithTable:
    """Sieve sigma/phi/spf for every n in [lo, hi].

    Memory is O(hi - lo) for the output plus O(sqrt(hi)) for base primes;
    construction walks the range in segments of `segment_size` entries.
    """
    if lo < 1 or hi < lo:
        raise UsageError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi >= TABLE_LIMIT:
        raise CapacityError(f"hi must be < 2**48, got {hi}")
    if segment_size < 1:
        raise UsageError("segment_size must be >= 1")
    primes = _simple_primes(isqrt(hi))
    parts = []
    for start in range(lo, hi + 1, segment_size):
        end = min(hi, start + segment_size - 1)
        parts.append(_sieve_segment(start, end, primes))
    return ArithTable(
        lo,
        hi,
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        np.concatenate([p[2] for p in parts]),
    )


def largest_factor_table(limit: int) -> np.ndarray:
    """uint64 array t with t[n] = largest prime factor of n for 1 <= n <= limit.

    t[0] and t[1] are both 1 (index 0 is padding; the value at 1 is the
    convention used throughout).
    """
    if limit < 1:
        raise UsageError(f"limit must be >= 1, got {limit}")
    out = np.ones(limit + 1, dtype=np.uint64)
    for p in _simple_primes(limit):
        p = int(p)
        out[p::p] = p  # ascending primes: the last write wins
    return out
