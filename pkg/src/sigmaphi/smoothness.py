"""Exact smooth-number counters plus leading-order bound evaluators.

The counters are exact (sieved).  The bound evaluators drop every o(.) and
(1+o(1)) factor from the displayed asymptotics, so they are reporting aids,
not certified inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import arith
from .errors import DomainError, UsageError


@dataclass(frozen=True)
class SmoothReport:
    x: int
    y: int
    count: int
    bound_value: float | None
    ratio: float | None


def _check_xy(x: int, y) -> None:
    if x < 1:
        raise UsageError(f"x must be >= 1, got {x}")
    if y < 1:
        raise UsageError(f"y must be >= 1, got {y}")


def psi(x: int, y: int) -> int:
    """Count of n <= x all of whose prime factors are <= y (n = 1 counts)."""
    _check_xy(x, y)
    lpf = arith.largest_factor_table(x)
    return int(np.count_nonzero(lpf[1:] <= y))


def is_in_S(n: int, y) -> bool:
    """True iff some prime power p**a with a >= 2 and p**a > y divides n."""
    if y < 1:
        raise UsageError(f"y must be >= 1, got {y}")
    for p, e in arith.factorize(n):
        if e >= 2 and p**e > y:
            return True
    return False


def count_S(x: int, y) -> int:
    """Count of n <= x divisible by some prime power p**a > y with a >= 2."""
    _check_xy(x, y)
    mark = np.zeros(x + 1, dtype=bool)
    for p in arith.primes_upto(isqrt(x)):
        q = p * p  # smallest admissible power, then grow past y
        while q <= y:
            q *= p
        if q <= x:
            mark[q::q] = True
    return int(np.count_nonzero(mark))


def phi_smooth_count(x: int, y: int) -> int:
    """Count of n <= x whose totient has no prime factor > y."""
    _check_xy(x, y)
    values = arith.build_table(1, x).phi
    lpf = arith.largest_factor_table(int(values.max()))
    return int(np.count_nonzero(lpf[values.astype(np.int64)] <= y))


def sigma_smooth_count(x: int, y: int) -> int:
    """Count of n <= x whose divisor sum has no prime factor > y."""
    _check_xy(x, y)
    values = arith.build_table(1, x).sigma
    lpf = arith.largest_factor_table(int(values.max()))
    return int(np.count_nonzero(lpf[values.astype(np.int64)] <= y))


def bound_debruijn(x, y) -> float:
    """Leading-order smooth-count bound x*exp(-u*log(u)) with u = log x/log y."""
    if x <= 1 or y <= 1:
        raise DomainError("bound_debruijn requires x > 1 and y > 1")
    u = math.log(x) / math.log(y)
    if u < 1:
        raise DomainError("bound_debruijn requires y <= x")
    return x * math.exp(-u * math.log(u))


def bound_bfps(x, y) -> float:
    """Leading-order bound x*exp(-u*log(log(u))) for the phi/sigma smooth counts."""
    if x <= 1 or y <= 1:
        raise DomainError("bound_bfps requires x > 1 and y > 1")
    u = math.log(x) / math.log(y)
    if u <= math.e:
        raise DomainError("bound_bfps requires u > e so that log(log(u)) > 0")
    return x * math.exp(-u * math.log(math.log(u)))


def bound_main(x) -> float:
    """Leading-order sporadic-solution bound x*exp(-sqrt(log x * log log log x / 2))."""
    if x <= math.exp(math.e):
        raise DomainError("bound_main requires x > e**e")
    lx = math.log(x)
    lllx = math.log(math.log(lx))
    return x * math.exp(-math.sqrt(0.5 * lx * lllx))


_COUNTERS = {
    "psi": psi,
    "s": count_S,
    "phi": phi_smooth_count,
    "sigma": sigma_smooth_count,
}


def smooth_report(which: str, x: int, y: int, include_bound: bool = False) -> SmoothReport:
    """Run one counter, optionally with its leading-order bound and count/bound ratio."""
    try:
        counter = _COUNTERS[which]
    except KeyError:
        raise UsageError(f"unknown counter {which!r}; pick one of {sorted(_COUNTERS)}")
    count = counter(x, y)
    bound = ratio = None
    if include_bound:
        if which == "psi":
            bound = bound_debruijn(x, y)
        elif which == "s":
            bound = x / math.sqrt(y)  # constant in front deliberately dropped
        else:
            bound = bound_bfps(x, y)
        ratio = count / bound
    return SmoothReport(x, y, count, bound, ratio)
