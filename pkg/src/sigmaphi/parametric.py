"""Parametric solution families: derivation, generation, classification.

A family for f(a1*n + b1) = f(a2*n + b2) is a coprime pair (k1, k2) with
companion multipliers (m1, m2) given by the closed forms

    sigma kind:  m1 = k2*(a1*b2 - a2*b1) / (a2*(k2 - k1))
                 m2 = k1*(a1*b2 - a2*b1) / (a1*(k2 - k1))
                 with  k1*sigma(m1) == k2*sigma(m2)
    phi kind:    same with denominator factor (k1 - k2)
                 with  k1*phi(m1) == k2*phi(m2)

Whenever q1 = k1*l - 1 and q2 = k2*l - 1 are primes not dividing m1, m2
(sigma kind; the phi kind uses k_i*l + 1), n = (m1*q1 - b1)/a1 solves the
equation, because f(m_i*q_i) = f(m_i)*k_i*l on both sides.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import arith
from .equations import EquationSpec, Kind
from .errors import CapacityError, IntegrityError, UsageError


@dataclass(frozen=True)
class Family:
    spec: EquationSpec
    k1: int
    k2: int
    m1: int
    m2: int


@dataclass(frozen=True)
class Witness:
    """A generated solution n together with the family data that produced it."""

    family: Family
    l: int
    q1: int
    q2: int
    n: int


def _family_if_valid(spec: EquationSpec, k1: int, k2: int) -> Family | None:
    den = (k2 - k1) if spec.kind is Kind.SIGMA else (k1 - k2)
    m1, r1 = divmod(k2 * spec.det, spec.a2 * den)
    m2, r2 = divmod(k1 * spec.det, spec.a1 * den)
    if r1 or r2 or m1 < 1 or m2 < 1:
        return None
    if k1 * spec.evaluate(m1) != k2 * spec.evaluate(m2):
        return None
    return Family(spec, k1, k2, m1, m2)


def derive_family(spec: EquationSpec, k1: int, k2: int) -> Family | None:
    """Family for the coprime pair (k1, k2), or None if the closed forms fail.

    Fails (returns None) when either multiplier is non-integral or < 1, or
    when the divisor identity k1*f(m1) == k2*f(m2) does not hold.
    """
    if k1 < 1 or k2 < 1:
        raise UsageError("k1 and k2 must be positive")
    if k1 == k2:
        raise UsageError("k1 and k2 must differ")
    if gcd(k1, k2) != 1:
        raise UsageError("k1 and k2 must be coprime")
    return _family_if_valid(spec, k1, k2)


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in arith.factorize(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def enumerate_families(spec: EquationSpec, kmax: int, threads: int = 1) -> list[Family]:
    """All families with max(k1, k2) <= kmax, sorted by (k1, k2).

    Coprimality of (k1, k2) forces |k2 - k1| to divide a1*b2 - a2*b1, so only
    gaps dividing that cross term are scanned instead of all pairs.
    """
    if kmax < 2:
        raise UsageError(f"kmax must be >= 2, got {kmax}")
    if threads < 1:
        raise UsageError("threads must be >= 1")
    gaps = _divisors(abs(spec.det))

    def scan(bounds: tuple[int, int]) -> list[Family]:
        lo, hi = bounds
        found = []
        for k1 in range(lo, hi + 1):
            for gap in gaps:
                for k2 in (k1 - gap, k1 + gap):
                    if not 1 <= k2 <= kmax or gcd(k1, k2) != 1:
                        continue
                    fam = _family_if_valid(spec, k1, k2)
                    if fam is not None:
                        found.append(fam)
        return found

    if threads > 1 and kmax > threads:
        step = -(kmax // -threads)
        chunks = [(lo, min(kmax, lo + step - 1)) for lo in range(1, kmax + 1, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, chunks))
        families = [fam for part in parts for fam in part]
    else:
        families = scan((1, kmax))
    families.sort(key=lambda f: (f.k1, f.k2))
    return families


def generate(family: Family, lmax: int) -> list[Witness]:
    """Witnesses for every l <= lmax whose shifted multiples are both prime.

    l is accepted when q_i = k_i*l -+ 1 are prime, q_i does not divide m_i,
    a1 divides m1*q1 - b1, and the resulting n is >= 1.  Every witness is
    re-verified by direct evaluation before being returned.
    """
    if lmax < 0:
        raise UsageError(f"lmax must be >= 0, got {lmax}")
    spec = family.spec
    shift = -1 if spec.kind is Kind.SIGMA else 1
    out = []
    for l in range(1, lmax + 1):
        q1 = family.k1 * l + shift
        q2 = family.k2 * l + shift
        if not (arith.is_prime(q1) and arith.is_prime(q2)):
            continue
        if family.m1 % q1 == 0 or family.m2 % q2 == 0:
            continue
        num = family.m1 * q1 - spec.b1
        if num % spec.a1:
            continue
        n = num // spec.a1
        if n < 1:
            continue
        witness = Witness(family, l, q1, q2, n)
        if not verify_witness(witness):
            raise IntegrityError(f"generated witness failed re-verification: {witness}")
        out.append(witness)
    return out


def verify_witness(w: Witness) -> bool:
    """Check a witness by direct evaluation, independent of how it was built."""
    spec = w.family.spec
    arg1, arg2 = spec.arguments(w.n)
    if arg1 < 1 or arg2 < 1:
        return False
    if arg1 != w.family.m1 * w.q1 or arg2 != w.family.m2 * w.q2:
        return False
    return spec.evaluate(arg1) == spec.evaluate(arg2)


def classify(spec: EquationSpec, n: int) -> Witness | None:
    """Witness proving the solution n is parametric, or None if it is sporadic.

    Scans unit-multiplicity prime divisors q1 | arg1, q2 | arg2 and accepts
    the first (ascending) pair satisfying all three identities:

      linear:   a2*(m1 + b1) == a1*(m2 + b2)      (phi kind: m_i - b_i)
      ratio:    a2*m1*(q1+1) == a1*m2*(q2+1)      (phi kind: q_i - 1)
      divisor:  (q1+1)*sigma(m1) == (q2+1)*sigma(m2)   (phi kind analogous)

    where m_i = arg_i / q_i.  The returned witness uses the maximal scale
    l = gcd(q1+1, q2+1) (phi: gcd(q1-1, q2-1)), making k1, k2 coprime.

    Raises UsageError if n is not actually a solution.
    """
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    arg1, arg2 = spec.arguments(n)
    if arg1 < 1 or arg2 < 1 or spec.evaluate(arg1) != spec.evaluate(arg2):
        raise UsageError(f"n={n} is not a solution of the equation")
    shift = 1 if spec.kind is Kind.SIGMA else -1
    q1s = [p for p, e in arith.factorize(arg1) if e == 1]
    q2s = [p for p, e in arith.factorize(arg2) if e == 1]
    fm2s = [spec.evaluate(arg2 // q) for q in q2s]
    for q1 in q1s:
        m1 = arg1 // q1
        t1 = q1 + shift
        fm1 = spec.evaluate(m1)
        for q2, fm2 in zip(q2s, fm2s):
            m2 = arg2 // q2
            t2 = q2 + shift
            if spec.kind is Kind.SIGMA:
                if spec.a2 * (m1 + spec.b1) != spec.a1 * (m2 + spec.b2):
                    continue
            else:
                if spec.a2 * (m1 - spec.b1) != spec.a1 * (m2 - spec.b2):
                    continue
            if spec.a2 * m1 * t1 != spec.a1 * m2 * t2:
                continue
            if t1 * fm1 != t2 * fm2:
                continue
            l = gcd(t1, t2)
            family = Family(spec, t1 // l, t2 // l, m1, m2)
            return Witness(family, l, q1, q2, n)
    return None


def ghp_generate(j: int, k: int, r: int) -> int | None:
    """Totient-equation solution n = j*((j+k)*r/g + 1) from equal-radical pairs.

    Requires rad(j) == rad(j+k) with g = gcd(j, j+k), and both j*r/g + 1 and
    (j+k)*r/g + 1 prime, neither dividing j; then phi(n) == phi(n+k).
    Returns None when any condition fails.
    """
    for name, v in (("j", j), ("k", k), ("r", r)):
        if v < 1:
            raise UsageError(f"{name} must be >= 1, got {v}")
    g = gcd(j, j + k)
    if arith.radical(j) != arith.radical(j + k):
        return None
    q1 = (j // g) * r + 1
    q2 = ((j + k) // g) * r + 1
    if not (arith.is_prime(q1) and arith.is_prime(q2)):
        return None
    if j % q1 == 0 or j % q2 == 0:
        return None
    n = j * q2
    if arith.phi(n) != arith.phi(n + k):
        raise IntegrityError(f"ghp_generate({j}, {k}, {r}) produced a non-solution {n}")
    return n


def consecutive_multiperfect_search(
    xmax: int, threads: int = 1, block_size: int | None = None
) -> list[int]:
    """All m <= xmax with m | sigma(m) and (m+1) | sigma(m+1), ascending."""
    if xmax < 1:
        raise UsageError(f"xmax must be >= 1, got {xmax}")
    if threads < 1:
        raise UsageError("threads must be >= 1")
    if block_size is not None and block_size < 1:
        raise UsageError("block_size must be >= 1")
    if xmax + 1 >= arith.TABLE_LIMIT:
        raise CapacityError(f"xmax must be < 2**48 - 1, got {xmax}")

    def scan(block: tuple[int, int]) -> list[int]:
        lo, hi = block
        table = arith.build_table(lo, hi + 1)  # one past hi for the m+1 check
        ns = np.arange(lo, hi + 2, dtype=np.uint64)
        divisible = table.sigma % ns == 0
        both = divisible[:-1] & divisible[1:]
        return [lo + int(i) for i in np.nonzero(both)[0]]

    step = block_size or arith.DEFAULT_SEGMENT
    blocks = [(lo, min(xmax, lo + step - 1)) for lo in range(1, xmax + 1, step)]
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, blocks))
    else:
        parts = [scan(block) for block in blocks]
    return [m for part in parts for m in part]
