"""Exhaustive search for solutions of f(a1*n + b1) = f(a2*n + b2), f in {sigma, phi}."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import arith
from .errors import CapacityError, UsageError


class Kind(enum.Enum):
    SIGMA = "sigma"
    PHI = "phi"

    def evaluate(self, n: int) -> int:
        return arith.sigma(n) if self is Kind.SIGMA else arith.phi(n)


class Classification(enum.Enum):
    PARAMETRIC = "parametric"
    SPORADIC = "sporadic"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class EquationSpec:
    """One equation instance f(a1*n + b1) = f(a2*n + b2)."""

    kind: Kind
    a1: int
    b1: int
    a2: int
    b2: int

    def __post_init__(self) -> None:
        if self.a1 <= 0 or self.a2 <= 0:
            raise UsageError("a1 and a2 must be positive")
        if self.det == 0:
            raise UsageError("a1*b2 - a2*b1 must be nonzero")

    @property
    def det(self) -> int:
        return self.a1 * self.b2 - self.a2 * self.b1

    def arguments(self, n: int) -> tuple[int, int]:
        return self.a1 * n + self.b1, self.a2 * n + self.b2

    def evaluate(self, m: int) -> int:
        return self.kind.evaluate(m)


@dataclass(frozen=True)
class SolutionRecord:
    n: int
    arg1: int
    arg2: int
    value: int
    classification: Classification = Classification.UNCLASSIFIED


def _first_valid_n(spec: EquationSpec) -> int:
    # smallest n >= 1 keeping both arguments positive; n below it are skipped
    lo = 1
    for a, b in ((spec.a1, spec.b1), (spec.a2, spec.b2)):
        lo = max(lo, -((1 - b) // -a))
    return lo


def _scan_block(spec: EquationSpec, block: tuple[int, int]) -> list[SolutionRecord]:
    u, v = block
    strided = []
    for a, b in ((spec.a1, spec.b1), (spec.a2, spec.b2)):
        table = arith.build_table(a * u + b, a * v + b)
        arr = table.sigma if spec.kind is Kind.SIGMA else table.phi
        strided.append(arr[::a])
    hits = np.nonzero(strided[0] == strided[1])[0]
    out = []
    for i in hits:
        n = u + int(i)
        a1n, a2n = spec.arguments(n)
        out.append(SolutionRecord(n, a1n, a2n, int(strided[0][i])))
    return out


def search(
    spec: EquationSpec, xmax: int, threads: int = 1, block_size: int | None = None
) -> list[SolutionRecord]:
    """All n in [1, xmax] with both arguments >= 1 and f(arg1) == f(arg2), ascending.

    Block-sieved for throughput; with threads > 1 the blocks are sieved
    concurrently and merged in block order, so output is identical for any
    thread count and any block size (block_size is internal tuning).
    """
    if xmax < 1:
        raise UsageError(f"xmax must be >= 1, got {xmax}")
    if threads < 1:
        raise UsageError("threads must be >= 1")
    if block_size is not None and block_size < 1:
        raise UsageError("block_size must be >= 1")
    for a, b in ((spec.a1, spec.b1), (spec.a2, spec.b2)):
        if a * xmax + b >= arith.TABLE_LIMIT:
            raise CapacityError(f"argument {a}*{xmax}{b:+d} exceeds table capacity")
    start = _first_valid_n(spec)
    if start > xmax:
        return []
    step = block_size or max(1, arith.DEFAULT_SEGMENT // max(spec.a1, spec.a2))
    blocks = [(u, min(xmax, u + step - 1)) for u in range(start, xmax + 1, step)]
    scan = partial(_scan_block, spec)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(scan, blocks))
    else:
        parts = [scan(block) for block in blocks]
    return [rec for part in parts for rec in part]


def count_raw(spec: EquationSpec, xmax: int, threads: int = 1) -> int:
    """Number of solutions n <= xmax."""
    return len(search(spec, xmax, threads=threads))


def count_sporadic(spec: EquationSpec, xmax: int, threads: int = 1) -> int:
    """Number of solutions n <= xmax that the classifier rules non-parametric."""
    from .parametric import classify  # local import: parametric depends on this module

    return sum(
        1 for rec in search(spec, xmax, threads=threads) if classify(spec, rec.n) is None
    )
