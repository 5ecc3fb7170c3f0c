"""Band tilings E of the cross-section under the dual dilation action.

A band is E = {lambda in Lambda : low <= |lambda_p| < high} for a pivot
coordinate p outside the jump set with |a_p| = c != 1 and high / low =
max(c, 1/c).  Every lambda with lambda_p != 0 then has exactly one m with
A^{-m} lambda in E.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .coadjoint import OrbitData
from .dilation import DilationSpec
from .errors import TrivialAction, ZeroPivotCoordinate
from .poly import Poly, as_fraction

__all__ = [
    "TilingSpec",
    "TilingReport",
    "make_shannon_tiling",
    "tile_index",
    "in_band",
    "verify_tiling",
    "floor_log",
]

GRID = 64  # sample denominators
BOX = 8  # samples lie in [-BOX, BOX]
BLOCK = 1000  # samples per RNG stream


@dataclass(frozen=True)
class TilingSpec:
    a: tuple
    pivot: int
    low: Fraction
    high: Fraction
    zero_coords: tuple
    pfaffian: Poly

    @property
    def c(self) -> Fraction:
        return abs(self.a[self.pivot])

    @property
    def ratio(self) -> Fraction:
        c = self.c
        return c if c > 1 else 1 / c

    def describe(self, names: Sequence[str] | None = None) -> str:
        name = f"λ{self.pivot + 1}" if names is None else f"λ({names[self.pivot]})"
        return f"{self.low} <= |{name}| < {self.high}"


def make_shannon_tiling(spec: DilationSpec, orbit: OrbitData, variant: str = "unit") -> TilingSpec:
    """Band on the first coordinate outside e with a non-unit eigenvalue.

    variant "unit" gives [min(1,c), max(1,c)); "half" gives the classical
    Shannon band [1/2, 1) and needs c = 2 or c = 1/2.
    """
    spec.require_automorphism()
    pivot = next((k for k in range(spec.n) if k not in orbit.e and abs(spec.a[k]) != 1), None)
    if pivot is None:
        raise TrivialAction("every coordinate outside the jump set has |a_k| = 1")
    c = abs(spec.a[pivot])
    if variant == "unit":
        low, high = min(Fraction(1), c), max(Fraction(1), c)
    elif variant == "half":
        if c not in (2, Fraction(1, 2)):
            raise ValueError("the [1/2, 1) band needs |a_pivot| = 2 or 1/2")
        low, high = Fraction(1, 2), Fraction(1)
    else:
        raise ValueError(f"unknown band variant {variant!r}")
    return TilingSpec(spec.a, pivot, low, high, orbit.e, orbit.pfaffian)


def floor_log(u: Fraction, base: Fraction) -> int:
    """Largest m with base^m <= u, for u > 0 and base > 1, by exact comparison."""
    # float estimate, then exact correction
    m = math.floor((math.log(u.numerator) - math.log(u.denominator)) / math.log(base))
    while base ** m > u:
        m -= 1
    while base ** (m + 1) <= u:
        m += 1
    return m


def in_band(t: TilingSpec, lam: Sequence) -> bool:
    if any(lam[k] for k in t.zero_coords):
        return False
    return t.low <= abs(lam[t.pivot]) < t.high


def tile_index(t: TilingSpec, lam: Sequence) -> int:
    """The unique m with A^{-m} lambda in E."""
    x = as_fraction(lam[t.pivot])
    if x == 0:
        raise ZeroPivotCoordinate("pivot coordinate of the functional is zero")
    k = floor_log(abs(x) / t.low, t.ratio)
    return k if t.c > 1 else -k


def _shift(t: TilingSpec, lam: Sequence, m: int) -> tuple:
    """A^{-m} lambda."""
    return tuple(x * a ** (-m) if x else x for x, a in zip(lam, t.a))


def window(t: TilingSpec) -> int:
    """Largest |m| that can occur for samples on the grid inside the box."""
    r = t.ratio
    bound = 0
    while r ** bound < BOX * GRID / min(t.low, 1):
        bound += 1
    return max(8, bound + 1)


@dataclass
class TilingReport:
    samples: int
    failures: int
    seed: int
    pivot: int
    band: str
    max_abs_index: int = 0
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        return f"{self.failures} failures / {self.samples}"


def _draw(rng: np.random.Generator, t: TilingSpec, n: int) -> tuple:
    while True:
        raw = rng.integers(-BOX * GRID, BOX * GRID + 1, size=n)
        lam = tuple(
            Fraction(0) if k in t.zero_coords else Fraction(int(v), GRID) for k, v in enumerate(raw)
        )
        if lam[t.pivot] and t.pfaffian(list(lam)):
            return lam


def _check_block(args) -> tuple[int, int, list]:
    t, seed_seq, count, membership = args
    rng = np.random.default_rng(seed_seq)
    n = len(t.a)
    member = membership or (lambda lam: in_band(t, lam))
    w = window(t)
    failures, worst, examples = 0, 0, []
    for _ in range(count):
        lam = _draw(rng, t, n)
        hits = [m for m in range(-w, w + 1) if member(_shift(t, lam, m))]
        ok = len(hits) == 1
        if ok and membership is None:
            ok = hits[0] == tile_index(t, lam)
        if ok:
            worst = max(worst, abs(hits[0]))
        else:
            failures += 1
            if len(examples) < 5:
                examples.append((tuple(str(x) for x in lam), hits))
    return failures, worst, examples


def verify_tiling(
    t: TilingSpec,
    samples: int,
    seed: int = 0,
    workers: int = 1,
    membership: Callable[[tuple], bool] | None = None,
) -> TilingReport:
    """Monte Carlo check that each sampled lambda has exactly one tile index.

    Samples are split into blocks of BLOCK, each with its own RNG stream
    spawned from the seed, so results do not depend on the worker count.
    A custom membership predicate replaces the band test when given.
    """
    report = TilingReport(samples, 0, seed, t.pivot, t.describe())
    if samples <= 0:
        return report
    nblocks = -(-samples // BLOCK)
    streams = np.random.SeedSequence(seed).spawn(nblocks)
    jobs = [(t, streams[b], min(BLOCK, samples - b * BLOCK), membership) for b in range(nblocks)]
    if workers > 1 and membership is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_block, jobs))
    else:
        results = [_check_block(job) for job in jobs]
    for failures, worst, examples in results:
        report.failures += failures
        report.max_abs_index = max(report.max_abs_index, worst)
        report.examples.extend(examples[: 5 - len(report.examples)])
    return report
