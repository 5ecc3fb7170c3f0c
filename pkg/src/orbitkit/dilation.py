"""Diagonal dilations A X_k = a_k X_k: validation, dual action, density of the dilated lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebra
from .coadjoint import Functional, orbit_data
from .errors import (
    DimensionMismatch,
    NotAnAutomorphism,
    NotExpansive,
    PreconditionViolated,
    ZeroEigenvalue,
)
from .poly import as_fraction

__all__ = [
    "DilationSpec",
    "DensityProfile",
    "ApproximationResult",
    "validate_dilation",
    "modular_factor",
    "dual_action",
    "lemma_detone_check",
    "density_profile",
    "approximate_in_gamma_alpha",
    "DENSE",
    "DISCRETE",
    "UNKNOWN",
]

DENSE = "Dense"
DISCRETE = "Discrete"
UNKNOWN = "Unknown"
NOT_DENSE = "NotDense"


@dataclass(frozen=True)
class DilationSpec:
    algebra: LieAlgebra
    a: tuple
    is_automorphism: bool
    violations: tuple
    is_expansive: bool
    acts_trivially_on_lambda: bool
    det_modulus: Fraction

    @property
    def n(self) -> int:
        return len(self.a)

    def require_automorphism(self) -> None:
        if not self.is_automorphism:
            bad = ", ".join(f"({i + 1},{j + 1},{k + 1})" for i, j, k in self.violations)
            raise NotAnAutomorphism(f"a_i a_j != a_k for bracket triples {bad}")

    def power(self, m: int) -> tuple:
        return tuple(x ** m for x in self.a)

    def apply(self, x: Sequence, m: int = 1) -> tuple:
        """A^m x on first-kind coordinates (also valid on second-kind ones)."""
        return tuple(f * v for f, v in zip(self.power(m), x))

    def flags(self) -> dict:
        return {
            "is_automorphism": self.is_automorphism,
            "is_expansive": self.is_expansive,
            "acts_trivially_on_lambda": self.acts_trivially_on_lambda,
            "det_modulus": str(self.det_modulus),
        }


def validate_dilation(alg: LieAlgebra, a: Sequence) -> DilationSpec:
    a = tuple(as_fraction(x) for x in a)
    if len(a) != alg.n:
        raise DimensionMismatch(f"{len(a)} eigenvalues for a {alg.n}-dimensional algebra")
    zeros = [k + 1 for k, x in enumerate(a) if x == 0]
    if zeros:
        raise ZeroEigenvalue(f"zero eigenvalue at index {zeros}")
    violations = tuple((i, j, k) for i, j, k, _ in alg.nonzero_constants() if a[i] * a[j] != a[k])
    is_aut = not violations
    trivial = False
    if is_aut:
        e = orbit_data(alg).e
        trivial = all(a[k] == 1 for k in range(alg.n) if k not in e)
    det = abs(math.prod(a, start=Fraction(1)))
    return DilationSpec(
        alg, a, is_aut, violations, all(abs(x) > 1 for x in a), trivial, det
    )


def modular_factor(spec: DilationSpec, m: int) -> Fraction:
    """delta(m) = |det A|^{-m}."""
    spec.require_automorphism()
    return spec.det_modulus ** (-m)


def dual_action(spec: DilationSpec, lam: Functional, m: int) -> Functional:
    """(A^m lambda)_k = a_k^m lambda_k."""
    spec.require_automorphism()
    return lam.scaled(spec.power(m))


def lemma_detone_check(spec: DilationSpec) -> bool:
    """A trivial action on the cross-section forces |det A| = 1."""
    spec.require_automorphism()
    if not spec.acts_trivially_on_lambda:
        raise PreconditionViolated("dilation acts non-trivially on the cross-section")
    return spec.det_modulus == 1


@dataclass(frozen=True)
class DensityProfile:
    status: tuple
    overall: str
    evidence: tuple = field(default=())

    def lines(self) -> list[str]:
        return list(self.evidence)


def density_profile(spec: DilationSpec) -> DensityProfile:
    """Coordinatewise density of Gamma_alpha (the group generated by all alpha^m(Gamma))."""
    spec.require_automorphism()
    n = spec.n
    if spec.is_expansive:
        return DensityProfile(
            (DENSE,) * n, DENSE, ("expansive: every |a_k| > 1, so Gamma_alpha is dense",)
        )
    status = [DENSE if abs(x) != 1 else None for x in spec.a]
    evidence = [f"X{k + 1}: |a_{k + 1}| = {abs(x)} != 1" for k, x in enumerate(spec.a) if abs(x) != 1]
    changed = True
    while changed:
        changed = False
        for i, j, k, _ in spec.algebra.nonzero_constants():
            if status[k] is None and (status[i] == DENSE or status[j] == DENSE):
                status[k] = DENSE
                src = i if status[i] == DENSE else j
                evidence.append(f"X{k + 1}: saturated through [X{i + 1}, X{j + 1}] with X{src + 1} dense")
                changed = True
    for k in range(n):
        if status[k] is None:
            status[k] = DISCRETE
            evidence.append(f"X{k + 1}: a_{k + 1} = {spec.a[k]} and no saturating bracket")
    overall = DENSE if all(s == DENSE for s in status) else NOT_DENSE
    return DensityProfile(tuple(status), overall, tuple(evidence))


@dataclass(frozen=True)
class ApproximationResult:
    j: tuple
    k: int
    first_kind: tuple
    error: Fraction


def _max_error(u: Sequence, v: Sequence) -> Fraction:
    return max((abs(p - q) for p, q in zip(u, v)), default=Fraction(0))


def approximate_in_gamma_alpha(
    spec: DilationSpec, x: Sequence, eps, max_extra: int = 64
) -> ApproximationResult:
    """Integers j and k <= 0 with log(alpha^k(exp j_1X_1 ... exp j_nX_n)) within eps of x.

    The target x is in first-kind coordinates.  Follows the constructive
    density argument: pick m with max |a_i|^{-m} < eps, round the scaled
    second-kind coordinates of x, then check the word exactly, raising m if
    the nonlinear coordinates need a finer grid.
    """
    spec.require_automorphism()
    if not spec.is_expansive:
        raise NotExpansive("approximation needs every |a_k| > 1")
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    alg = spec.algebra
    x = tuple(as_fraction(v) for v in x)
    t = alg.second_from_first(x)
    if all(v.denominator == 1 for v in t):
        return ApproximationResult(tuple(int(v) for v in t), 0, x, Fraction(0))
    slowest = min(abs(a) for a in spec.a)
    m = 1
    while slowest ** (-m) >= eps:
        m += 1
    for m in range(m, m + max_extra):
        scale = spec.power(m)
        j = tuple(round(v * s) for v, s in zip(t, scale))
        word = alg.first_from_second(tuple(Fraction(q) / s for q, s in zip(j, scale)))
        err = _max_error(word, x)
        if err < eps:
            return ApproximationResult(j, -m, word, err)
    raise RuntimeError("no approximation found within the search range")
