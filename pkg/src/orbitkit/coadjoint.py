"""Coadjoint orbit data for a nilpotent Lie algebra on its strong Malcev basis.

A functional is given by its values lambda_k = lambda(X_k).  Values are exact
rationals, generic symbols (independent transcendentals, modelled as
polynomial variables) or Q-linear combinations of declared symbols.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import LieAlgebra
from .errors import InternalInconsistency, NotInGenericLayer
from .linalg import Subspace, kernel, pivot_columns, unit_vector
from .poly import Poly, as_fraction

__all__ = [
    "Functional",
    "OrbitData",
    "CrossSection",
    "skew_form",
    "jump_set",
    "jump_set_of",
    "chain",
    "radical",
    "vergne_polarization",
    "pfaffian",
    "pfaffian_matrix",
    "orbit_data",
    "in_generic_layer",
]

RATIONAL = "rational"
GENERIC = "generic"
MIXED = "mixed"
QSTRUCT = "qstruct"


@dataclass(frozen=True)
class Functional:
    entries: tuple
    mode: str = RATIONAL
    symbols: tuple = ()

    @classmethod
    def rational(cls, values: Sequence) -> "Functional":
        return cls(tuple(as_fraction(v) for v in values), RATIONAL)

    @classmethod
    def generic(cls, n: int) -> "Functional":
        return cls(tuple(Poly.var(n, k) for k in range(n)), GENERIC, tuple(f"λ{k + 1}" for k in range(n)))

    @classmethod
    def mixed(cls, values: Sequence) -> "Functional":
        """Entries given as rationals, or None for an independent generic symbol."""
        n = len(values)
        if all(v is None for v in values):
            return cls.generic(n)
        if all(v is not None for v in values):
            return cls.rational(values)
        entries = tuple(Poly.var(n, k) if v is None else as_fraction(v) for k, v in enumerate(values))
        return cls(entries, MIXED, tuple(f"λ{k + 1}" for k in range(n)))

    @classmethod
    def qstruct(cls, symbols: Sequence[str], rows: Sequence[Sequence]) -> "Functional":
        """rows[k] = (c_0, c_1, ..., c_r) meaning lambda_k = c_0 + sum_i c_i theta_i.

        The values 1, theta_1, ..., theta_r are declared Q-linearly independent.
        """
        r = len(symbols)
        entries = []
        for row in rows:
            if len(row) != r + 1:
                raise ValueError("each Q-structured row needs 1 + len(symbols) coefficients")
            p = Poly.linear(r, row[1:], row[0])
            entries.append(p.constant_value() if p.is_constant() else p)
        return cls(tuple(entries), QSTRUCT, tuple(symbols))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(x, Poly) for x in self.entries)

    def __call__(self, v: Sequence):
        total = Fraction(0)
        for lam, x in zip(self.entries, v):
            if lam and x:
                total = total + lam * x
        return total

    def scaled(self, factors: Sequence) -> "Functional":
        return Functional(tuple(f * x for f, x in zip(factors, self.entries)), self.mode, self.symbols)

    def specialize(self, point: Sequence) -> "Functional":
        return Functional.rational([x(point) if isinstance(x, Poly) else x for x in self.entries])

    def format_entry(self, k: int) -> str:
        x = self.entries[k]
        if isinstance(x, Poly):
            return x.format(self.symbols)
        return str(x)


def skew_form(alg: LieAlgebra, lam: Functional) -> list[list]:
    """B(lambda)_{ij} = lambda([X_i, X_j])."""
    if lam.n != alg.n:
        raise ValueError("functional and algebra dimensions differ")
    n = alg.n
    B = [[Fraction(0)] * n for _ in range(n)]
    for i, j, k, c in alg.nonzero_constants():
        v = c * lam.entries[k]
        B[i][j] = B[i][j] + v
        B[j][i] = B[j][i] - v
    return B


def jump_set_of(alg: LieAlgebra, lam: Functional) -> tuple[int, ...]:
    """Indices (0-based) where the leading row blocks of B(lambda) gain rank."""
    # B is skew, so new rows in order are exactly the pivot columns
    return tuple(pivot_columns(skew_form(alg, lam)))


def _random_point(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000)) for _ in range(n)]


def jump_set(alg: LieAlgebra, checks: int = 3, seed: int = 0) -> tuple[tuple[int, ...], int]:
    """Generic jump set e (0-based) and d = |e| / 2, cross-checked at random points."""
    e = jump_set_of(alg, Functional.generic(alg.n))
    rng = random.Random(seed)
    for _ in range(checks):
        pt = Functional.rational(_random_point(rng, alg.n))
        if jump_set_of(alg, pt) != e:
            raise InternalInconsistency("symbolic and sampled jump sets disagree")
    if len(e) % 2:
        raise InternalInconsistency("odd generic rank of a skew form")
    return e, len(e) // 2


def chain(alg: LieAlgebra, lam: Functional) -> list[Subspace]:
    """[n_1(lambda), ..., n_n(lambda)] with n_i(lambda) the radical of B restricted to n_i."""
    B = skew_form(alg, lam)
    n = alg.n
    out = []
    for i in range(1, n + 1):
        block = [row[:i] for row in B[:i]]
        vecs = kernel(block, i)
        out.append(Subspace(n, [tuple(v) + (Fraction(0),) * (n - i) for v in vecs]))
    return out


def radical(alg: LieAlgebra, lam: Functional) -> Subspace:
    B = skew_form(alg, lam)
    return Subspace(alg.n, kernel(B, alg.n))


def in_generic_layer(alg: LieAlgebra, lam: Functional) -> bool:
    return jump_set_of(alg, lam) == orbit_data(alg).e


def vergne_polarization(alg: LieAlgebra, lam: Functional, check_layer: bool = True) -> Subspace:
    """Sum of the chain n_i(lambda); the result is verified to be an isotropic subalgebra of dim n - d."""
    if check_layer:
        od = orbit_data(alg)
        if jump_set_of(alg, lam) != od.e:
            raise NotInGenericLayer("jump set of the functional differs from the generic one")
        d = od.d
    else:
        d = len(jump_set_of(alg, lam)) // 2
    p = Subspace(alg.n, [v for sub in chain(alg, lam) for v in sub.basis])
    _verify_polarization(alg, lam, p, d)
    return p


def _verify_polarization(alg, lam, p: Subspace, d: int) -> None:
    if p.dim != alg.n - d:
        raise InternalInconsistency(f"polarization has dimension {p.dim}, expected {alg.n - d}")
    for a, u in enumerate(p.basis):
        for v in p.basis[a + 1:]:
            w = alg.bracket(u, v)
            if lam(w):
                raise InternalInconsistency("polarization is not isotropic")
            if not p.contains(w):
                raise InternalInconsistency("polarization is not a subalgebra")


def pfaffian(M: Sequence[Sequence]):
    """Pfaffian by expansion along the first row (perfect-matching recursion)."""
    size = len(M)
    if size == 0:
        return Fraction(1)
    if size % 2:
        return Fraction(0)
    total = Fraction(0)
    for j in range(1, size):
        if not M[0][j]:
            continue
        idx = [k for k in range(1, size) if k != j]
        sub = [[M[a][b] for b in idx] for a in idx]
        term = M[0][j] * pfaffian(sub)
        total = total + term if j % 2 else total - term
    return total


def pfaffian_matrix(alg: LieAlgebra, lam: Functional, e: Sequence[int]) -> list[list]:
    B = skew_form(alg, lam)
    return [[B[a][b] for b in e] for a in e]


@dataclass(frozen=True)
class CrossSection:
    """Lambda = {lambda : lambda_k = 0 for k in e, P(lambda) != 0}."""

    n: int
    zero_coords: tuple
    free_coords: tuple
    pfaffian: Poly

    def contains(self, lam: Sequence) -> bool:
        if any(lam[k] for k in self.zero_coords):
            return False
        return bool(self.pfaffian(list(lam)))

    def restricted_pfaffian(self) -> Poly:
        return self.pfaffian.substitute({k: 0 for k in self.zero_coords})


@dataclass(frozen=True)
class OrbitData:
    n: int
    e: tuple
    j: tuple
    d: int
    pfaffian: Poly
    polarization: Subspace = field(compare=False)
    cross_section: CrossSection = field(compare=False)

    @property
    def lambda_coords(self) -> tuple:
        return self.cross_section.free_coords

    @property
    def restricted_pfaffian(self) -> Poly:
        return self.cross_section.restricted_pfaffian()

    def omega_descriptor(self) -> str:
        e1 = ",".join(str(k + 1) for k in self.e)
        return f"jump set = {{{e1}}} and P(λ) != 0"


@lru_cache(maxsize=64)
def orbit_data(alg: LieAlgebra) -> OrbitData:
    alg.require_valid()
    n = alg.n
    e, d = jump_set(alg)
    gen = Functional.generic(n)
    if d == 0:
        p = Subspace.coordinate(n, range(n))
        j: tuple = ()
        P = Poly.const(n, 1)
    else:
        p = vergne_polarization(alg, gen, check_layer=False)
        j = tuple(
            k for k in e
            if not (p + Subspace.coordinate(n, range(k))).contains(unit_vector(n, k))
        )
        if len(j) != d:
            raise InternalInconsistency(f"|j| = {len(j)} but d = {d}")
        P = pfaffian(pfaffian_matrix(alg, gen, e))
        if not isinstance(P, Poly):
            P = Poly.const(n, P)
    free = tuple(k for k in range(n) if k not in e)
    return OrbitData(n, e, j, d, P, p, CrossSection(n, e, free, P))


@lru_cache(maxsize=4096)
def polarization_at(alg: LieAlgebra, entries: tuple) -> Subspace:
    """Cached polarization at a rational functional."""
    return vergne_polarization(alg, Functional.rational(entries))
