"""Rational nilpotent Lie algebras on a fixed strong Malcev basis.

Vectors are tuples of coordinates on the basis X_1..X_n (0-based internally).
Coordinates are normally Fractions, but every operation here is ring-generic,
so Poly coordinates work as well; the lattice check relies on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ValidationError
from .linalg import Subspace, unit_vector
from .poly import Poly, as_fraction

__all__ = [
    "LieAlgebra",
    "ValidationReport",
    "GroupElement",
    "bch_word_coefficients",
    "validate_algebra",
]

Vector = tuple


def _zero(n):
    return (Fraction(0),) * n


@lru_cache(maxsize=None)
def bch_word_coefficients(max_length: int) -> tuple:
    """Dynkin coefficients of right-nested brackets of words in {X, Y}.

    log(e^X e^Y) = sum over words w of coeff(w) [w_1, [w_2, ... [w_{N-1}, w_N]]].
    Words are tuples over {0: X, 1: Y}; only words of length <= max_length
    with nonzero coefficient are returned.
    """
    out = []
    for N in range(1, max_length + 1):
        for word in product((0, 1), repeat=N):
            c = _word_coefficient(word)
            if c:
                out.append((word, c))
    return tuple(out)


def _word_coefficient(word: tuple) -> Fraction:
    N = len(word)
    total = Fraction(0)

    # split into consecutive blocks, each of the shape X^r Y^s with r + s >= 1
    def splits(pos):
        if pos == N:
            yield []
            return
        xrun = 0
        while pos + xrun < N and word[pos + xrun] == 0:
            xrun += 1
        for r in range(1, xrun):
            for rest in splits(pos + r):
                yield [(r, 0)] + rest
        yrun = 0
        while pos + xrun + yrun < N and word[pos + xrun + yrun] == 1:
            yrun += 1
        for s in range(0 if xrun else 1, yrun + 1):
            for rest in splits(pos + xrun + s):
                yield [(xrun, s)] + rest

    for blocks in splits(0):
        k = len(blocks)
        denom = N
        for r, s in blocks:
            denom *= math.factorial(r) * math.factorial(s)
        total += Fraction((-1) ** (k - 1), k * denom)
    return total


@dataclass
class ValidationReport:
    triangularity_violations: list = field(default_factory=list)
    jacobi_violations: list = field(default_factory=list)
    nilpotency_class: int | None = None
    derived_dim: int = 0
    derived_is_initial_segment: bool = True

    @property
    def ok(self) -> bool:
        return not self.triangularity_violations and not self.jacobi_violations

    @property
    def warnings(self) -> list[str]:
        if self.derived_is_initial_segment:
            return []
        return ["derived algebra is not span{X_1..X_m}"]

    def lines(self) -> list[str]:
        out = []
        for i, j, k in self.triangularity_violations:
            out.append(f"triangularity violation at ({i},{j},{k})")
        for i, j, k in self.jacobi_violations:
            out.append(f"Jacobi violation at ({i},{j},{k})")
        return out


class LieAlgebra:
    """Structure constants c_{ij}^k with [X_i, X_j] = sum_k c_{ij}^k X_k (stored for i < j)."""

    def __init__(self, n: int, constants: Mapping[tuple, object], names: Sequence[str] | None = None):
        if n < 1:
            raise ValidationError("dimension must be positive")
        self.n = n
        self.names = tuple(names) if names is not None else tuple(f"X{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise DimensionMismatch("number of basis names differs from dimension")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), value in constants.items():
            value = as_fraction(value)
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise DimensionMismatch(f"index out of range in c[{i},{j},{k}]")
            if i == j:
                if value:
                    raise ValidationError("c_ii^k must vanish")
                continue
            if i > j:
                i, j, value = j, i, -value
            row = table.setdefault((i, j), {})
            if k in row and row[k] != value:
                raise ValidationError(f"conflicting values for c[{i},{j},{k}]")
            if value:
                row[k] = value
        self._table = {key: row for key, row in table.items() if row}

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping[tuple[str, str], Mapping[str, object]]):
        idx = {name: i for i, name in enumerate(names)}
        constants = {}
        for (a, b), rhs in brackets.items():
            for name, coeff in rhs.items():
                key = (idx[a], idx[b], idx[name])
                if key[0] > key[1]:
                    key = (key[1], key[0], key[2])
                    coeff = -as_fraction(coeff)
                constants[key] = as_fraction(coeff)
        return cls(len(names), constants, names)

    # structure -------------------------------------------------------------
    def constant(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self._table.get((i, j), {}).get(k, Fraction(0))
        return -self._table.get((j, i), {}).get(k, Fraction(0))

    def nonzero_constants(self) -> list[tuple[int, int, int, Fraction]]:
        return sorted((i, j, k, v) for (i, j), row in self._table.items() for k, v in row.items())

    def is_abelian(self) -> bool:
        return not self._table

    def basis_vector(self, k: int) -> Vector:
        return unit_vector(self.n, k)

    def _check(self, v):
        if len(v) != self.n:
            raise DimensionMismatch(f"expected a vector of length {self.n}, got {len(v)}")

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        self._check(x)
        self._check(y)
        out = [Fraction(0)] * self.n
        for (i, j), row in self._table.items():
            w = x[i] * y[j] - x[j] * y[i]
            if not w:
                continue
            for k, c in row.items():
                out[k] = out[k] + c * w
        return tuple(out)

    def basis_bracket(self, i: int, j: int) -> Vector:
        out = [Fraction(0)] * self.n
        for k in range(self.n):
            out[k] = self.constant(i, j, k)
        return tuple(out)

    # validation ------------------------------------------------------------
    def validate(self) -> ValidationReport:
        return validate_algebra(self)

    @cached_property
    def report(self) -> ValidationReport:
        return validate_algebra(self)

    @property
    def nilpotency_class(self) -> int:
        s = self.report.nilpotency_class
        if s is None:
            raise ValidationError("algebra is not nilpotent on this basis")
        return s

    def require_valid(self) -> None:
        rep = self.report
        if not rep.ok:
            raise ValidationError("; ".join(rep.lines()))

    def derived_subspace(self) -> Subspace:
        return Subspace(self.n, [self.basis_bracket(i, j) for (i, j) in self._table])

    # group law -------------------------------------------------------------
    def bch(self, x: Sequence, y: Sequence) -> Vector:
        """log(exp x exp y), the Dynkin series cut at the nilpotency class."""
        self._check(x)
        self._check(y)
        s = self.nilpotency_class
        if s == 1:
            return tuple(a + b for a, b in zip(x, y))
        letters = (tuple(x), tuple(y))
        memo: dict[tuple, Vector] = {}

        def nested(word):
            if len(word) == 1:
                return letters[word[0]]
            hit = memo.get(word)
            if hit is None:
                hit = self.bracket(letters[word[0]], nested(word[1:]))
                memo[word] = hit
            return hit

        out = [Fraction(0)] * self.n
        for word, coeff in bch_word_coefficients(s):
            v = nested(word)
            for k in range(self.n):
                if v[k]:
                    out[k] = out[k] + coeff * v[k]
        return tuple(out)

    def product(self, *elements: Sequence) -> Vector:
        acc = _zero(self.n)
        for e in elements:
            acc = self.bch(acc, e)
        return acc

    def inverse(self, x: Sequence) -> Vector:
        return tuple(-a for a in x)

    def first_from_second(self, t: Sequence) -> Vector:
        """log(exp t_1X_1 exp t_2X_2 ... exp t_nX_n)."""
        self._check(t)
        acc = _zero(self.n)
        for k in range(self.n):
            if t[k]:
                term = [Fraction(0)] * self.n
                term[k] = t[k]
                acc = self.bch(acc, tuple(term))
        return acc

    def second_from_first(self, x: Sequence) -> Vector:
        """Coordinates t with exp x = exp t_1X_1 ... exp t_nX_n."""
        self._check(x)
        t = [Fraction(0)] * self.n
        rest = tuple(x)
        for k in range(self.n - 1, -1, -1):
            t[k] = rest[k]
            if rest[k]:
                step = [Fraction(0)] * self.n
                step[k] = -rest[k]
                rest = self.bch(rest, tuple(step))
        return tuple(t)

    def multiply_second(self, t: Sequence, u: Sequence) -> Vector:
        return self.second_from_first(self.bch(self.first_from_second(t), self.first_from_second(u)))

    def element(self, first_kind: Sequence) -> "GroupElement":
        return GroupElement(self, tuple(first_kind))

    # lattice ---------------------------------------------------------------
    def multiplication_polynomials(self) -> tuple[Poly, ...]:
        """Second-kind coordinates of c(t) c(u) as polynomials in (t_1..t_n, u_1..u_n)."""
        n = self.n
        t = tuple(Poly.var(2 * n, i) for i in range(n))
        u = tuple(Poly.var(2 * n, n + i) for i in range(n))
        return tuple(Poly.const(2 * n, 0) + p for p in self.multiply_second(t, u))

    def lattice_closure_check(self) -> bool:
        return lattice_closure_check(self)

    def __repr__(self):
        return f"LieAlgebra(n={self.n}, names={self.names})"


@dataclass(frozen=True)
class GroupElement:
    algebra: LieAlgebra
    first_kind: tuple

    @cached_property
    def second_kind(self) -> tuple:
        return self.algebra.second_from_first(self.first_kind)

    @classmethod
    def from_second(cls, algebra: LieAlgebra, t: Sequence) -> "GroupElement":
        return cls(algebra, algebra.first_from_second(t))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.algebra, self.algebra.bch(self.first_kind, other.first_kind))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.algebra, tuple(-a for a in self.first_kind))


def _lower_central_series(alg: LieAlgebra, max_steps: int) -> int | None:
    current = Subspace.coordinate(alg.n, range(alg.n))
    for step in range(1, max_steps + 2):
        nxt = Subspace(
            alg.n,
            [alg.bracket(alg.basis_vector(i), v) for i in range(alg.n) for v in current.basis],
        )
        if nxt.dim == 0:
            return step
        if nxt.dim == current.dim:
            return None
        current = nxt
    return None


def validate_algebra(alg: LieAlgebra) -> ValidationReport:
    rep = ValidationReport()
    n = alg.n
    for i, j, k, _ in alg.nonzero_constants():
        if not k < min(i, j):
            rep.triangularity_violations.append((i + 1, j + 1, k + 1))
    zero = _zero(n)
    for i, j, k in combinations_with_replacement(range(n), 3):
        xi, xj, xk = (alg.basis_vector(a) for a in (i, j, k))
        total = [a + b + c for a, b, c in zip(
            alg.bracket(alg.bracket(xi, xj), xk),
            alg.bracket(alg.bracket(xj, xk), xi),
            alg.bracket(alg.bracket(xk, xi), xj),
        )]
        if tuple(total) != zero:
            rep.jacobi_violations.append((i + 1, j + 1, k + 1))
    rep.nilpotency_class = _lower_central_series(alg, n)
    derived = alg.derived_subspace()
    rep.derived_dim = derived.dim
    rep.derived_is_initial_segment = derived == Subspace.coordinate(n, range(derived.dim))
    return rep


def _simplex_points(nvars: int, degree: int) -> Iterable[tuple]:
    def rec(prefix, remaining, left):
        if left == 0:
            yield tuple(prefix)
            return
        for v in range(remaining + 1):
            prefix.append(v)
            yield from rec(prefix, remaining - v, left - 1)
            prefix.pop()

    yield from rec([], degree, nvars)


def is_integer_valued(p: Poly) -> bool:
    """Whether p maps Z^k into Z.

    A polynomial of total degree D is integer-valued iff its values at the
    lattice points x >= 0 with sum(x) <= D are integers: those values fix every
    forward difference at the origin, i.e. the coefficients in the binomial
    basis prod C(x_i, k_i).
    """
    if not p:
        return True
    active = sorted(p.variables())
    D = p.degree()
    point = [0] * p.nvars
    for sub in _simplex_points(len(active), D):
        for var, val in zip(active, sub):
            point[var] = val
        if as_fraction(p(point)).denominator != 1:
            return False
    return True


def lattice_closure_check(alg: LieAlgebra) -> bool:
    """Whether exp(ZX_1)...exp(ZX_n) is closed under multiplication."""
    alg.require_valid()
    return all(is_integer_valued(p) for p in alg.multiplication_polynomials())
