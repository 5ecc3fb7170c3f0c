"""Exact linear algebra over Q and over rational function fields Q(v_1..v_k).

Matrix entries are Fractions or Polys (a Poly stands for an element of the
fraction field of its polynomial ring).  Elimination is fraction-free
Gauss-Jordan (Bareiss): every intermediate entry is a minor of the input, so
all divisions are exact and no rational functions are ever formed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly, primitive_part

__all__ = ["ff_rref", "rank", "pivot_columns", "kernel", "Subspace", "unit_vector", "is_symbolic"]


def is_symbolic(x) -> bool:
    return isinstance(x, Poly) and not x.is_constant()


def _plain(x):
    """Constant Polys collapse to Fractions."""
    if isinstance(x, Poly) and x.is_constant():
        return x.constant_value()
    return x


def ff_rref(rows: Sequence[Sequence]):
    """Fraction-free reduced row echelon form.

    Returns (matrix, pivot_columns, pivot_value).  Every pivot entry of the
    result equals pivot_value and pivot columns are zero off the pivot row.
    """
    M = [list(r) for r in rows]
    if not M:
        return M, [], Fraction(1)
    ncols = len(M[0])
    prev = Fraction(1)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == len(M):
            break
        for i in range(r, len(M)):
            if M[i][c]:
                break
        else:
            continue
        if i != r:
            M[r], M[i] = M[i], M[r]
        p = M[r][c]
        prow = M[r]
        for i in range(len(M)):
            if i == r:
                continue
            a = M[i][c]
            row = M[i]
            if a:
                M[i] = [_plain((p * x - a * y) / prev) if (x or y) else x for x, y in zip(row, prow)]
            elif p != prev:
                M[i] = [_plain(p * x / prev) if x else x for x in row]
        prev = p
        pivots.append(c)
        r += 1
    return M, pivots, prev


def pivot_columns(rows: Sequence[Sequence]) -> list[int]:
    return ff_rref(rows)[1]


def rank(rows: Sequence[Sequence]) -> int:
    return len(ff_rref(rows)[1])


def kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of the right null space {v : rows . v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [unit_vector(ncols, k) for k in range(ncols)]
    M, pivots, D = ff_rref(rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = D
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][f]
        basis.append(tuple(_plain(x) for x in v))
    return basis


def unit_vector(n: int, k: int) -> tuple:
    return tuple(Fraction(1) if i == k else Fraction(0) for i in range(n))


def _normalize(row: Sequence) -> tuple:
    row = [_plain(x) for x in row]
    if any(isinstance(x, Poly) for x in row):
        nvars = next(x.nvars for x in row if isinstance(x, Poly))
        lifted = [x if isinstance(x, Poly) else Poly.const(nvars, x) for x in row]
        return tuple(_plain(x) for x in primitive_part(lifted))
    lead = next(x for x in row if x)
    return tuple(x / lead for x in row)


class Subspace:
    """Span of finitely many vectors, kept as a normalized reduced echelon basis.

    Over Q the basis is the usual RREF.  Over Q(v) each basis row is a
    primitive polynomial multiple of the corresponding RREF row.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        self.ambient = ambient
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        if vectors:
            M, pivots, _ = ff_rref(vectors)
            self.basis = tuple(_normalize(M[i]) for i in range(len(pivots)))
            self.pivots = tuple(pivots)
        else:
            self.basis = ()
            self.pivots = ()

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> "Subspace":
        return cls(ambient, [unit_vector(ambient, k) for k in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v: Sequence) -> bool:
        if not any(v):
            return True
        return rank(list(self.basis) + [tuple(v)]) == self.dim

    def __contains__(self, v):
        return self.contains(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def contains_space(self, other: "Subspace") -> bool:
        return rank(list(self.basis) + list(other.basis)) == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.dim == other.dim
            and self.contains_space(other)
        )

    def __hash__(self):
        return hash((self.ambient, self.dim))

    def is_symbolic(self) -> bool:
        return any(is_symbolic(x) for v in self.basis for x in v)

    def scaled(self, factors: Sequence) -> "Subspace":
        """Image under the diagonal map e_k -> factors[k] e_k."""
        return Subspace(self.ambient, [tuple(f * x for f, x in zip(factors, v)) for v in self.basis])

    def evaluate(self, point: Sequence) -> "Subspace":
        """Specialize symbolic entries at a rational point."""
        return Subspace(
            self.ambient,
            [tuple(x(point) if isinstance(x, Poly) else x for x in v) for v in self.basis],
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
