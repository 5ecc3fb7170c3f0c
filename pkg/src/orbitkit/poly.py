"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in Q[v_1, ..., v_k] for a fixed number of variables k and
is stored as a dict mapping exponent tuples to nonzero Fractions.  Names of
the variables are not part of the value; they are supplied when formatting.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = ["Poly", "as_fraction", "poly_gcd", "primitive_part"]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != nvars:
                    raise ValueError("exponent length does not match nvars")
                coeff = as_fraction(coeff)
                if coeff:
                    clean[tuple(exp)] = coeff
        self.terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        value = as_fraction(value)
        return cls(nvars, {(0,) * nvars: value} if value else None)

    @classmethod
    def var(cls, nvars: int, index: int) -> "Poly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def linear(cls, nvars: int, coeffs: Sequence, constant=0) -> "Poly":
        terms = {(0,) * nvars: as_fraction(constant)}
        for i, c in enumerate(coeffs):
            exp = [0] * nvars
            exp[i] = 1
            terms[tuple(exp)] = as_fraction(c)
        return cls(nvars, terms)

    # predicates -----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Exact division; raises ArithmeticError if the quotient is not a polynomial."""
        if not isinstance(other, Poly):
            c = as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero polynomial")
            return Poly._raw(self.nvars, {e: v / c for e, v in self.terms.items()})
        return self.exquo(other)

    def __rtruediv__(self, other):
        return Poly.const(self.nvars, other).exquo(self)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # division -------------------------------------------------------------
    def leading(self) -> tuple[tuple, Fraction]:
        """Leading term in lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by one polynomial (lex order)."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading()
        p = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while p:
            e = max(p)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                q[qe] = q.get(qe, 0) + qc
                for de, dc in divisor.terms.items():
                    te = tuple(a + b for a, b in zip(qe, de))
                    s = p.get(te, 0) - qc * dc
                    if s:
                        p[te] = s
                    else:
                        p.pop(te, None)
            else:
                r[e] = c
                del p[e]
        return Poly(self.nvars, q), Poly._raw(self.nvars, r)

    def exquo(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # evaluation -----------------------------------------------------------
    def __call__(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def substitute(self, values: Mapping[int, object]) -> "Poly":
        """Replace selected variables by constants or by polynomials in the same ring."""
        out = Poly(self.nvars)
        for e, c in self.terms.items():
            term = Poly._raw(self.nvars, {tuple(0 if i in values else k for i, k in enumerate(e)): c})
            for i, k in enumerate(e):
                if k and i in values:
                    term = term * (values[i] ** k if isinstance(values[i], Poly) else as_fraction(values[i]) ** k)
            out = out + term
        return out

    def scale_variables(self, factors: Sequence) -> "Poly":
        """p(f_1 v_1, ..., f_k v_k) for rational factors f_i."""
        out = {}
        for e, c in self.terms.items():
            for f, k in zip(factors, e):
                if k:
                    c = c * as_fraction(f) ** k
            out[e] = c
        return Poly(self.nvars, out)

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        from math import gcd, lcm

        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    # formatting -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Fraction, tuple]]:
        """(coefficient, exponent) pairs in graded lexicographic order, highest first."""
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        return [(self.terms[e], e) for e in keys]

    def to_sparse(self) -> list[list]:
        return [[str(c), list(e)] for c, e in self.sorted_terms()]

    @classmethod
    def from_sparse(cls, nvars: int, data: Iterable) -> "Poly":
        return cls(nvars, {tuple(e): Fraction(c) for c, e in data})

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"v{i + 1}" for i in range(self.nvars)]
        pieces = []
        for c, e in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.format()})"


def _to_sympy(p: Poly, gens):
    import sympy

    return sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()} or {(0,) * p.nvars: 0}, *gens, domain="QQ")


def poly_gcd(polys: Sequence[Poly]) -> Poly:
    """Monic-normalized gcd of several polynomials (zero polynomials ignored)."""
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("gcd of zero polynomials")
    nvars = polys[0].nvars
    if all(p.is_constant() for p in polys) or nvars == 0:
        return Poly.const(nvars, 1)
    import sympy

    gens = sympy.symbols(f"v0:{nvars}")
    g = _to_sympy(polys[0], gens)
    for p in polys[1:]:
        if g.is_ground:
            break
        g = g.gcd(_to_sympy(p, gens))
    out = Poly(nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in g.as_dict().items()})
    _, lc = out.leading()
    return out / lc


def primitive_part(polys: Sequence[Poly]) -> list[Poly]:
    """Divide a vector of polynomials by the gcd of its entries, leading entry made monic."""
    nonzero = [p for p in polys if p]
    if not nonzero:
        return list(polys)
    g = poly_gcd(nonzero)
    out = [p / g if p else p for p in polys]
    _, lc = out[next(i for i, p in enumerate(out) if p)].leading()
    return [p / lc for p in out]
