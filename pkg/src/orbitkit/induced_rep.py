"""Pointwise model of the induced representations pi_lambda and of the wavelet operators.

pi_lambda acts on functions of t in R^d, identified with n(t) = exp(t_1 X_{j_1}) ... exp(t_d X_{j_d}).
For y in N we factor y^{-1} n(t) = n(t') exp(p) with p in the polarization and set

    (pi_lambda(y) f)(t) = exp(-2 pi i lambda(p)) f(t').

Group elements, t, t' and lambda(p) are exact rationals; only the final
exponential and the test function are evaluated in floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .algebra import GroupElement, LieAlgebra
from .coadjoint import Functional, jump_set_of, orbit_data, polarization_at
from .dilation import DilationSpec
from .errors import FactorizationFailed, NotInGenericLayer
from .linalg import Subspace
from .poly import as_fraction

__all__ = [
    "TestFunction",
    "GaussianSum",
    "InducedRep",
    "factorize",
    "evaluate_pi",
    "intertwiner_C",
    "verify_intertwining",
    "verify_homomorphism",
    "translation",
    "dilation_operator",
    "wavelet_operator",
    "wavelet_product",
    "verify_group_law",
    "verify_conjugation",
    "verify_unitarity",
    "PHASE_SIGN",
]

# Sign in front of 2 pi i lambda(p).  Calibrated once against the closed-form
# Heisenberg formulas; no flip turned out to be needed.
PHASE_SIGN = -1


def _phase(value: Fraction) -> complex:
    frac = value - math.floor(value)
    return cmath.exp(PHASE_SIGN * 2j * math.pi * float(frac))


def _vec(x: Sequence) -> tuple:
    return tuple(as_fraction(v) for v in x)


# test functions -----------------------------------------------------------------------

class TestFunction:
    """A callable R^k -> C evaluated at exact rational points."""

    __test__ = False  # keep pytest from collecting this class

    def __init__(self, dim: int, fn: Callable[[tuple], complex]):
        self.dim = dim
        self._fn = fn

    def __call__(self, point: Sequence) -> complex:
        return self._fn(tuple(point))

    def batch(self, points: np.ndarray) -> np.ndarray:
        return np.array([self._fn(tuple(Fraction(float(v)) for v in p)) for p in points], dtype=complex)


@dataclass(frozen=True)
class GaussianSum(TestFunction):
    """sum_i c_i prod_k x_k^{e_ik} exp(-(x_k - mu_ik)^2 / (2 sigma_ik^2))."""

    terms: tuple  # (coeff, centers, widths, exponents)

    @classmethod
    def bump(cls, dim: int, center=None, width=1.0, coeff=1.0, exponents=None) -> "GaussianSum":
        center = tuple(center) if center is not None else (0.0,) * dim
        widths = tuple(width) if isinstance(width, (tuple, list)) else (float(width),) * dim
        exps = tuple(exponents) if exponents is not None else (0,) * dim
        return cls(((complex(coeff), tuple(map(float, center)), tuple(map(float, widths)), exps),))

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator, count: int = 2) -> "GaussianSum":
        terms = []
        for _ in range(count):
            c = complex(rng.normal(), rng.normal())
            mu = tuple(float(v) for v in rng.uniform(-1, 1, dim))
            sig = tuple(float(v) for v in rng.uniform(0.6, 1.4, dim))
            exps = tuple(int(v) for v in rng.integers(0, 2, dim))
            terms.append((c, mu, sig, exps))
        return cls(tuple(terms))

    @property
    def dim(self) -> int:
        return len(self.terms[0][1])

    def __call__(self, point: Sequence) -> complex:
        return complex(self.batch(np.asarray([[float(v) for v in point]], dtype=float))[0])

    def batch(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(len(points), dtype=complex)
        for c, mu, sig, exps in self.terms:
            z = (points - np.asarray(mu)) / np.asarray(sig)
            val = np.exp(-0.5 * np.sum(z * z, axis=1))
            for k, e in enumerate(exps):
                if e:
                    val = val * points[:, k] ** e
            out += c * val
        return out

    def box(self, tail: float = 7.0) -> list[tuple[float, float]]:
        """Per-coordinate interval outside of which every term is below exp(-tail^2/2) relative."""
        dim = self.dim
        lo = [min(mu[k] - (tail + 1) * s[k] for _, mu, s, _ in self.terms) for k in range(dim)]
        hi = [max(mu[k] + (tail + 1) * s[k] for _, mu, s, _ in self.terms) for k in range(dim)]
        return list(zip(lo, hi))


# induced representation ---------------------------------------------------------------

class InducedRep:
    """pi_lambda for a rational lambda in the generic layer."""

    def __init__(self, alg: LieAlgebra, lam: Sequence):
        self.algebra = alg
        self.lam = _vec(lam)
        self.orbit = orbit_data(alg)
        functional = Functional.rational(self.lam)
        if jump_set_of(alg, functional) != self.orbit.e:
            raise NotInGenericLayer("jump set of lambda differs from the generic one")
        if not self.orbit.pfaffian(list(self.lam)):
            raise NotInGenericLayer("Pfaffian vanishes at lambda")
        self.polarization: Subspace = polarization_at(alg, self.lam)
        self.j = self.orbit.j
        self._solver = self._highest_index_basis()

    @property
    def d(self) -> int:
        return len(self.j)

    def _highest_index_basis(self) -> dict[int, tuple]:
        """For each index k: X_k if k is in j, else the polarization vector whose last nonzero
        coordinate is k (normalized to 1 there)."""
        n = self.algebra.n
        rev = Subspace(n, [tuple(reversed(v)) for v in self.polarization.basis])
        basis = {}
        for v, piv in zip(rev.basis, rev.pivots):
            basis[n - 1 - piv] = tuple(reversed(v))
        for k in self.j:
            if k in basis:
                raise FactorizationFailed(f"X{k + 1} lies in the polarization modulo lower terms")
            basis[k] = None
        if len(basis) != n:
            raise FactorizationFailed("polarization and cross-section directions do not fill the flag")
        return basis

    def lam_of(self, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.lam, v) if a and b), Fraction(0))

    def n_of(self, t: Sequence) -> tuple:
        """log n(t)."""
        alg = self.algebra
        acc = (Fraction(0),) * alg.n
        for k, tk in zip(self.j, t):
            if tk:
                step = [Fraction(0)] * alg.n
                step[k] = as_fraction(tk)
                acc = alg.bch(acc, tuple(step))
        return acc

    def _assemble(self, unknowns: dict[int, Fraction]) -> tuple:
        """log(n(t') exp(p)) for t', p read off the unknowns."""
        alg = self.algebra
        n = alg.n
        t = [unknowns.get(k, Fraction(0)) for k in self.j]
        p = [Fraction(0)] * n
        for k, u in self._solver.items():
            if u is not None and unknowns.get(k):
                s = unknowns[k]
                for i in range(n):
                    if u[i]:
                        p[i] += s * u[i]
        return alg.bch(self.n_of(t), tuple(p)), tuple(t), tuple(p)

    def factorize(self, y: Sequence, t: Sequence) -> tuple[tuple, tuple]:
        """(t', p) with y^{-1} n(t) = n(t') exp(p) and p in the polarization."""
        alg = self.algebra
        y = _vec(y.first_kind if isinstance(y, GroupElement) else y)
        t = _vec(t)
        g = alg.bch(alg.inverse(y), self.n_of(t))
        unknowns: dict[int, Fraction] = {}
        # coordinate k of n(t')exp(p) is unknown_k plus terms in higher unknowns only
        for k in range(alg.n - 1, -1, -1):
            unknowns[k] = Fraction(0)
            current = self._assemble(unknowns)[0]
            unknowns[k] = g[k] - current[k]
        x, t_new, _ = self._assemble(unknowns)
        if x != g:
            raise FactorizationFailed("triangular solve did not reproduce y^-1 n(t)")
        p = alg.bch(alg.inverse(self.n_of(t_new)), g)
        if not self.polarization.contains(p):
            raise FactorizationFailed("residual is not in the polarization")
        return t_new, p

    def evaluate(self, y: Sequence, f: Callable, t: Sequence) -> complex:
        t_new, p = self.factorize(y, t)
        return _phase(self.lam_of(p)) * f(t_new)

    def apply(self, y: Sequence, f: Callable) -> TestFunction:
        return TestFunction(self.d, lambda t: self.evaluate(y, f, t))


def factorize(alg: LieAlgebra, lam: Sequence, y: Sequence, t: Sequence):
    return InducedRep(alg, lam).factorize(y, t)


def evaluate_pi(alg: LieAlgebra, lam: Sequence, y: Sequence, f: Callable, t: Sequence) -> complex:
    return InducedRep(alg, lam).evaluate(y, f, t)


def intertwiner_C(spec: DilationSpec, m: int, f: Callable) -> TestFunction:
    """C(alpha^m) g(t) = g(a_{j_1}^m t_1, ..., a_{j_d}^m t_d) |a_{j_1} ... a_{j_d}|^{m/2}."""
    spec.require_automorphism()
    j = orbit_data(spec.algebra).j
    scale = tuple(spec.a[k] ** m for k in j)
    norm = math.sqrt(float(abs(math.prod(scale, start=Fraction(1)))))
    return TestFunction(len(j), lambda t: norm * f(tuple(s * as_fraction(x) for s, x in zip(scale, t))))


# sampling helpers ---------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, size: int, bound: int = 2, denom: int = 8) -> tuple:
    return tuple(Fraction(int(v), denom) for v in rng.integers(-bound * denom, bound * denom + 1, size))


def random_generic_lambda(alg: LieAlgebra, rng: np.random.Generator, bound: int = 3) -> tuple:
    """Random rational point of the cross-section with non-vanishing Pfaffian."""
    od = orbit_data(alg)
    while True:
        lam = list(random_rational(rng, alg.n, bound, 4))
        for k in od.e:
            lam[k] = Fraction(0)
        if od.pfaffian(lam):
            return tuple(lam)


@dataclass
class Discrepancy:
    name: str
    max_error: float
    samples: int
    seed: int
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.threshold


def verify_intertwining(
    spec: DilationSpec, lam: Sequence, m: int, samples: int = 100, seed: int = 0
) -> Discrepancy:
    """max |C(alpha^m) pi_lambda(y) f - pi_{A^m lambda}(alpha^{-m} y) C(alpha^m) f|.

    The right-hand representation is evaluated at alpha^{-m}(y); written as
    pi_{A^m lambda} o alpha^{-m} this is the usual equivalence
    pi_lambda ~ pi_{A^m lambda} o alpha^{-m}.
    """
    alg = spec.algebra
    lam = _vec(lam)
    lam_m = tuple(a ** m * x for a, x in zip(spec.a, lam))
    left_rep = InducedRep(alg, lam)
    right_rep = InducedRep(alg, lam_m)
    rng = _rng(seed)
    worst = 0.0
    for _ in range(samples):
        f = GaussianSum.random(left_rep.d, rng)
        y = random_rational(rng, alg.n)
        t = random_rational(rng, left_rep.d)
        lhs = intertwiner_C(spec, m, left_rep.apply(y, f))(t)
        rhs = right_rep.evaluate(spec.apply(y, -m), intertwiner_C(spec, m, f), t)
        worst = max(worst, abs(lhs - rhs))
    return Discrepancy(f"intertwining m={m}", worst, samples, seed, 1e-9)


def verify_homomorphism(alg: LieAlgebra, lam: Sequence, samples: int = 100, seed: int = 0) -> Discrepancy:
    """max |pi(y1 y2) f - pi(y1) pi(y2) f| at random rational samples."""
    rep = InducedRep(alg, lam)
    rng = _rng(seed)
    worst = 0.0
    for _ in range(samples):
        f = GaussianSum.random(rep.d, rng)
        y1 = random_rational(rng, alg.n)
        y2 = random_rational(rng, alg.n)
        t = random_rational(rng, rep.d)
        lhs = rep.evaluate(alg.bch(y1, y2), f, t)
        rhs = rep.evaluate(y1, rep.apply(y2, f), t)
        worst = max(worst, abs(lhs - rhs))
    return Discrepancy("homomorphism", worst, samples, seed, 1e-9)


# wavelet operators on functions of N ----------------------------------------------------

def translation(alg: LieAlgebra, x: Sequence, f: Callable) -> TestFunction:
    """(T_x f)(y) = f(x^{-1} y)."""
    x = _vec(x)
    return TestFunction(alg.n, lambda y: f(alg.bch(alg.inverse(x), _vec(y))))


def dilation_operator(spec: DilationSpec, m: int, f: Callable) -> TestFunction:
    """(D^m f)(x) = |det A|^{m/2} f(alpha^m x)."""
    spec.require_automorphism()
    norm = math.sqrt(float(spec.det_modulus ** m))
    scale = spec.power(m)

    def g(x):
        return norm * f(tuple(s * as_fraction(v) for s, v in zip(scale, x)))

    out = TestFunction(spec.n, g)

    def batch(points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float) * np.asarray([float(s) for s in scale])
        return norm * f.batch(pts)

    out.batch = batch
    return out


def wavelet_operator(spec: DilationSpec, x: Sequence, m: int, f: Callable) -> TestFunction:
    """V(x, alpha^m) f = T_x D^m f."""
    return translation(spec.algebra, x, dilation_operator(spec, m, f))


def wavelet_product(spec: DilationSpec, g1: tuple, g2: tuple) -> tuple:
    """(x1, m1)(x2, m2) = (x1 alpha^{-m1}(x2), m1 + m2)."""
    (x1, m1), (x2, m2) = g1, g2
    return spec.algebra.bch(_vec(x1), spec.apply(_vec(x2), -m1)), m1 + m2


def verify_group_law(spec: DilationSpec, samples: int = 100, seed: int = 0) -> Discrepancy:
    rng = _rng(seed)
    n = spec.n
    worst = 0.0
    for _ in range(samples):
        f = GaussianSum.random(n, rng)
        g1 = (random_rational(rng, n), int(rng.integers(-2, 3)))
        g2 = (random_rational(rng, n), int(rng.integers(-2, 3)))
        z = random_rational(rng, n)
        lhs = wavelet_operator(spec, *g1, wavelet_operator(spec, *g2, f))(z)
        rhs = wavelet_operator(spec, *wavelet_product(spec, g1, g2), f)(z)
        worst = max(worst, abs(lhs - rhs))
    return Discrepancy("wavelet group law", worst, samples, seed, 1e-9)


def verify_conjugation(spec: DilationSpec, samples: int = 100, seed: int = 0) -> Discrepancy:
    """D T_gamma D^{-1} = T_{alpha^{-1}(gamma)}."""
    alg = spec.algebra
    rng = _rng(seed)
    worst = 0.0
    for _ in range(samples):
        f = GaussianSum.random(spec.n, rng)
        gamma = random_rational(rng, spec.n)
        z = random_rational(rng, spec.n)
        lhs = dilation_operator(spec, 1, translation(alg, gamma, dilation_operator(spec, -1, f)))(z)
        rhs = translation(alg, spec.apply(gamma, -1), f)(z)
        worst = max(worst, abs(lhs - rhs))
    return Discrepancy("dilation conjugation", worst, samples, seed, 1e-9)


def _gauss_legendre_norm2(fn, box, panels: int, order: int, chunk: int = 200_000) -> float:
    """Composite tensor Gauss-Legendre estimate of the integral of |fn|^2 over a box."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    axes, axis_w = [], []
    for lo, hi in box:
        edges = np.linspace(lo, hi, panels + 1)
        half = (edges[1:] - edges[:-1]) / 2
        mid = (edges[1:] + edges[:-1]) / 2
        axes.append((mid[:, None] + half[:, None] * nodes[None, :]).ravel())
        axis_w.append((half[:, None] * weights[None, :]).ravel())
    grids = np.meshgrid(*axes, indexing="ij")
    wgrid = np.ones_like(grids[0])
    for k, w in enumerate(axis_w):
        shape = [1] * len(box)
        shape[k] = len(w)
        wgrid = wgrid * w.reshape(shape)
    pts = np.stack([g.ravel() for g in grids], axis=1)
    wts = wgrid.ravel()
    total = 0.0
    for s in range(0, len(pts), chunk):
        vals = fn(pts[s:s + chunk])
        total += float(np.sum(wts[s:s + chunk] * np.abs(vals) ** 2))
    return total


def _adaptive_norm2(fn, box, tol: float, max_points: int) -> tuple[float, bool]:
    """Raise the Gauss-Legendre order (factor 1.5) until two estimates agree to tol, within budget."""
    order = 12
    prev = _gauss_legendre_norm2(fn, box, 1, order)
    while int(order * 1.5) ** len(box) <= max_points:
        order = int(order * 1.5)
        cur = _gauss_legendre_norm2(fn, box, 1, order)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return cur, True
        prev = cur
    return prev, False


def verify_unitarity(
    spec: DilationSpec, f: GaussianSum, m: int = 1, max_points: int = 4_000_000
) -> Discrepancy:
    """| ||D^m f|| - ||f|| | by adaptive tensor Gauss-Legendre quadrature.

    Each function is integrated over a box holding its mass; the box for D^m f
    is padded so that its nodes are not the image of those used for f.
    """
    spec.require_automorphism()
    g = dilation_operator(spec, m, f)
    box_f = f.box()
    scale = [float(abs(a)) for a in spec.power(m)]
    box_g = [(1.1 * lo / s, 1.1 * hi / s) for (lo, hi), s in zip(box_f, scale)]
    nf, ok_f = _adaptive_norm2(f.batch, box_f, 1e-9, max_points)
    ng, ok_g = _adaptive_norm2(g.batch, box_g, 1e-9, max_points)
    name = f"unitarity of D^{m}" + ("" if ok_f and ok_g else " (quadrature budget reached)")
    return Discrepancy(name, abs(math.sqrt(ng) - math.sqrt(nf)), 1, 0, 1e-3)
