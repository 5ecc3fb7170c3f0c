import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from orbitkit.catalog import abelian, five_dim, free_two_step_3, gl10_two_step, heisenberg
from orbitkit.dilation import validate_dilation
from orbitkit.errors import NotInGenericLayer
from orbitkit.induced_rep import (
    PHASE_SIGN,
    GaussianSum,
    InducedRep,
    _adaptive_norm2,
    dilation_operator,
    intertwiner_C,
    random_rational,
    verify_conjugation,
    verify_group_law,
    verify_homomorphism,
    verify_intertwining,
    verify_unitarity,
)

TOL = 1e-9


def e2pi(x) -> complex:
    return cmath.exp(2j * math.pi * float(x))


def one_param(n, k, s):
    v = [Fraction(0)] * n
    v[k] = s
    return tuple(v)


def check(rep, y, f, t, expected):
    got = rep.evaluate(y, f, t)
    assert abs(got - expected) < TOL, (y, t, got, expected)


def test_phase_sign_is_frozen():
    assert PHASE_SIGN == -1


def test_heisenberg_closed_form():
    rng = np.random.default_rng(1)
    alg = heisenberg()
    for _ in range(100):
        lam = random_rational(rng, 1)[0] or Fraction(1)
        rep = InducedRep(alg, (lam, 0, 0))
        f = GaussianSum.random(1, rng)
        (t,) = random_rational(rng, 1)
        x1, x2, x3 = random_rational(rng, 3)
        check(rep, one_param(3, 0, x1), f, (t,), e2pi(lam * x1) * f((t,)))
        check(rep, one_param(3, 1, x2), f, (t,), e2pi(-lam * x2 * t) * f((t,)))
        check(rep, one_param(3, 2, x3), f, (t,), f((t - x3,)))


def test_five_dim_closed_form():
    rng = np.random.default_rng(2)
    alg = five_dim()
    for _ in range(100):
        l1, l2, b2 = random_rational(rng, 3)
        l1 = l1 or Fraction(1)
        rep = InducedRep(alg, (l1, l2, 0, b2, 0))
        f = GaussianSum.random(1, rng)
        (y,) = random_rational(rng, 1)
        x1, x2, s, z1, z2 = random_rational(rng, 5)
        pt = (y,)
        check(rep, one_param(5, 2, x1), f, pt, e2pi(x1 * y * l1) * f(pt))
        check(rep, one_param(5, 3, x2), f, pt, e2pi(x2 * (b2 + y * l2)) * f(pt))
        check(rep, one_param(5, 4, s), f, pt, f((y - s,)))
        check(rep, one_param(5, 0, z1), f, pt, e2pi(z1 * l1) * f(pt))
        check(rep, one_param(5, 1, z2), f, pt, e2pi(z2 * l2) * f(pt))


def test_gl10_closed_form():
    rng = np.random.default_rng(3)
    alg = gl10_two_step()
    z = [Fraction(0)] * 3
    done = 0
    while done < 100:
        l1, l2, l3 = random_rational(rng, 3)
        if (l1 - l3) * (l2 - l3) * (l1 + l2 + l3) == 0:
            continue
        rep = InducedRep(alg, (l1, l2, l3, 0, 0, 0, 0, 0, 0))
        f = GaussianSum.random(3, rng)
        x = random_rational(rng, 3)
        t = random_rational(rng, 3)
        t1, t2, t3 = t
        # X block translates
        check(rep, tuple(z + z + list(t)), f, x, f(tuple(a - b for a, b in zip(x, t))))
        # Y block multiplies by a linear phase in x
        M = (
            l1 * t1 + l2 * t2 + l3 * t3,
            l2 * t1 + l2 * t3 + l3 * t2,
            l1 * t2 + l1 * t3 + l3 * t1,
        )
        phase = -sum(m * xi for m, xi in zip(M, x))
        check(rep, tuple(z + list(t) + z), f, x, e2pi(phase) * f(x))
        # Z block is central
        check(rep, tuple(list(t) + z + z), f, x, e2pi(l1 * t1 + l2 * t2 + l3 * t3) * f(x))
        done += 1


def test_factorization_lands_in_polarization():
    alg = free_two_step_3()
    rep = InducedRep(alg, (1, 2, 3, 0, 0, 0))
    rng = np.random.default_rng(4)
    for _ in range(20):
        y = random_rational(rng, 6)
        t = random_rational(rng, 1)
        t_new, p = rep.factorize(y, t)
        assert rep.polarization.contains(p)
        assert alg.bch(rep.n_of(t_new), p) == alg.bch(alg.inverse(y), rep.n_of(t))


def test_rejects_non_generic_lambda():
    with pytest.raises(NotInGenericLayer):
        InducedRep(heisenberg(), (0, 1, 0))


@pytest.mark.parametrize(
    "alg,lam",
    [
        (heisenberg(), (Fraction(3, 2), 0, 0)),
        (five_dim(), (1, Fraction(1, 2), 0, 2, 0)),
        (gl10_two_step(), (1, Fraction(1, 2), Fraction(2, 3), 0, 0, 0, 0, 0, 0)),
        (free_two_step_3(), (1, 1, 1, 0, 0, 0)),
    ],
)
def test_homomorphism(alg, lam):
    assert verify_homomorphism(alg, lam, 50, seed=5).max_error < TOL


def test_intertwiner_examples():
    rng = np.random.default_rng(6)
    f = GaussianSum.random(1, rng)
    ident = validate_dilation(heisenberg(), (2, 2, 1))
    expand = validate_dilation(heisenberg(), (4, 2, 2))
    for t in random_rational(rng, 10):
        assert abs(intertwiner_C(ident, 1, f)((t,)) - f((t,))) < TOL
        assert abs(intertwiner_C(expand, 1, f)((t,)) - math.sqrt(2) * f((2 * t,))) < TOL


def test_line_dilation():
    spec = validate_dilation(abelian(1), (2,))
    rng = np.random.default_rng(7)
    f = GaussianSum.random(1, rng)
    for x in random_rational(rng, 10):
        assert abs(dilation_operator(spec, 1, f)((x,)) - math.sqrt(2) * f((2 * x,))) < TOL


@pytest.mark.parametrize(
    "alg,a,lam",
    [
        (heisenberg(), (4, 2, 2), (1, 0, 0)),
        (heisenberg(), (2, 2, 1), (Fraction(-1, 3), 0, 0)),
        (five_dim(), (4, 4, 2, 2, 2), (1, 2, 0, Fraction(1, 2), 0)),
        (free_two_step_3(), (2, 2, 1, 2, 1, 1), (1, 1, 1, 0, 0, 0)),
    ],
)
@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_intertwining(alg, a, lam, m):
    spec = validate_dilation(alg, a)
    assert verify_intertwining(spec, lam, m, 30, seed=8).max_error < TOL


@pytest.mark.parametrize("a", [(4, 2, 2), (2, 2, 1), (1, Fraction(1, 2), 2)])
def test_wavelet_identities(a):
    spec = validate_dilation(heisenberg(), a)
    assert verify_group_law(spec, 50, seed=9).max_error < TOL
    assert verify_conjugation(spec, 50, seed=10).max_error < TOL


@pytest.mark.parametrize("alg,a", [(heisenberg(), (4, 2, 2)), (abelian(1), (2,)), (heisenberg(), (2, 2, 1))])
def test_unitarity(alg, a):
    spec = validate_dilation(alg, a)
    f = GaussianSum.random(alg.n, np.random.default_rng(11))
    res = verify_unitarity(spec, f, 1)
    assert res.max_error < 1e-3
    assert "budget" not in res.name


def test_quadrature_detects_wrong_normalization():
    spec = validate_dilation(abelian(1), (2,))
    f = GaussianSum.bump(1)
    g = dilation_operator(spec, 1, f)
    nf, _ = _adaptive_norm2(f.batch, f.box(), 1e-9, 10**5)
    ng, _ = _adaptive_norm2(lambda p: g.batch(p) / math.sqrt(2), [(-4.0, 4.0)], 1e-9, 10**5)
    assert abs(math.sqrt(ng) - math.sqrt(nf)) > 0.1
    assert abs(nf - math.sqrt(math.pi)) < 1e-9  # integral of exp(-x^2)
