from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given

from orbitkit.catalog import CATALOG, abelian, free_two_step_3, gl10_two_step, heisenberg, upper_triangular_4
from orbitkit.coadjoint import (
    Functional,
    in_generic_layer,
    jump_set_of,
    orbit_data,
    pfaffian,
    pfaffian_matrix,
    radical,
    skew_form,
    vergne_polarization,
)
from orbitkit.dilation import dual_action, validate_dilation
from orbitkit.errors import NotInGenericLayer
from orbitkit.linalg import Subspace
from orbitkit.poly import Poly

from conftest import rand_vec, rational_vectors, to_sympy

ALL = {name: make() for name, make in CATALOG.items()}

# automorphisms used for the equivariance checks (one per catalog algebra)
DILATIONS = {
    "heisenberg": (6, 2, 3),
    "upper4": (1, 2, Fraction(1, 2), 2, 1, Fraction(1, 2)),
    "gl10": (2, 2, 2, 1, 1, 1, 2, 2, 2),
    "five": (4, 4, 2, 2, 2),
    "free2step3": (6, 3, 2, 3, 2, 1),
}

GOLDEN = {
    "heisenberg": ((2, 3), (3,), 1),
    "upper4": ((2, 3, 4, 6), (4, 6), 2),
    "gl10": ((4, 5, 6, 7, 8, 9), (7, 8, 9), 3),
    "five": ((3, 5), (5,), 1),
    "free2step3": ((4, 5), (5,), 1),
}


def generic_points(alg, rng, count):
    out = []
    while len(out) < count:
        lam = Functional.rational(rand_vec(rng, alg.n))
        if in_generic_layer(alg, lam) and orbit_data(alg).pfaffian(list(lam.entries)):
            out.append(lam)
    return out


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_jump_sets(name):
    od = orbit_data(ALL[name])
    e, j, d = GOLDEN[name]
    assert tuple(k + 1 for k in od.e) == e
    assert tuple(k + 1 for k in od.j) == j
    assert od.d == d == len(e) // 2


def test_small_pfaffians():
    assert orbit_data(heisenberg()).pfaffian == -Poly.var(3, 0)
    l1 = Poly.var(6, 0)
    assert orbit_data(upper_triangular_4()).pfaffian == -l1 * l1
    assert orbit_data(free_two_step_3()).pfaffian == -l1


def test_pfaffian_of_standard_blocks():
    J = [[0, 1], [-1, 0]]
    assert pfaffian(J) == 1
    M = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert pfaffian(M) == 1
    assert pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]) == 0


@given(rational_vectors(6))
def test_pfaffian_squared_is_determinant_numeric(v):
    a, b, c, d, e, f = v
    M = [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]]
    assert pfaffian(M) == a * f - b * e + c * d
    assert pfaffian(M) ** 2 == sympy.Matrix(M).det()


@pytest.mark.parametrize("name", sorted(ALL))
def test_pfaffian_squared_is_determinant_symbolic(name):
    alg = ALL[name]
    od = orbit_data(alg)
    syms = sympy.symbols(f"l1:{alg.n + 1}")
    M = pfaffian_matrix(alg, Functional.generic(alg.n), od.e)
    Ms = sympy.Matrix([[to_sympy(x if isinstance(x, Poly) else Fraction(x), syms) for x in row] for row in M])
    assert sympy.expand(Ms.det() - to_sympy(od.pfaffian, syms) ** 2) == 0


def test_gl10_pfaffian_factors():
    od = orbit_data(gl10_two_step())
    P = od.restricted_pfaffian
    l1, l2, l3 = (Poly.var(9, k) for k in range(3))
    target = (l1 - l3) * (l2 - l3) * (l1 + l2 + l3)
    q, r = P.divmod(target)
    assert not r
    assert q.is_constant() and q.constant_value() != 0


def test_upper4_measure_density():
    P = orbit_data(upper_triangular_4()).restricted_pfaffian
    l1 = Poly.var(6, 0)
    assert P == -l1 * l1


def test_free_two_step_radical():
    alg = free_two_step_3()
    lam = Functional.generic(6)
    l = lam.entries
    zero = Poly.const(6, 0)
    expected = Subspace(
        6,
        [
            (1, 0, 0, 0, 0, 0),
            (0, 1, 0, 0, 0, 0),
            (0, 0, 1, 0, 0, 0),
            (zero, zero, zero, l[2], -l[1], l[0]),
        ],
    )
    assert radical(alg, lam) == expected


@pytest.mark.parametrize("name", sorted(ALL))
def test_polarization_properties(name, rng):
    alg = ALL[name]
    od = orbit_data(alg)
    for lam in generic_points(alg, rng, 100 if alg.n <= 6 else 25):
        p = vergne_polarization(alg, lam)
        assert p.dim == alg.n - od.d
        for a, u in enumerate(p.basis):
            for v in p.basis[a:]:
                w = alg.bracket(u, v)
                assert lam(w) == 0
                assert p.contains(w)
        assert p.contains_space(radical(alg, lam))


@pytest.mark.parametrize("name", sorted(DILATIONS))
def test_polarization_equivariance(name, rng):
    alg = ALL[name]
    spec = validate_dilation(alg, DILATIONS[name])
    assert spec.is_automorphism
    inv = spec.power(-1)
    for lam in generic_points(alg, rng, 30):
        moved = dual_action(spec, lam, 1)
        assert vergne_polarization(alg, moved) == vergne_polarization(alg, lam).scaled(inv)


@pytest.mark.parametrize("name", sorted(DILATIONS))
def test_pfaffian_scaling(name, rng):
    alg = ALL[name]
    od = orbit_data(alg)
    spec = validate_dilation(alg, DILATIONS[name])
    for m in (-2, -1, 1, 2):
        factor = Fraction(1)
        for k in od.e:
            factor *= spec.a[k] ** m
        for _ in range(10):
            lam = rand_vec(rng, alg.n)
            moved = spec.apply(lam, m)
            assert od.pfaffian(list(moved)) == factor * od.pfaffian(list(lam))


def test_skew_form_is_skew(rng):
    alg = upper_triangular_4()
    for _ in range(10):
        B = skew_form(alg, Functional.rational(rand_vec(rng, 6)))
        assert all(B[i][j] == -B[j][i] for i in range(6) for j in range(6))


def test_generic_layer_rejection():
    alg = heisenberg()
    lam = Functional.rational((0, 1, 1))
    assert jump_set_of(alg, lam) == ()
    assert not in_generic_layer(alg, lam)
    with pytest.raises(NotInGenericLayer):
        vergne_polarization(alg, lam)


def test_abelian_case():
    od = orbit_data(abelian(3))
    assert od.e == () and od.j == () and od.d == 0
    assert od.pfaffian == Poly.const(3, 1)
    assert od.polarization.dim == 3


@given(rational_vectors(3))
def test_heisenberg_radical_dimension(v):
    assume(v[0] != 0)
    alg = heisenberg()
    rad = radical(alg, Functional.rational(v))
    assert rad.dim == 1 and rad.contains((1, 0, 0))


def test_mixed_and_qstruct_functionals():
    lam = Functional.mixed([1, None, Fraction(1, 2)])
    assert lam.mode == "mixed" and not lam.is_rational
    assert lam.specialize([0, 3, 0]).entries == (1, 3, Fraction(1, 2))
    q = Functional.qstruct(["s"], [(0, 1), (1, 0), (2, -1)])
    assert q.format_entry(0) == "s"
    assert q.entries[1] == 1
