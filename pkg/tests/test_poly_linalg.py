from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from orbitkit.linalg import Subspace, ff_rref, kernel, rank
from orbitkit.poly import Poly, poly_gcd, primitive_part

from conftest import rationals, to_sympy

X, Y, Z = sympy.symbols("v0:3")


def small_polys(nvars=3):
    terms = st.dictionaries(
        st.tuples(*[st.integers(0, 2) for _ in range(nvars)]), rationals(4, 4), max_size=4
    )
    return terms.map(lambda t: Poly(nvars, t))


@given(small_polys(), small_polys())
def test_ring_operations_match_sympy(p, q):
    syms = (X, Y, Z)
    assert sympy.expand(to_sympy(p + q, syms) - (to_sympy(p, syms) + to_sympy(q, syms))) == 0
    assert sympy.expand(to_sympy(p * q, syms) - to_sympy(p, syms) * to_sympy(q, syms)) == 0
    assert sympy.expand(to_sympy(p - q, syms) - (to_sympy(p, syms) - to_sympy(q, syms))) == 0


@given(small_polys(), small_polys())
def test_exact_division_recovers_factor(p, q):
    if not q:
        return
    assert (p * q) / q == p


@given(small_polys(), rationals(), rationals(), rationals())
def test_evaluation(p, a, b, c):
    expected = to_sympy(p, (X, Y, Z)).subs({X: a, Y: b, Z: c})
    assert sympy.Rational(p([a, b, c])) == expected


def test_sparse_roundtrip_and_grlex_order():
    p = Poly(2, {(2, 0): 1, (0, 1): -3, (1, 1): Fraction(1, 2), (0, 0): 7})
    data = p.to_sparse()
    assert [e for _, e in data] == [[2, 0], [1, 1], [0, 1], [0, 0]]
    assert Poly.from_sparse(2, data) == p
    assert p.format(["a", "b"]) == "a^2 + 1/2*a*b - 3*b + 7"


def test_gcd_against_sympy():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    f = (x - y) * (x + 2 * y) * (x * x + 1)
    g = (x - y) * (x * x + 1) * (y + 3)
    expected = sympy.Poly(sympy.gcd(to_sympy(f, (X, Y)), to_sympy(g, (X, Y))), X, Y)
    got = poly_gcd([f, g])
    ratio = sympy.simplify(to_sympy(got, (X, Y)) / expected.as_expr())
    assert ratio.is_number and ratio != 0


def test_primitive_part_removes_common_factor():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    v = primitive_part([2 * x * y, -4 * x * x, 0 * x])
    assert v[0] == y and v[1] == -2 * x and not v[2]


def random_matrix(rng, rows, cols, r):
    """rows x cols rational matrix of rank <= r."""
    a = sympy.Matrix(rows, r, lambda i, j: sympy.Rational(rng.randint(-5, 5), rng.randint(1, 3)))
    b = sympy.Matrix(r, cols, lambda i, j: sympy.Rational(rng.randint(-5, 5), rng.randint(1, 3)))
    return a * b


def test_rank_and_kernel_match_sympy(rng):
    for _ in range(40):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        M = random_matrix(rng, rows, cols, rng.randint(0, min(rows, cols)))
        ours = [[Fraction(int(x.p), int(x.q)) for x in M.row(i)] for i in range(rows)]
        assert rank(ours) == M.rank()
        ker = kernel(ours, cols)
        assert len(ker) == cols - M.rank()
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in ours)


def test_symbolic_rank_is_generic_rank():
    lam = [Poly.var(2, k) for k in range(2)]
    M = [[lam[0], lam[1]], [lam[0] * lam[1], lam[1] * lam[1]]]  # det = 0
    assert rank(M) == 1
    M2 = [[lam[0], lam[1]], [lam[1], lam[0]]]
    assert rank(M2) == 2
    _, piv, D = ff_rref(M2)
    assert piv == [0, 1]
    assert D == lam[0] * lam[0] - lam[1] * lam[1]


def test_subspace_equality_and_sum():
    a = Subspace(3, [(1, 1, 0), (0, 1, 1)])
    b = Subspace(3, [(1, 0, -1), (2, 3, 1)])
    assert a == b
    assert a.contains((1, 2, 1)) and not a.contains((0, 0, 1))
    c = a + Subspace.coordinate(3, [2])
    assert c.dim == 3
