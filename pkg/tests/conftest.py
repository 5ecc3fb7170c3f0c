import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orbitkit.poly import Poly

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def rationals(bound=5, max_den=8):
    return st.builds(
        Fraction,
        st.integers(-bound * max_den, bound * max_den),
        st.integers(1, max_den),
    )


def rational_vectors(n, bound=5, max_den=8):
    return st.tuples(*[rationals(bound, max_den) for _ in range(n)])


def rand_vec(rng: random.Random, n: int, bound: int = 5, den: int = 12) -> tuple:
    return tuple(Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den)) for _ in range(n))


def to_sympy(p, syms):
    """Poly (or rational) -> sympy expression in the given symbols."""
    if not isinstance(p, Poly):
        return sympy.Rational(p.numerator, p.denominator)
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, exp):
            term *= s**k
        expr += term
    return expr


@pytest.fixture
def rng():
    return random.Random(12345)
