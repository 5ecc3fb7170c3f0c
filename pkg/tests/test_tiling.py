import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitkit.catalog import five_dim, free_two_step_3, heisenberg
from orbitkit.coadjoint import orbit_data
from orbitkit.dilation import validate_dilation
from orbitkit.errors import TrivialAction, ZeroPivotCoordinate
from orbitkit.tiling import _shift, floor_log, in_band, make_shannon_tiling, tile_index, verify_tiling

HALF = Fraction(1, 2)


def tiling_for(alg, a, variant="unit"):
    spec = validate_dilation(alg, a)
    return make_shannon_tiling(spec, orbit_data(alg), variant)


@given(
    st.fractions(min_value=Fraction(1, 10**6), max_value=10**6),
    st.sampled_from([Fraction(2), Fraction(3), Fraction(3, 2), Fraction(10)]),
)
def test_floor_log_exact(u, base):
    m = floor_log(u, base)
    assert base**m <= u < base ** (m + 1)


def test_floor_log_at_powers():
    for m in range(-30, 31):
        assert floor_log(Fraction(2) ** m, Fraction(2)) == m
        assert floor_log(Fraction(2) ** m - Fraction(1, 10**12), Fraction(2)) == m - 1


def test_free_two_step_band():
    t = tiling_for(free_two_step_3(), (2, 2, 1, 2, 1, 1))
    assert t.pivot == 0
    assert (t.low, t.high) == (1, 2)
    assert t.describe(free_two_step_3().names) == "1 <= |λ(Z23)| < 2"


def test_contracting_pivot_band():
    t = tiling_for(heisenberg(), (HALF, HALF, 1))
    assert (t.low, t.high) == (HALF, 1)
    assert t.ratio == 2


@given(st.fractions(min_value=Fraction(-100), max_value=100).filter(bool), st.sampled_from([2, HALF, 3, Fraction(1, 3)]))
def test_tile_index_lands_in_band(x, c):
    t = tiling_for(heisenberg(), (c, c, 1))
    lam = (x, 0, 0)
    m = tile_index(t, lam)
    assert in_band(t, _shift(t, lam, m))
    assert not in_band(t, _shift(t, lam, m + 1))
    assert not in_band(t, _shift(t, lam, m - 1))


def test_zero_pivot_rejected():
    t = tiling_for(heisenberg(), (2, 2, 1))
    with pytest.raises(ZeroPivotCoordinate):
        tile_index(t, (0, 0, 0))


def test_trivial_action_has_no_band():
    with pytest.raises(TrivialAction):
        tiling_for(heisenberg(), (1, HALF, 2))


@pytest.mark.parametrize(
    "alg,a,variant",
    [
        (heisenberg(), (2, 2, 1), "unit"),
        (heisenberg(), (2, 2, 1), "half"),
        (heisenberg(), (HALF, HALF, 1), "unit"),
        (heisenberg(), (4, 2, 2), "unit"),
        (five_dim(), (4, 4, 2, 2, 2), "unit"),
        (free_two_step_3(), (2, 2, 1, 2, 1, 1), "unit"),
    ],
)
def test_verify_tiling_passes(alg, a, variant):
    rep = verify_tiling(tiling_for(alg, a, variant), 2000, seed=3)
    assert rep.failures == 0 and rep.passed
    assert rep.summary().startswith("0 failures / 2000")


def test_overlapping_band_is_caught():
    t = tiling_for(heisenberg(), (2, 2, 1))
    bad = verify_tiling(t, 500, seed=1, membership=lambda lam: 1 <= abs(lam[0]) < 3)
    assert bad.failures > 0 and not bad.passed
    gap = verify_tiling(t, 500, seed=1, membership=lambda lam: 1 <= abs(lam[0]) < Fraction(3, 2))
    assert gap.failures > 0


def test_worker_count_does_not_change_result():
    t = tiling_for(free_two_step_3(), (2, 2, 1, 2, 1, 1))
    one = verify_tiling(t, 3000, seed=9, workers=1)
    two = verify_tiling(t, 3000, seed=9, workers=2)
    assert (one.failures, one.max_abs_index) == (two.failures, two.max_abs_index)


def test_max_index_reaches_grid_extremes():
    t = tiling_for(heisenberg(), (2, 2, 1))
    rep = verify_tiling(t, 3000, seed=0)
    assert rep.max_abs_index >= 3
    assert rep.max_abs_index <= math.ceil(math.log2(8 * 64)) + 1
