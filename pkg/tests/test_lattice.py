import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frozen import ATAN_THIRD, HALF_PI, LOG_2, LOG_SQRT_401
from p1stab.coords import DomainError
from p1stab.lattice import (
    lattice_arg_extrema,
    lattice_log_extrema,
    quadratic_roots,
    supinf_center,
    tail_bound,
)

NS = np.arange(-10_000, 10_001)


def brute_log(t1, t2):
    v = np.log(np.abs(t1 - NS)) - np.log(np.abs(t2 - NS))
    return max(v.max(), 0.0), min(v.min(), 0.0)


def brute_arg(t1, t2):
    v = np.angle((t1 - NS) / (t2 - NS))
    return max(v.max(), 0.0), min(v.min(), 0.0)


def test_log_extrema_examples():
    e = lattice_log_extrema(1j, 2j)
    assert e.sup_value == 0.0 and e.sup_attained_at is None
    assert e.inf_value == pytest.approx(-LOG_2, abs=1e-15) and e.inf_attained_at == 0
    e = lattice_log_extrema(0.5 + 10j, 0.5)
    assert e.sup_value == pytest.approx(LOG_SQRT_401, abs=1e-14) and e.sup_attained_at in (0, 1)
    assert e.inf_value == 0.0 and e.inf_attained_at is None
    e = lattice_log_extrema(0.3 + 1j, 0.3 + 1j)
    assert (e.sup_value, e.inf_value) == (0.0, 0.0)


def test_arg_extrema_examples():
    e = lattice_arg_extrema(1j, 2j)
    assert e.sup_value == pytest.approx(ATAN_THIRD, abs=1e-15) and e.sup_attained_at in (1, 2)
    assert e.inf_value == pytest.approx(-ATAN_THIRD, abs=1e-15) and e.inf_attained_at in (-1, -2)
    e = lattice_arg_extrema(2 + 3j, 2 + 3j)
    assert (e.sup_value, e.inf_value) == (0.0, 0.0)


def test_arg_extrema_reflected_pair():
    # reflection n -> -n swaps the two points and leaves the profile unchanged
    e = lattice_arg_extrema(-1 + 1j, 1 + 1j)
    assert e.sup_value == pytest.approx(HALF_PI, abs=1e-15) and e.sup_attained_at == 0
    assert e.inf_value == 0.0 and e.inf_attained_at is None


def test_domain_errors():
    with pytest.raises(DomainError):
        lattice_log_extrema(1j, 2.0)
    with pytest.raises(DomainError):
        lattice_log_extrema(1j, -1j)
    with pytest.raises(DomainError):
        lattice_arg_extrema(1j, 0.5)


def test_quadratic_roots():
    assert sorted(quadratic_roots(1, -3, 2)) == pytest.approx([1, 2])
    assert quadratic_roots(0, 2, -4) == [2]
    assert quadratic_roots(0, 0, 1) == []
    assert quadratic_roots(1, 0, 1) == []


def test_supinf_examples():
    assert supinf_center(1, -3) == (2, 1)
    assert supinf_center(0, 0) == (0, 0)
    assert supinf_center(5, -1) == (3, -2)
    with pytest.raises(DomainError):
        supinf_center(-1, -2)


taus = st.builds(
    complex,
    st.floats(-6, 6),
    st.floats(0.02, 8),
)


@settings(max_examples=150, deadline=None)
@given(taus, taus)
def test_extrema_match_brute_force(t1, t2):
    e = lattice_log_extrema(t1, t2)
    hi, lo = brute_log(t1, t2)
    assert e.sup_value == pytest.approx(hi, abs=1e-12)
    assert e.inf_value == pytest.approx(lo, abs=1e-12)
    a = lattice_arg_extrema(t1, t2)
    hi, lo = brute_arg(t1, t2)
    assert a.sup_value == pytest.approx(hi, abs=1e-12)
    assert a.inf_value == pytest.approx(lo, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(taus, st.integers(-6, 6), st.floats(0.1, 0.9))
def test_log_extrema_with_real_point(t1, k, frac):
    t2 = complex(k + frac, 0.0)
    e = lattice_log_extrema(t1, t2)
    hi, lo = brute_log(t1, t2)
    assert e.sup_value == pytest.approx(hi, abs=1e-12)
    assert e.inf_value == pytest.approx(lo, abs=1e-12)


@given(st.floats(0, 10), st.floats(-10, 0), st.floats(-20, 20))
def test_supinf_center_is_optimal(hi, lo, lam):
    value, lam_star = supinf_center(hi, lo)
    at = lambda l: max(abs(hi + l), abs(lo + l), abs(l))
    assert at(lam_star) == pytest.approx(value, abs=1e-12)
    assert at(lam) >= value - 1e-12


def test_tail_bound_covers_outside_window():
    t1, t2 = 0.3 + 2j, -1 + 0.5j
    w = 50
    out = np.concatenate([np.arange(-5000, -w), np.arange(w + 1, 5000)])
    worst = np.abs(np.log(np.abs(t1 - out)) - np.log(np.abs(t2 - out))).max()
    worst_arg = np.abs(np.angle((t1 - out) / (t2 - out))).max() / math.pi
    assert max(worst, worst_arg) <= tail_bound(t1, t2, w)
