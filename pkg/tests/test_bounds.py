import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mwlat.bounds import (
    epsilon_marked_points,
    ramification_points,
    ramification_points_for_genus_zero,
    semistable_rank_jump_bound,
    stability_threshold,
)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_two_ramification_points(p):
    assert ramification_points_for_genus_zero(p) == 2


def test_degree_of_ramification_divisor():
    prof = ramification_points(7)
    assert prof.deg_R == 12 and prof.holds()


def test_no_cover_from_genus_one():
    with pytest.raises(ValueError):
        ramification_points(5, genus_source=1)


def test_genus_two_over_line():
    # hyperelliptic double covers have 6 branch points
    assert ramification_points(2, 2, 0).ram_points == 6


def test_jump_bound_examples():
    assert semistable_rank_jump_bound(4, 0, 5) == 8
    assert semistable_rank_jump_bound(2, 0, 5) == 0
    assert semistable_rank_jump_bound(10, 2, 7) == 60


def test_jump_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        semistable_rank_jump_bound(0, 0, 5)
    with pytest.raises(ValueError):
        semistable_rank_jump_bound(3, 3, 5)


def test_marked_points():
    assert epsilon_marked_points(0, 0) == 0
    assert epsilon_marked_points(3, 0) == 1
    assert epsilon_marked_points(1, 2) == 2


@given(st.integers(1, 30), st.sampled_from([0, 1, 2]), st.sampled_from([5, 7, 11, 13]))
def test_jump_bound_monotone(l, eps, p):
    b = semistable_rank_jump_bound(l, eps, p)
    assert semistable_rank_jump_bound(l + 1, eps, p) >= b
    if eps < 2:
        assert semistable_rank_jump_bound(l, eps + 1, p) >= b
    if l + eps >= 2:
        # below that the formula is negative and says nothing
        assert semistable_rank_jump_bound(l, eps, sympy.nextprime(p)) >= b
    assert (b == 0) == (l + eps == 2)


def test_threshold_examples():
    th = stability_threshold(68)
    assert th.first_prime == 71
    assert "71" in th.text_reading
    assert stability_threshold(1).first_prime == 3
    assert stability_threshold(7).first_prime == 11


def test_threshold_exhaustive():
    for n in range(1, 101):
        p = stability_threshold(n).first_prime
        assert sympy.isprime(p) and p - 1 > n
        # every smaller prime admits some nonzero jump q - 1 <= n
        for q in sympy.primerange(2, p):
            assert q - 1 <= n


def test_threshold_rejects_zero():
    with pytest.raises(ValueError):
        stability_threshold(0)
