"""Closed-form constraints: Riemann-Hurwitz, semistable rank jumps, stability thresholds."""

from __future__ import annotations

from dataclasses import dataclass

import sympy

__all__ = [
    "RamificationProfile",
    "ramification_points",
    "ramification_points_for_genus_zero",
    "semistable_rank_jump_bound",
    "epsilon_marked_points",
    "StabilityThreshold",
    "stability_threshold",
]


@dataclass(frozen=True)
class RamificationProfile:
    """A degree-p cyclic cover C -> D with tame total ramification."""

    p: int
    genus_source: int
    genus_target: int
    ram_points: int

    @property
    def deg_R(self) -> int:
        return (self.p - 1) * self.ram_points

    def holds(self) -> bool:
        return 2 * (self.genus_source - 1) == 2 * self.p * (self.genus_target - 1) + self.deg_R


def ramification_points(p: int, genus_source: int = 0, genus_target: int = 0) -> RamificationProfile:
    """Solve 2(g_src - 1) = 2p(g_tgt - 1) + (p - 1) r for the number r of ramification points."""
    if p < 2:
        raise ValueError("degree must be at least 2")
    if genus_source < 0 or genus_target < 0:
        raise ValueError("genera must be nonnegative")
    deg_r = 2 * (genus_source - 1) - 2 * p * (genus_target - 1)
    if deg_r < 0 or deg_r % (p - 1):
        raise ValueError(
            f"no cover: deg R = {deg_r} is not a nonnegative multiple of p - 1 = {p - 1}"
        )
    prof = RamificationProfile(p, genus_source, genus_target, deg_r // (p - 1))
    assert prof.holds()
    return prof


def ramification_points_for_genus_zero(p: int) -> int:
    """Number of ramification points of a degree-p cyclic cover of P^1 by P^1."""
    return ramification_points(p, 0, 0).ram_points


def epsilon_marked_points(n0: int, n_inf: int) -> int:
    """Number of ramification points (0 and infinity) carrying singular fibers.

    ``n0`` and ``n_inf`` are the I_n indices over the two points.  Not to be
    confused with the discriminant-degree epsilon of :func:`mwlat.weierstrass.epsilon`.
    """
    return int(n0 > 0) + int(n_inf > 0)


def semistable_rank_jump_bound(l: int, eps: int, p: int) -> int:
    """Upper bound (p - 1)(l + eps - 2) on the rank jump of a semistable rational surface.

    ``l`` counts singular fibers away from the ramification points and ``eps``
    the ramification points carrying singular fibers (0, 1 or 2).
    """
    if l < 1:
        raise ValueError("l must be positive")
    if eps not in (0, 1, 2):
        raise ValueError("eps counts marked ramification points: 0, 1 or 2")
    return (p - 1) * (l + eps - 2)


@dataclass(frozen=True)
class StabilityThreshold:
    rank_bound: int
    first_prime: int
    strict_reading: str
    text_reading: str


def stability_threshold(rank_bound: int) -> StabilityThreshold:
    """Smallest prime p with p - 1 > rank_bound.

    A nonzero rank jump is a positive multiple of p - 1 and at most
    ``rank_bound``, so it cannot occur once p - 1 exceeds the bound.  Also
    reports the looser statement "p > rank_bound"; both give the same
    first prime whenever rank_bound + 1 is not prime.
    """
    if rank_bound < 1:
        raise ValueError("rank bound must be positive")
    p = sympy.nextprime(rank_bound + 1)
    text_first = sympy.nextprime(rank_bound)
    return StabilityThreshold(
        rank_bound=rank_bound,
        first_prime=int(p),
        strict_reading=f"p - 1 > {rank_bound}, i.e. p >= {p}",
        text_reading=f"p > {rank_bound} (first prime {text_first})",
    )
