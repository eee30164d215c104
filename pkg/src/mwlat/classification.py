"""Fiber configurations of L-stable pairs (surface, cyclic cover of prime degree).

The enumeration works purely with fiber-type arithmetic: every multiset of
Kodaira types with total discriminant degree 12d, every placement of two of
them over the ramification points 0 and infinity, filtered by the structural
lemmas and then by the closed-form base-change transition.  Realizations in
the catalog are checked with the full pull-back pipeline.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .algebra import QQ, Poly
from .base_change import analyze_base_change, transition_type
from .weierstrass import (
    FiberConfiguration,
    KodairaType,
    WeierstrassModel,
    fiber_configuration,
)

__all__ = [
    "ConfigRow",
    "Rejection",
    "ClassificationResult",
    "TEST_PRIMES",
    "singular_types",
    "type_multisets",
    "lemma_rejection",
    "l_stable_numeric",
    "enumerate_rational_L_stable",
    "enumerate_with_rejections",
    "classify_k3_L_stable",
    "k3_verdict",
    "CATALOG",
    "catalog_index",
    "realize_configuration",
    "row_from_configuration",
    "verify_row_l_stable",
    "after_types",
    "placements",
]

TEST_PRIMES = (5, 7, 11, 13)
I0 = KodairaType("I", 0)


@dataclass(frozen=True)
class ConfigRow:
    """A configuration placed over the two ramification points.

    ``primes`` is None for "any prime p >= 5", else the admissible primes.
    """

    fiber_at_0: KodairaType
    fiber_at_inf: KodairaType
    remaining: tuple[KodairaType, ...]
    epsilon: int
    primes: tuple[int, ...] | None = None

    @property
    def p_constraint(self) -> str:
        if self.primes is None:
            return "any p >= 5"
        return ", ".join(f"p = {p}" for p in self.primes)

    def shape(self) -> tuple:
        """Placement without the prime constraint, for comparisons."""
        return (self.fiber_at_0, self.fiber_at_inf, self.remaining)

    def fibers(self) -> list[KodairaType]:
        return [t for t in (self.fiber_at_0, self.fiber_at_inf) if not t.is_smooth] \
            + list(self.remaining)

    def remaining_str(self) -> str:
        return " + ".join(str(t) for t in self.remaining)

    def __str__(self):
        rest = self.remaining_str() or "-"
        return f"[{self.p_constraint}] 0: {self.fiber_at_0}, inf: {self.fiber_at_inf}, rest: {rest}"


@dataclass(frozen=True)
class Rejection:
    row: ConfigRow
    p: int
    reason: str


@lru_cache(maxsize=None)
def singular_types(max_vdelta: int) -> tuple[KodairaType, ...]:
    out = [KodairaType("I", n) for n in range(1, max_vdelta + 1)]
    out += [KodairaType("I*", n) for n in range(0, max_vdelta - 5)]
    out += [KodairaType(k) for k in ("II", "III", "IV", "IV*", "III*", "II*")]
    return tuple(sorted(t for t in out if t.v_delta <= max_vdelta))


def type_multisets(total: int, types: Iterable[KodairaType] | None = None) -> list[tuple[KodairaType, ...]]:
    """All multisets of singular fiber types with discriminant degrees summing to ``total``."""
    types = sorted(types if types is not None else singular_types(total))
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(types)):
            t = types[i]
            if t.v_delta <= left:
                acc.append(t)
                rec(i, left - t.v_delta, acc)
                acc.pop()

    rec(0, total, [])
    return out


def placements(ms: tuple[KodairaType, ...]) -> list[ConfigRow]:
    """Ways to put one fiber (or none) over 0 and over infinity, heavier at 0."""
    seen = set()
    out = []
    options = [I0] + sorted(set(ms))
    for a in options:
        rest_a = list(ms)
        if not a.is_smooth:
            rest_a.remove(a)
        for b in [I0] + sorted(set(rest_a)):
            if b > a:
                continue
            rest = list(rest_a)
            if not b.is_smooth:
                rest.remove(b)
            key = (a, b, tuple(sorted(rest)))
            if key in seen:
                continue
            seen.add(key)
            eps = sum(t.v_delta for t in rest)
            out.append(ConfigRow(a, b, tuple(sorted(rest)), eps))
    return out


def _rank(types: Iterable[KodairaType], rho: int) -> int:
    return rho - 2 - sum(t.components - 1 for t in types)


def lemma_rejection(row: ConfigRow, p: int, d: int = 1) -> str | None:
    """First structural obstruction to L-stability, or None.

    The checks mirror the necessary conditions for rational surfaces:
    Shioda-Tate nonnegativity, the bound p * eps <= 12d, no I_n* with n >= 1,
    at least two singular fibers, two singular fibers only if both additive,
    a single additive fiber only if it is II* and p = 5, and no IV* together
    with II.
    """
    fibers = row.fibers()
    if d == 1 and _rank(fibers, 10) < 0:
        return "Shioda-Tate: fiber components exceed the Picard number"
    if p * row.epsilon > 12 * d:
        return f"p*eps = {p * row.epsilon} > {12 * d}"
    if d == 1:
        if any(t.kind == "I*" and t.n > 0 for t in fibers):
            return "fiber of type I_n* with n >= 1"
        if len(fibers) < 2:
            return "fewer than 2 singular fibers"
        additive = [t for t in fibers if t.is_additive]
        if len(fibers) == 2 and len(additive) < 2:
            return "exactly 2 singular fibers but not both additive"
        if len(additive) == 1 and not (additive[0] == KodairaType("II*") and p == 5):
            return "single additive fiber must be II* with p = 5"
        kinds = {t.kind for t in fibers}
        if "IV*" in kinds and "II" in kinds:
            return "IV* together with II"
    return None


def after_types(row: ConfigRow, p: int) -> list[KodairaType]:
    out = []
    for t in (row.fiber_at_0, row.fiber_at_inf):
        out.extend(transition_type(t, p, True))
    for t in row.remaining:
        out.extend(transition_type(t, p, False))
    return [t for t in out if not t.is_smooth]


def l_stable_numeric(row: ConfigRow, p: int, d: int = 1) -> tuple[bool, str]:
    """Closed-form L-stability: discriminant degree after base change equals 12d."""
    after = after_types(row, p)
    total = sum(t.v_delta for t in after)
    if total != 12 * d:
        return False, f"discriminant degree after base change is {total}, not {12 * d}"
    if d == 1 and _rank(after, 10) < 0:
        return False, "Shioda-Tate fails after base change"
    return True, "L-stable"


def _only_i0_star(row: ConfigRow) -> bool:
    return all(t == KodairaType("I*", 0) for t in row.fibers())


def _evaluate(row: ConfigRow, primes, d):
    ok, rejections = [], []
    for p in primes:
        reason = lemma_rejection(row, p, d)
        if reason is None:
            stable, why = l_stable_numeric(row, p, d)
            if stable:
                ok.append(p)
                continue
            reason = why
        rejections.append(Rejection(row, p, reason))
    return ok, rejections


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MWLAT_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_with_rejections(primes: tuple[int, ...] = TEST_PRIMES):
    """Returns (rows, excluded, rejections) for rational surfaces (d = 1).

    ``excluded`` holds configurations that pass every check but consist
    solely of I0* fibers: these are quadratic twists of a constant curve and
    are kept out of the table of rows.
    """
    candidates = [row for ms in type_multisets(12) for row in placements(ms)]
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        results = list(ex.map(lambda r: _evaluate(r, primes, 1), candidates))
    rows, excluded, rejections = [], [], []
    for row, (ok, rej) in zip(candidates, results):
        rejections.extend(rej)
        if not ok:
            continue
        constraint = None if tuple(ok) == tuple(primes) else tuple(ok)
        out = ConfigRow(row.fiber_at_0, row.fiber_at_inf, row.remaining, row.epsilon, constraint)
        (excluded if _only_i0_star(row) else rows).append(out)
    return _sort_rows(rows), _sort_rows(excluded), rejections


def enumerate_rational_L_stable(primes: tuple[int, ...] = TEST_PRIMES) -> list[ConfigRow]:
    return enumerate_with_rejections(primes)[0]


def _sort_rows(rows: list[ConfigRow]) -> list[ConfigRow]:
    def key(r):
        idx = catalog_index(r)
        return (idx if idx is not None else 99, r.primes is not None, r.primes or (),
                [-t.v_delta for t in r.fibers()])
    return sorted(rows, key=key)


# -- K3 surfaces ---------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationResult:
    p: int
    fibers: tuple[KodairaType, KodairaType]
    epsilon: int
    admissible: tuple[tuple[int, KodairaType, KodairaType, int], ...]


def k3_verdict(at0: KodairaType, at_inf: KodairaType, p: int, eps: int | None = None) -> tuple[bool, str]:
    """Can fibers at0, at_inf over the ramification points give an L-stable K3 pair?"""
    if eps is None:
        eps = 24 - at0.v_delta - at_inf.v_delta
    if eps < 0:
        return False, "discriminant degree exceeds 24"
    if p * eps > 24:
        return False, f"p*eps = {p * eps} > 24"
    total = p * eps
    for t in (at0, at_inf):
        (after,) = transition_type(t, p, True)
        if t.kind == "I*" and t.n > 0 and 6 + p * t.n > 24:
            return False, "6 + pn > 24"
        if t.kind == "I" and p * t.n > 24:
            return False, "pm > 24"
        total += after.v_delta
    if total != 24:
        return False, f"discriminant degree after base change is {total}, not 24"
    return True, "L-stable"


def classify_k3_L_stable(primes: Iterable[int] = (5, 7, 11, 13, 17, 19, 23)) -> ClassificationResult:
    """All (p, fiber at 0, fiber at infinity, eps) for L-stable elliptic K3 pairs.

    At least one ramification point has v(Delta) >= 10, so the search runs
    over pairs of fiber types whose combined discriminant degree is at least
    24 - 24/p.
    """
    types = (I0,) + singular_types(24)
    found = []
    for p in primes:
        for a in types:
            for b in types:
                if b > a:
                    continue
                eps = 24 - a.v_delta - b.v_delta
                if eps < 0:
                    continue
                ok, _ = k3_verdict(a, b, p, eps)
                if ok:
                    found.append((p, a, b, eps))
    if len({(p, a, b) for p, a, b, _ in found}) != 1:
        raise ArithmeticError(f"expected a unique K3 configuration, found {found}")
    p, a, b, eps = found[0]
    return ClassificationResult(p, (a, b), eps, tuple(found))


# -- realizations of the table rows --------------------------------------------------

def _K(s: str) -> KodairaType:
    return KodairaType.parse(s)


def _row(at0, atinf, rest, eps, primes):
    return ConfigRow(_K(at0), _K(atinf), tuple(sorted(_K(r) for r in rest)), eps, primes)


# (row, f coefficients in t, g coefficients in t) with t = t0/t1, d = 1
CATALOG: list[tuple[ConfigRow, list[int], list[int]]] = [
    (_row("IV*", "IV", [], 0, None), [], [0, 0, 0, 0, 1]),
    (_row("III*", "III", [], 0, None), [0, 0, 0, -1], []),
    (_row("II*", "II", [], 0, None), [], [0, 0, 0, 0, 0, 1]),
    (_row("II*", "I0", ["II"], 2, (5,)), [], [0, 0, 0, 0, 0, -1, 1]),
    (_row("II*", "I0", ["I1", "I1"], 2, (5,)), [0, 0, 0, 0, -1], [0, 0, 0, 0, 0, 1]),
    (_row("II*", "I1", ["I1"], 1, (5,)), [0, 0, 0, 0, -3], [0, 0, 0, 0, 0, 1, 2]),
    (_row("IV*", "III", ["I1"], 1, (5,)), [0, 0, 0, -1], [0, 0, 0, 0, 1]),
    (_row("III*", "II", ["I1"], 1, (7,)), [0, -1], [0, 1]),
]


def catalog_index(row: ConfigRow) -> int | None:
    """1-based row number in the catalog (matching placement, ignoring primes)."""
    for i, (r, _, _) in enumerate(CATALOG):
        if r.shape() == row.shape():
            return i + 1
    return None


def row_from_configuration(cfg: FiberConfiguration, primes=None) -> ConfigRow:
    a, b = cfg.at_zero, cfg.at_infinity
    rest = tuple(cfg.remaining())
    if b > a:
        a, b = b, a
    return ConfigRow(a, b, rest, sum(t.v_delta for t in rest), primes)


def realize_configuration(row: ConfigRow, a=-1, b=1) -> WeierstrassModel:
    """Catalog model for a table row, with its configuration verified.

    ``a`` and ``b`` scale f and g; the catalog uses a = -1, b = 1 for the
    Delsarte rows, and the remaining rows keep their own coefficients.
    """
    idx = catalog_index(row)
    if idx is None:
        raise KeyError(f"configuration {row} is not in the catalog")
    ref, fc, gc = CATALOG[idx - 1]
    f = Poly(QQ, fc)
    g = Poly(QQ, gc)
    if idx in (7, 8):
        f = Poly.monomial(QQ, f.degree, a)
        g = Poly.monomial(QQ, g.degree, b)
    m = WeierstrassModel(f, g, 1)
    got = row_from_configuration(fiber_configuration(m))
    if got.shape() != ref.shape():
        raise ArithmeticError(f"catalog model for row {idx} has configuration {got}")
    return m


def verify_row_l_stable(row: ConfigRow, primes: Iterable[int]) -> dict[int, bool]:
    m = realize_configuration(row)
    return {p: analyze_base_change(m, p).l_stable for p in primes}


def configuration_counter(rows: Iterable[ConfigRow]) -> Counter:
    return Counter(r.shape() for r in rows)
