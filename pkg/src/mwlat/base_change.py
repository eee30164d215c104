"""Cyclic base change of prime degree p, totally ramified over 0 and infinity."""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .algebra import QQ, NumberField, Poly
from .weierstrass import (
    INFINITY,
    FiberConfiguration,
    KodairaType,
    NonMinimalError,
    Place,
    WeierstrassModel,
    discriminant,
    epsilon,
    fiber_configuration,
    is_minimal,
    kodaira_type,
    minimize,
    zero_place,
)

__all__ = [
    "GaloisCover",
    "BaseChangeReport",
    "FiberTransition",
    "pull_back",
    "epsilon",
    "analyze_base_change",
    "transition_type",
    "transition_via_pipeline",
    "local_realization",
    "ALL_TEST_TYPES",
]


@dataclass(frozen=True)
class GaloisCover:
    """The cover [s0:s1] -> [s0^p:s1^p]."""

    p: int
    allow_small: bool = False

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"cover degree {self.p} is not prime")
        if self.p < 5 and not self.allow_small:
            raise ValueError("cover degree must be a prime >= 5")


def pull_back(m: WeierstrassModel, p: int) -> WeierstrassModel:
    """Substitute t0 -> t0^p, t1 -> t1^p (degrees multiply by p)."""
    if p < 1:
        raise ValueError("degree must be positive")
    return WeierstrassModel(m.f.inflate(p), m.g.inflate(p), m.d * p, m.field)


@dataclass(frozen=True)
class FiberTransition:
    place: Place
    before: KodairaType
    after: tuple[KodairaType, ...]
    ramified: bool

    def __str__(self):
        if len(set(self.after)) == 1 and len(self.after) > 1:
            rhs = f"{len(self.after)}x{self.after[0]}"
        else:
            rhs = ", ".join(str(t) for t in self.after)
        return f"{self.before} at {self.place} -> {rhs}"


@dataclass(frozen=True)
class BaseChangeReport:
    p: int
    before: WeierstrassModel
    pulled_back: WeierstrassModel
    after: WeierstrassModel
    config_before: FiberConfiguration
    config_after: FiberConfiguration
    epsilon: int
    l_stable: bool
    fiber_transitions: tuple[FiberTransition, ...]

    @property
    def d_before(self) -> int:
        return self.before.d

    @property
    def d_after(self) -> int:
        return self.after.d


def _preimage_types(cfg_after: FiberConfiguration, pre: Poly) -> list[KodairaType]:
    out = []
    for fd in cfg_after.fibers:
        if fd.place.is_infinity or fd.place.is_zero:
            continue
        g = fd.place.pi.gcd(pre)
        out.extend([fd.type] * max(g.degree, 0))
    return out


def analyze_base_change(m: WeierstrassModel, p: int, *, allow_small: bool = False) -> BaseChangeReport:
    """Pull back, re-minimize, and compare fundamental degrees."""
    GaloisCover(p, allow_small)
    if not is_minimal(m):
        raise NonMinimalError("analyze_base_change needs a globally minimal model")
    k = m.field
    eps = epsilon(m)
    cfg_before = fiber_configuration(m, check_minimal=False)
    pulled = pull_back(m, p)
    after = minimize(pulled)
    cfg_after = fiber_configuration(after, check_minimal=False)

    disc_after = discriminant(after)
    v0 = disc_after.valuation(zero_place(k))
    vi = disc_after.valuation(INFINITY)
    if 12 * after.d != v0 + vi + p * eps:
        raise ArithmeticError(
            f"12*deg L = {12 * after.d} but v0 + v_inf + p*eps = {v0 + vi + p * eps}"
        )

    transitions = []
    for fd in cfg_before.fibers:
        if fd.place.is_zero:
            after_types = (cfg_after.at_zero,)
            ram = True
        elif fd.place.is_infinity:
            after_types = (cfg_after.at_infinity,)
            ram = True
        else:
            pre = fd.place.pi.inflate(p)
            after_types = tuple(_preimage_types(cfg_after, pre))
            ram = False
            if len(after_types) != p * fd.degree:
                raise ArithmeticError(
                    f"{fd} pulled back to {len(after_types)} fibers, expected {p * fd.degree}"
                )
        transitions.append(FiberTransition(fd.place, fd.type, after_types, ram))
    # ramification points carrying smooth fibers can become singular only if
    # they were singular before; record the identity for completeness
    for place, before_t, after_t in (
        (zero_place(k), cfg_before.at_zero, cfg_after.at_zero),
        (INFINITY, cfg_before.at_infinity, cfg_after.at_infinity),
    ):
        if before_t.is_smooth and not after_t.is_smooth:
            raise ArithmeticError(f"smooth fiber at {place} became {after_t}")

    return BaseChangeReport(
        p=p,
        before=m,
        pulled_back=pulled,
        after=after,
        config_before=cfg_before,
        config_after=cfg_after,
        epsilon=eps,
        l_stable=after.d == m.d,
        fiber_transitions=tuple(transitions),
    )


_BY_VDELTA = {
    0: KodairaType("I", 0),
    2: KodairaType("II"),
    3: KodairaType("III"),
    4: KodairaType("IV"),
    6: KodairaType("I*", 0),
    8: KodairaType("IV*"),
    9: KodairaType("III*"),
    10: KodairaType("II*"),
}


def transition_type(t: KodairaType, p: int, ramified: bool) -> list[KodairaType]:
    """Closed-form fiber types above a fiber of type ``t`` after degree-p base change.

    Returns ``p`` copies when unramified and a single type when totally ramified.
    """
    if p % 2 == 0 or p % 3 == 0:
        raise ValueError("p must be coprime to 6")
    if not ramified:
        return [t] * p
    if t.kind == "I":
        return [KodairaType("I", p * t.n)]
    if t.kind == "I*" and t.n > 0:
        return [KodairaType("I*", p * t.n)]
    return [_BY_VDELTA[(p * t.v_delta) % 12]]


# -- pipeline cross-check ---------------------------------------------------------

ALL_TEST_TYPES = [
    KodairaType("I", 0),
    KodairaType("I", 1),
    KodairaType("I", 2),
    KodairaType("I", 3),
    KodairaType("II"),
    KodairaType("III"),
    KodairaType("IV"),
    KodairaType("I*", 0),
    KodairaType("I*", 1),
    KodairaType("I*", 2),
    KodairaType("IV*"),
    KodairaType("III*"),
    KodairaType("II*"),
]


def local_realization(t: KodairaType, field: NumberField = QQ) -> WeierstrassModel:
    """A globally minimal model whose fiber at t = 0 has type ``t``."""
    x = Poly.gen(field)
    one = Poly.one(field)
    if t.kind == "I":
        if t.n == 0:
            f, g = one + x, one
        else:
            # Delta = -432 t^n (t^n + 4)
            f, g = one * -3, x ** t.n + 2
    elif t.kind == "I*":
        if t.n == 0:
            f, g = x ** 2, x ** 3
        else:
            f, g = x ** 2 * -3, x ** 3 * (x ** t.n + 2)
    else:
        vf, vg = {
            "II": (1, 1), "III": (1, 2), "IV": (2, 2),
            "IV*": (3, 4), "III*": (3, 5), "II*": (4, 5),
        }[t.kind]
        f, g = x ** vf * (one + x), x ** vg
    m = minimize(WeierstrassModel.affine(f, g))
    got = kodaira_type(m, zero_place(field)).type
    if got != t:
        raise ArithmeticError(f"realization of {t} has type {got} at 0")
    return m


def transition_via_pipeline(t: KodairaType, p: int, ramified: bool) -> list[KodairaType]:
    """Fiber types above a fiber of type ``t`` computed by pull-back and minimization."""
    m = local_realization(t)
    if ramified:
        after = minimize(pull_back(m, p))
        return [kodaira_type(after, zero_place(after.field)).type]
    # move the fiber from t = 0 to t = 1
    x = Poly.gen(m.field)
    shifted = WeierstrassModel(m.f.evaluate(x - 1), m.g.evaluate(x - 1), m.d, m.field)
    after = minimize(pull_back(shifted, p))
    cfg = fiber_configuration(after, check_minimal=False)
    pre = Poly(m.field, [-1, 1]).inflate(p)
    types = _preimage_types(cfg, pre)
    if t.is_smooth:
        # smooth fibers are not listed in a configuration
        return [t] * (pre.degree - len(types)) + types
    return types
