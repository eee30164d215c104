"""Sections of elliptic surfaces: group law, cyclic Galois action, traces, families.

Points live on the affine chart ``y^2 = x^3 + f(t) x + g(t)`` of a
:class:`WeierstrassModel`, with coordinates in the rational function field
over a number field that may be larger than the model's field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra import QQ, NFElement, NumberField, Poly, RatFunc
from .algebra.field import to_rational
from .weierstrass import FiberConfiguration, WeierstrassModel, discriminant

__all__ = [
    "FFPoint",
    "NotOnCurveError",
    "shioda_tate_rank",
    "on_curve",
    "add_points",
    "neg_point",
    "mul_point",
    "GaloisSectionAction",
    "galois_weights",
    "make_action",
    "apply_sigma",
    "trace",
    "zsigma_mul",
    "zsigma_shift",
    "GeneratorFamily",
    "FamilyReport",
    "materialize",
    "verify_generator_family",
    "is_non_torsion",
    "rational_descent",
]


class NotOnCurveError(ValueError):
    """A point does not satisfy the Weierstrass equation."""


# -- Shioda-Tate ---------------------------------------------------------------------

def shioda_tate_rank(c: FiberConfiguration | Iterable, rho: int = 10) -> int:
    """rho - 2 - sum over geometric fibers of (m_v - 1)."""
    if isinstance(c, FiberConfiguration):
        excess = c.component_excess()
    else:
        excess = sum(t.components - 1 for t in c)
    r = rho - 2 - excess
    if r < 0:
        raise ValueError(f"negative rank {r}: configuration incompatible with rho = {rho}")
    return r


# -- points --------------------------------------------------------------------------

class FFPoint:
    """The zero section or an affine point (x(t), y(t))."""

    __slots__ = ("x", "y", "field")

    def __init__(self, x: RatFunc | None, y: RatFunc | None, field: NumberField | None = None):
        if (x is None) != (y is None):
            raise ValueError("both coordinates or neither")
        if x is not None:
            k = field or (x.field if x.field.is_subfield_of(y.field) else y.field)
            if x.field is not k:
                x = x.change_field(k)
            if y.field is not k:
                y = y.change_field(k)
            field = k
        self.x = x
        self.y = y
        self.field = field or QQ

    @classmethod
    def zero(cls, field: NumberField = QQ) -> "FFPoint":
        return cls(None, None, field)

    @classmethod
    def from_polys(cls, x: Poly, y: Poly) -> "FFPoint":
        return cls(RatFunc.from_poly(x), RatFunc.from_poly(y))

    @classmethod
    def from_coeffs(cls, field: NumberField, xs: Sequence, ys: Sequence) -> "FFPoint":
        return cls.from_polys(Poly(field, xs), Poly(field, ys))

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __neg__(self) -> "FFPoint":
        if self.is_zero:
            return self
        return FFPoint(self.x, -self.y, self.field)

    def change_field(self, k: NumberField) -> "FFPoint":
        if k is self.field:
            return self
        if self.is_zero:
            return FFPoint.zero(k)
        return FFPoint(self.x.change_field(k), self.y.change_field(k), k)

    def __eq__(self, other):
        if not isinstance(other, FFPoint):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_zero:
            return hash("O")
        return hash((self.x, self.y))

    def is_polynomial(self) -> bool:
        return self.is_zero or (self.x.is_polynomial() and self.y.is_polynomial())

    def degrees(self) -> tuple[int, int]:
        if self.is_zero:
            raise ValueError("zero point has no coordinates")
        return self.x.num.degree - self.x.den.degree, self.y.num.degree - self.y.den.degree

    def conforms(self, max_deg_x: int) -> bool:
        """Polynomial point with deg x <= max_deg_x and deg y <= max_deg_x + 1."""
        if self.is_zero or not self.is_polynomial():
            return False
        dx, dy = self.x.num.degree, self.y.num.degree
        return dx <= max_deg_x and dy <= max_deg_x + 1

    def sort_key(self):
        if self.is_zero:
            return ("",)
        return (self.x.to_string(), self.y.to_string())

    def to_string(self, var: str = "t") -> str:
        if self.is_zero:
            return "O"
        return f"({self.x.to_string(var)}, {self.y.to_string(var)})"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"FFPoint{self.to_string()}"


def _curve_coeffs(m: WeierstrassModel, k: NumberField) -> tuple[RatFunc, RatFunc]:
    return RatFunc.from_poly(m.f.change_field(k)), RatFunc.from_poly(m.g.change_field(k))


def _common_field(*pts: FFPoint) -> NumberField:
    k = pts[0].field
    for P in pts[1:]:
        if P.field is k:
            continue
        if k.is_subfield_of(P.field):
            k = P.field
        elif not P.field.is_subfield_of(k):
            raise ValueError("points over unrelated fields")
    return k


def on_curve(m: WeierstrassModel, P: FFPoint) -> bool:
    if P.is_zero:
        return True
    k = _common_field(P, FFPoint.zero(m.field))
    P = P.change_field(k)
    f, g = _curve_coeffs(m, k)
    return P.y * P.y == P.x * P.x * P.x + f * P.x + g


def neg_point(P: FFPoint) -> FFPoint:
    return -P


def add_points(m: WeierstrassModel, P: FFPoint, Q: FFPoint) -> FFPoint:
    """Chord-tangent addition on the affine chart of ``m``."""
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    k = _common_field(P, Q, FFPoint.zero(m.field))
    P, Q = P.change_field(k), Q.change_field(k)
    if P.x == Q.x:
        if P.y == -Q.y:
            return FFPoint.zero(k)
        f, _ = _curve_coeffs(m, k)
        lam = (P.x * P.x * 3 + f) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return FFPoint(x3, y3, k)


def sub_points(m: WeierstrassModel, P: FFPoint, Q: FFPoint) -> FFPoint:
    return add_points(m, P, -Q)


def mul_point(m: WeierstrassModel, n: int, P: FFPoint) -> FFPoint:
    """n * P by double-and-add (n may be negative)."""
    if n < 0:
        return mul_point(m, -n, -P)
    result = FFPoint.zero(P.field)
    base = P
    while n:
        if n & 1:
            result = add_points(m, result, base)
        n >>= 1
        if n:
            base = add_points(m, base, base)
    return result


# -- Galois action -------------------------------------------------------------------

def _monomial(q: Poly) -> tuple[int, NFElement] | None:
    """(exponent, coefficient) if q is a nonzero monomial, else None."""
    nz = [i for i, c in enumerate(q.coeffs) if c]
    if len(nz) != 1:
        return None
    return nz[0], q.coeff(nz[0])


def galois_weights(m: WeierstrassModel, p: int) -> tuple[int, int]:
    """Weights (w_x, w_y) mod p for y^2 = x^3 + a t^m x + b t^n.

    Solves 3 w_x = 2 w_y = w_x - m = -n (mod p); requires 3m = 2n (mod p)
    when both terms are present.
    """
    if p < 5:
        raise ValueError("p must be a prime >= 5")
    fm = _monomial(m.f) if m.f else None
    gm = _monomial(m.g) if m.g else None
    if (m.f and fm is None) or (m.g and gm is None):
        raise ValueError("model is not of Delsarte shape y^2 = x^3 + a t^m x + b t^n")
    inv2, inv3 = pow(2, -1, p), pow(3, -1, p)
    if fm and gm:
        mm, nn = fm[0], gm[0]
        if (3 * mm - 2 * nn) % p:
            raise ValueError(f"congruences inconsistent: 3*{mm} != 2*{nn} mod {p}")
        wx = (mm - nn) % p
    elif gm:
        wx = (-gm[0] * inv3) % p
    else:
        # only the x-term: w_x - m = 3 w_x, so w_x = -m/2
        wx = (-fm[0] * inv2) % p
    wy = (3 * wx * inv2) % p
    if gm and (2 * wy + gm[0]) % p:
        raise AssertionError("weight solution failed")
    return wx, wy


@dataclass(frozen=True)
class GaloisSectionAction:
    """sigma: (x(t), y(t)) -> (zeta^wx x(zeta t), zeta^wy y(zeta t))."""

    p: int
    zeta: NFElement
    w_x: int
    w_y: int

    def __post_init__(self):
        one = self.zeta.field.one
        if self.zeta ** self.p != one or self.zeta == one:
            raise ValueError("zeta is not a primitive p-th root of unity")

    @property
    def field(self) -> NumberField:
        return self.zeta.field


def make_action(m: WeierstrassModel, p: int, zeta: NFElement) -> GaloisSectionAction:
    wx, wy = galois_weights(m, p)
    return GaloisSectionAction(p, zeta, wx, wy)


def apply_sigma(a: GaloisSectionAction, P: FFPoint, k: int = 1) -> FFPoint:
    """sigma^k P."""
    k %= a.p
    if P.is_zero or k == 0:
        return P
    K = _common_field(P, FFPoint.zero(a.field))
    P = P.change_field(K)
    z = K.coerce(a.zeta) ** k
    x = P.x.substitute_scaled(z) * (z ** (a.w_x % a.p))
    y = P.y.substitute_scaled(z) * (z ** (a.w_y % a.p))
    return FFPoint(x, y, K)


def orbit(a: GaloisSectionAction, P: FFPoint) -> list[FFPoint]:
    return [apply_sigma(a, P, i) for i in range(a.p)]


def trace(a: GaloisSectionAction, m: WeierstrassModel, P: FFPoint) -> FFPoint:
    """Sum of the p conjugates sigma^i P."""
    total = FFPoint.zero(P.field)
    for Q in orbit(a, P):
        total = add_points(m, total, Q)
    return total


# -- Z[sigma] combinations -------------------------------------------------------------

def zsigma_mul(u: Sequence[int], v: Sequence[int]) -> list[int]:
    """Product in Z[C_p] (cyclic convolution)."""
    p = len(u)
    out = [0] * p
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[(i + j) % p] += a * b
    return out


def zsigma_shift(u: Sequence[int], k: int = 1) -> list[int]:
    """sigma^k * u."""
    p = len(u)
    return [u[(i - k) % p] for i in range(p)]


def materialize(m: WeierstrassModel, a: GaloisSectionAction, seed: FFPoint,
                vec: Sequence[int], cache: dict | None = None) -> FFPoint:
    """sum_i vec[i] sigma^i(seed)."""
    key = tuple(vec)
    if cache is not None and key in cache:
        return cache[key]
    conj = orbit(a, seed)
    total = FFPoint.zero(seed.field)
    for i, c in enumerate(vec):
        if c:
            total = add_points(m, total, mul_point(m, c, conj[i]))
    if cache is not None:
        cache[key] = total
    return total


@dataclass
class GeneratorFamily:
    """Named Z[sigma]-combinations of one seed point.

    ``recipes`` maps a name to a coefficient vector on sigma^0 .. sigma^(p-1).
    """

    seed: FFPoint
    recipes: Mapping[str, Sequence[int]]
    expected_count: int
    max_deg_x: int

    def __post_init__(self):
        if self.expected_count <= 0:
            raise ValueError("expected_count must be positive")


@dataclass
class FamilyReport:
    count: int
    expected_count: int
    points: list[FFPoint]
    named: dict[str, FFPoint]
    shape_violations: list[str]
    off_curve: list[str]
    sigma_fixed: list[FFPoint]
    orbit_sizes: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.count == self.expected_count and not self.shape_violations
                and not self.off_curve)


def verify_generator_family(m: WeierstrassModel, fam: GeneratorFamily,
                            act: GaloisSectionAction) -> FamilyReport:
    """Materialize recipes, close under sigma and negation, and check everything."""
    if not on_curve(m, fam.seed):
        raise NotOnCurveError("seed point is not on the curve")
    p = act.p
    cache: dict = {}
    named = {}
    for name, vec in fam.recipes.items():
        if len(vec) != p:
            raise ValueError(f"recipe {name!r} has length {len(vec)}, expected {p}")
        named[name] = materialize(m, act, fam.seed, vec, cache)
    points: dict[FFPoint, None] = {}
    orbit_sizes = []
    for name, P in named.items():
        if P in points:
            continue
        orb = []
        for Q in orbit(act, P):
            for R in (Q, -Q):
                if R not in points:
                    points[R] = None
                    orb.append(R)
        orbit_sizes.append(len(orb))
    shape_violations, off_curve = [], []
    for P in points:
        if not P.conforms(fam.max_deg_x):
            shape_violations.append(P.to_string())
        if not on_curve(m, P):
            off_curve.append(P.to_string())
    fixed = [P for P in points if apply_sigma(act, P) == P]
    ordered = sorted(points, key=FFPoint.sort_key)
    return FamilyReport(
        count=len(points),
        expected_count=fam.expected_count,
        points=ordered,
        named=named,
        shape_violations=shape_violations,
        off_curve=off_curve,
        sigma_fixed=sorted(fixed, key=FFPoint.sort_key),
        orbit_sizes=orbit_sizes,
    )


def _descend_poly(q: Poly) -> Poly | None:
    if not all(c.is_rational() for c in q.coeffs):
        return None
    return Poly(QQ, [c.to_rational() for c in q.coeffs])


def rational_descent(P: FFPoint) -> FFPoint | None:
    """The same section with coefficients in QQ, or None if some coefficient is irrational."""
    if P.field is QQ or P.is_zero:
        return P.change_field(QQ) if P.is_zero else P
    parts = [_descend_poly(r) for r in (P.x.num, P.x.den, P.y.num, P.y.den)]
    if any(q is None for q in parts):
        return None
    return FFPoint(RatFunc(parts[0], parts[1]), RatFunc(parts[2], parts[3]), QQ)


# -- non-torsion ------------------------------------------------------------------------

def is_non_torsion(m: WeierstrassModel, P: FFPoint, t_value=2, bound: int = 12) -> bool:
    """True if P specializes at t = t_value to a point of order > ``bound``.

    For a rational specialization on a smooth fiber, Mazur's theorem caps
    torsion orders at 12, so a positive answer certifies that P has infinite
    order.  Specialization is a group homomorphism, so a torsion section
    can never pass this test.
    """
    if P.is_zero:
        return False
    tv = to_rational(t_value)
    disc = discriminant(m)
    if not disc.poly.evaluate(tv):
        raise ValueError(f"fiber at t = {t_value} is singular")
    if P.field is not QQ:
        raise ValueError("non-torsion certificate needs a point over QQ")
    fv = m.f.change_field(QQ).evaluate(tv).to_rational() if m.f else 0
    gv = m.g.change_field(QQ).evaluate(tv).to_rational() if m.g else 0
    x = P.x.evaluate(tv).to_rational()
    y = P.y.evaluate(tv).to_rational()
    if y * y != x ** 3 + fv * x + gv:
        raise NotOnCurveError("specialized point is off the fiber")

    def add(A, B):
        if A is None:
            return B
        if B is None:
            return A
        (x1, y1), (x2, y2) = A, B
        if x1 == x2:
            if y1 == -y2:
                return None
            lam = (3 * x1 * x1 + fv) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return x3, lam * (x1 - x3) - y1

    Q = (x, y)
    acc = Q
    for _ in range(2, bound + 1):
        acc = add(acc, Q)
        if acc is None:
            return False
    return True
