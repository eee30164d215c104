"""Short Weierstrass models over the function field of the projective line.

A model ``y^2 = x^3 + f x + g`` stores ``f`` and ``g`` as binary forms of
degrees ``4d`` and ``6d`` in ``(t0, t1)``.  Internally a form of degree D is
its affine polynomial in ``t = t0/t1``: the coefficient of ``t^k`` is the
coefficient of ``t0^k t1^(D-k)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

from .algebra import QQ, NFElement, NumberField, Poly
from .algebra.factor import factor_rational, valuation_blocks

__all__ = [
    "BinaryForm",
    "Place",
    "ZERO_PLACE",
    "zero_place",
    "minimize",
    "is_minimal",
    "candidate_places",
    "INFINITY",
    "KodairaType",
    "FiberData",
    "FiberConfiguration",
    "WeierstrassModel",
    "SingularModelError",
    "NonMinimalError",
    "TrivialFamilyError",
    "discriminant",
    "place_valuation",
    "minimize_at",
    "minimize",
    "kodaira_type",
    "classify_valuations",
    "fiber_configuration",
    "fundamental_degree",
    "epsilon",
]


class SingularModelError(ValueError):
    """The discriminant vanishes identically."""


class NonMinimalError(ValueError):
    """The model is not minimal at the place being typed."""


class TrivialFamilyError(ValueError):
    """The minimal model has constant discriminant (d = 0)."""


# -- binary forms -------------------------------------------------------------

class BinaryForm:
    """Homogeneous polynomial of fixed degree in (t0, t1)."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: Poly, degree: int):
        if degree < 0:
            raise ValueError("negative degree")
        if poly.degree > degree:
            raise ValueError(f"affine degree {poly.degree} exceeds form degree {degree}")
        self.poly = poly
        self.degree = degree

    @classmethod
    def from_coeffs(cls, field: NumberField, coeffs, degree: int) -> "BinaryForm":
        """Coefficients indexed by the exponent of t0."""
        return cls(Poly(field, coeffs), degree)

    @property
    def field(self) -> NumberField:
        return self.poly.field

    def coefficient(self, k: int) -> NFElement:
        """Coefficient of t0^k t1^(degree-k)."""
        return self.poly.coeff(k)

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.degree == other.degree \
            and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.degree))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("adding forms of different degrees")
        return BinaryForm(self.poly + other.poly, self.degree)

    def __neg__(self):
        return BinaryForm(-self.poly, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(self.poly * other.poly, self.degree + other.degree)
        return BinaryForm(self.poly * other, self.degree)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return BinaryForm(self.poly ** e, self.degree * e)

    def valuation(self, place: "Place") -> int:
        if not self.poly:
            raise ValueError("valuation of the zero form")
        if place.is_infinity:
            return self.degree - self.poly.degree
        return self.poly.valuation(place.pi)

    def inflate(self, p: int) -> "BinaryForm":
        """Substitute t0 -> t0^p, t1 -> t1^p."""
        return BinaryForm(self.poly.inflate(p), self.degree * p)

    def substitute_linear(self, a0, a1, b0, b1) -> "BinaryForm":
        """F(a0 s1 + b0 s0, a1 s1 + b1 s0) as a form in (s0, s1)."""
        k = self.field
        s = Poly.gen(k)
        l0 = Poly.const(k, a0) + s * k.coerce(b0)
        l1 = Poly.const(k, a1) + s * k.coerce(b1)
        out = Poly.zero(k)
        for i, c in enumerate(self.poly.coeffs):
            if c:
                out = out + (l0 ** i) * (l1 ** (self.degree - i)) * c
        return BinaryForm(out, self.degree)

    def to_string(self) -> str:
        return format_form(self.poly, self.degree)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"BinaryForm({self.to_string()}; degree={self.degree})"


def _monomial_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("t0" if i == 1 else f"t0^{i}")
    if j:
        parts.append("t1" if j == 1 else f"t1^{j}")
    return " ".join(parts)


def form_terms(poly: Poly, degree: int | None, suffix: str = "") -> list[tuple[str, str]]:
    """(sign, body) pairs, highest power of t0 (or t) first.

    With ``degree=None`` the terms are written affinely in ``t``.  Number-field
    coefficients are expanded into generator monomials so that no parentheses
    are needed.
    """
    out = []
    for i in range(poly.degree, -1, -1):
        c = poly.coeff(i)
        if not c:
            continue
        if degree is None:
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        else:
            mono = _monomial_str(i, degree - i)
        mono = " ".join(x for x in (mono, suffix) if x)
        names = c.field.names
        for q, exps in c.monomial_terms():
            gen = " ".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
            word = " ".join(x for x in (gen, mono) if x)
            a = abs(q)
            if not word:
                body = str(a)
            elif a == 1:
                body = word
            else:
                body = f"{a} {word}"
            out.append(("-" if q < 0 else "+", body))
    return out


def join_terms(terms) -> str:
    if not terms:
        return "0"
    sign, body = terms[0]
    s = body if sign == "+" else "-" + body
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def format_form(poly: Poly, degree: int | None) -> str:
    return join_terms(form_terms(poly, degree))


# -- places -------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible ``pi`` in t) or the place at infinity.

    Over a proper number field a finite place may be a block of conjugate
    places sharing one fiber type; ``degree`` then counts all of them.
    """

    pi: Poly | None = None

    def __post_init__(self):
        if self.pi is not None:
            if self.pi.degree < 1:
                raise ValueError("place polynomial must have positive degree")
            if not self.pi.is_monic():
                raise ValueError("place polynomial must be monic")

    @property
    def is_infinity(self) -> bool:
        return self.pi is None

    @property
    def is_zero(self) -> bool:
        return self.pi is not None and self.pi.degree == 1 and not self.pi.coeff(0)

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    @classmethod
    def finite(cls, pi: Poly) -> "Place":
        return cls(pi.monic())

    @classmethod
    def at(cls, field: NumberField, value) -> "Place":
        """Rational place t = value."""
        return cls(Poly(field, [-field.coerce(value), 1]))

    def sort_key(self):
        if self.pi is None:
            return (1, 0, ())
        return (0, self.pi.degree, tuple(tuple(str(c) for c in self.pi.field.flatten(x))
                                         for x in self.pi.c))

    def label(self) -> str:
        if self.pi is None:
            return "inf"
        if self.is_zero:
            return "0"
        return self.pi.to_string("t")

    def __str__(self):
        return self.label()


INFINITY = Place(None)


def zero_place(field: NumberField = QQ) -> Place:
    return Place(Poly.gen(field))


ZERO_PLACE = zero_place(QQ)


# -- Kodaira types --------------------------------------------------------------

_ADDITIVE_VDELTA = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
_ADDITIVE_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}
_ORDER = ["I", "II", "III", "IV", "I*", "IV*", "III*", "II*"]


@total_ordering
@dataclass(frozen=True)
class KodairaType:
    """Kodaira fiber type.  ``kind`` is one of I, I*, II, III, IV, IV*, III*, II*."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in _ORDER:
            raise ValueError(f"unknown Kodaira symbol {self.kind!r}")
        if self.n < 0:
            raise ValueError("index must be nonnegative")
        if self.n and self.kind not in ("I", "I*"):
            raise ValueError(f"type {self.kind} takes no index")

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        s = text.strip().replace("_", "")
        for kind in ("II*", "III*", "IV*", "III", "II", "IV"):
            if s == kind:
                return cls(kind)
        if s.startswith("I"):
            star = s.endswith("*")
            body = s[1:-1] if star else s[1:]
            if body.isdigit():
                return cls("I*" if star else "I", int(body))
        raise ValueError(f"cannot parse Kodaira type {text!r}")

    @property
    def v_delta(self) -> int:
        if self.kind == "I":
            return self.n
        if self.kind == "I*":
            return 6 + self.n
        return _ADDITIVE_VDELTA[self.kind]

    @property
    def components(self) -> int:
        if self.kind == "I":
            return max(self.n, 1)
        if self.kind == "I*":
            return 5 + self.n
        return _ADDITIVE_COMPONENTS[self.kind]

    @property
    def is_smooth(self) -> bool:
        return self.kind == "I" and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.kind == "I" and self.n > 0

    @property
    def is_additive(self) -> bool:
        return self.kind != "I"

    @property
    def is_potentially_good(self) -> bool:
        return self.kind in _ADDITIVE_VDELTA or (self.kind == "I*" and self.n == 0)

    def __str__(self):
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    def __repr__(self):
        return f"KodairaType({self})"

    def _key(self):
        return (_ORDER.index(self.kind), self.n)

    def __lt__(self, other):
        if not isinstance(other, KodairaType):
            return NotImplemented
        return (self.v_delta, self._key()) < (other.v_delta, other._key())


I0 = KodairaType("I", 0)


def classify_valuations(vf: int | None, vg: int | None, vd: int) -> KodairaType:
    """Kodaira type from valuations of f, g and the discriminant.

    ``None`` stands for an infinite valuation (f or g identically zero).
    Raises :class:`NonMinimalError` when v(f) >= 4 and v(g) >= 6.
    """
    inf = 10 ** 9
    a = inf if vf is None else vf
    b = inf if vg is None else vg
    if a >= 4 and b >= 6:
        raise NonMinimalError(f"non-minimal valuations v(f)={vf}, v(g)={vg}")
    if vd == 0:
        return I0
    if a == 0:
        return KodairaType("I", vd)
    if vd == 2 and b == 1:
        return KodairaType("II")
    if vd == 3 and a == 1:
        return KodairaType("III")
    if vd == 4 and b == 2:
        return KodairaType("IV")
    if vd == 6 and a >= 2 and b >= 3:
        return KodairaType("I*", 0)
    if vd > 6 and a == 2 and b == 3:
        return KodairaType("I*", vd - 6)
    if vd == 8 and b == 4:
        return KodairaType("IV*")
    if vd == 9 and a == 3:
        return KodairaType("III*")
    if vd == 10 and b == 5:
        return KodairaType("II*")
    raise ArithmeticError(f"valuations v(f)={vf}, v(g)={vg}, v(D)={vd} match no Kodaira type")


@dataclass(frozen=True)
class FiberData:
    place: Place
    type: KodairaType
    v_delta: int
    components: int
    v_f: int | None = None
    v_g: int | None = None

    @property
    def degree(self) -> int:
        return self.place.degree

    def __str__(self):
        return f"{self.type} at {self.place}"


@dataclass(frozen=True)
class FiberConfiguration:
    """Singular fibers of a minimal model, one entry per place."""

    fibers: tuple[FiberData, ...]
    total_delta_degree: int

    def at(self, place: Place) -> FiberData | None:
        for fd in self.fibers:
            if fd.place == place:
                return fd
        return None

    @property
    def at_zero(self) -> KodairaType:
        for fd in self.fibers:
            if fd.place.is_zero:
                return fd.type
        return I0

    @property
    def at_infinity(self) -> KodairaType:
        for fd in self.fibers:
            if fd.place.is_infinity:
                return fd.type
        return I0

    def remaining(self) -> list[KodairaType]:
        """Geometric fibers away from 0 and infinity (place degree expanded)."""
        out = []
        for fd in self.fibers:
            if not (fd.place.is_zero or fd.place.is_infinity):
                out.extend([fd.type] * fd.degree)
        return sorted(out)

    def geometric_types(self) -> list[KodairaType]:
        out = []
        for fd in self.fibers:
            out.extend([fd.type] * fd.degree)
        return sorted(out)

    def type_counter(self) -> Counter:
        return Counter(str(t) for t in self.geometric_types())

    def euler_sum(self) -> int:
        return sum(fd.degree * fd.v_delta for fd in self.fibers)

    def component_excess(self) -> int:
        """Sum over geometric fibers of (m_v - 1)."""
        return sum(fd.degree * (fd.components - 1) for fd in self.fibers)

    def singular_count(self) -> int:
        return sum(fd.degree for fd in self.fibers)

    def describe(self) -> str:
        c = Counter(str(t) for t in self.geometric_types())
        parts = []
        for t in sorted(set(self.geometric_types()), reverse=True):
            k = c[str(t)]
            parts.append(str(t) if k == 1 else f"{k}x{t}")
        return ", ".join(parts) if parts else "smooth"

    def __str__(self):
        return self.describe()


# -- models -------------------------------------------------------------------

class WeierstrassModel:
    """``y^2 = x^3 + f x + g`` with f, g binary forms of degrees 4d, 6d."""

    __slots__ = ("f", "g", "d", "field")

    def __init__(self, f: Poly, g: Poly, d: int, field: NumberField | None = None):
        k = field or (f.field if f.field.is_subfield_of(g.field) else g.field)
        f = f.change_field(k)
        g = g.change_field(k)
        if d < 0:
            raise ValueError("d must be nonnegative")
        if f.degree > 4 * d:
            raise ValueError(f"f has degree {f.degree} > 4d = {4 * d}")
        if g.degree > 6 * d:
            raise ValueError(f"g has degree {g.degree} > 6d = {6 * d}")
        if not f and not g:
            raise SingularModelError("f and g are both zero")
        self.f = f
        self.g = g
        self.d = d
        self.field = k

    @classmethod
    def from_forms(cls, f: BinaryForm, g: BinaryForm) -> "WeierstrassModel":
        if f and g:
            if f.degree * 3 != g.degree * 2 or f.degree % 4:
                raise ValueError("form degrees must be 4d and 6d")
            d = f.degree // 4
        elif f:
            if f.degree % 4:
                raise ValueError("deg f must be a multiple of 4")
            d = f.degree // 4
        else:
            if g.degree % 6:
                raise ValueError("deg g must be a multiple of 6")
            d = g.degree // 6
        return cls(f.poly, g.poly, d)

    @classmethod
    def affine(cls, f: Poly, g: Poly, d: int | None = None) -> "WeierstrassModel":
        """Model from affine polynomials, with the smallest admissible d by default."""
        if d is None:
            d = max(-(-max(f.degree, 0) // 4), -(-max(g.degree, 0) // 6))
        return cls(f, g, d)

    @classmethod
    def delsarte(cls, a, m: int, b, n: int, field: NumberField = QQ, d: int | None = None):
        """y^2 = x^3 + a t^m x + b t^n (affine)."""
        f = Poly.monomial(field, m, a) if a else Poly.zero(field)
        g = Poly.monomial(field, n, b) if b else Poly.zero(field)
        return cls.affine(f, g, d)

    @property
    def f_form(self) -> BinaryForm:
        return BinaryForm(self.f, 4 * self.d)

    @property
    def g_form(self) -> BinaryForm:
        return BinaryForm(self.g, 6 * self.d)

    def with_d(self, d: int) -> "WeierstrassModel":
        return WeierstrassModel(self.f, self.g, d, self.field)

    def change_field(self, field: NumberField) -> "WeierstrassModel":
        return WeierstrassModel(self.f.change_field(field), self.g.change_field(field), self.d, field)

    def is_isotrivial(self) -> bool:
        """True when the j-invariant is constant."""
        if not self.f or not self.g:
            return True
        # j constant iff f^3 / g^2 is constant
        f3, g2 = self.f ** 3, self.g ** 2
        if f3.degree != g2.degree:
            return False
        c = f3.lc() / g2.lc()
        return f3 == g2 * c

    def __eq__(self, other):
        return isinstance(other, WeierstrassModel) and self.d == other.d \
            and self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g, self.d))

    def to_string(self, affine: bool = False) -> str:
        deg_f = None if affine else 4 * self.d
        deg_g = None if affine else 6 * self.d
        terms = [("+", "x^3")]
        terms += form_terms(self.f, deg_f, "x")
        terms += form_terms(self.g, deg_g)
        return "y^2 = " + join_terms(terms)

    def rhs_string(self, affine: bool = False) -> str:
        return self.to_string(affine)[len("y^2 = "):]

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"WeierstrassModel({self.to_string()}; d={self.d})"

    def move_to_zero_infinity(self, a: tuple, b: tuple) -> "WeierstrassModel":
        """Change coordinates so the rational places a, b (as [t0:t1]) go to 0, infinity."""
        a0, a1 = (self.field.coerce(x) for x in a)
        b0, b1 = (self.field.coerce(x) for x in b)
        if not (a0 * b1 - a1 * b0):
            raise ValueError("the two places must be distinct")
        f = self.f_form.substitute_linear(a0, a1, b0, b1)
        g = self.g_form.substitute_linear(a0, a1, b0, b1)
        return WeierstrassModel(f.poly, g.poly, self.d, self.field)


def discriminant(m: WeierstrassModel) -> BinaryForm:
    """Delta = -16 (4 f^3 + 27 g^2), a form of degree 12d."""
    poly = (m.f ** 3 * 4 + m.g ** 2 * 27) * (-16)
    if not poly:
        raise SingularModelError("discriminant vanishes identically")
    return BinaryForm(poly, 12 * m.d)


def place_valuation(q, v: Place) -> int:
    """Order of vanishing of a binary form (or affine Poly) at a place."""
    if isinstance(q, Poly):
        if v.is_infinity:
            raise ValueError("valuation at infinity needs a BinaryForm")
        if not q:
            raise ValueError("valuation of the zero polynomial")
        return q.valuation(v.pi)
    return q.valuation(v)


def _val(poly: Poly, degree: int, v: Place) -> int | None:
    if not poly:
        return None
    if v.is_infinity:
        return degree - poly.degree
    return poly.valuation(v.pi)


def _gte(v: int | None, k: int) -> bool:
    return v is None or v >= k


def minimize_at(m: WeierstrassModel, v: Place) -> WeierstrassModel:
    """Divide out pi^4, pi^6 while v(f) >= 4 and v(g) >= 6."""
    f, g, d = m.f, m.g, m.d
    pi = None if v.is_infinity else v.pi.change_field(m.field)
    while _gte(_val(f, 4 * d, v), 4) and _gte(_val(g, 6 * d, v), 6):
        if d < v.degree:
            raise ArithmeticError("minimization would make d negative")
        if pi is not None:
            f = f.exact_div(pi ** 4) if f else f
            g = g.exact_div(pi ** 6) if g else g
        d -= v.degree
    if d == m.d:
        return m
    return WeierstrassModel(f, g, d, m.field)


def candidate_places(m: WeierstrassModel, extra: Iterable[Poly] = ()) -> list[Place]:
    """Finite places where the discriminant vanishes, plus infinity.

    Zero is always split off as its own place when it divides the
    discriminant; ``extra`` polynomials refine the split further.
    """
    disc = discriminant(m)
    k = m.field
    t = Poly.gen(k)
    rad = disc.poly.squarefree_part() if disc.poly.degree > 0 else Poly.one(k)
    splitters = [t, disc.poly] + [q for q in (m.f, m.g) if q] + [q.change_field(k) for q in extra]
    blocks = valuation_blocks(rad, splitters)
    places = []
    for b in blocks:
        if k is QQ and b.degree > 1:
            places.extend(Place(pi) for pi in factor_rational(b))
        else:
            places.append(Place(b))
    places.sort(key=Place.sort_key)
    return places + [INFINITY]


def minimize(m: WeierstrassModel) -> WeierstrassModel:
    """Globally minimal model: minimize at every finite place and at infinity."""
    k = m.field
    if m.f and m.g:
        common = m.f.gcd(m.g)
    else:
        common = (m.f or m.g).monic()
    if common.degree > 0:
        rad = common.squarefree_part()
        splitters = [Poly.gen(k)] + [q for q in (m.f, m.g) if q]
        for b in valuation_blocks(rad, splitters):
            m = minimize_at(m, Place(b))
    return minimize_at(m, INFINITY)


def is_minimal(m: WeierstrassModel) -> bool:
    return minimize(m) == m


def kodaira_type(m: WeierstrassModel, v: Place) -> FiberData:
    """Fiber type at a place of a model that is minimal there."""
    if v.pi is not None and v.pi.field is not m.field:
        v = Place(v.pi.change_field(m.field))
    disc = discriminant(m)
    vf = _val(m.f, 4 * m.d, v)
    vg = _val(m.g, 6 * m.d, v)
    vd = disc.valuation(v)
    kt = classify_valuations(vf, vg, vd)
    return FiberData(v, kt, vd, kt.components, vf, vg)


def fiber_configuration(m: WeierstrassModel, check_minimal: bool = True) -> FiberConfiguration:
    """All singular fibers of a globally minimal model."""
    if check_minimal and not is_minimal(m):
        raise NonMinimalError("fiber_configuration needs a globally minimal model")
    fibers = []
    for v in candidate_places(m):
        fd = kodaira_type(m, v)
        if fd.v_delta > 0:
            fibers.append(fd)
    cfg = FiberConfiguration(tuple(fibers), 12 * m.d)
    if cfg.euler_sum() != cfg.total_delta_degree:
        raise ArithmeticError(
            f"fiber degrees sum to {cfg.euler_sum()}, expected {cfg.total_delta_degree}"
        )
    return cfg


def fundamental_degree(m: WeierstrassModel) -> int:
    """deg(Delta_min) / 12 for a globally minimal model."""
    if not is_minimal(m):
        raise NonMinimalError("fundamental_degree needs a globally minimal model")
    if m.d == 0:
        raise TrivialFamilyError("constant discriminant: trivial family, degree 0")
    return m.d


def epsilon(m: WeierstrassModel) -> int:
    """12d - v0(Delta) - v_inf(Delta): discriminant degree away from 0 and infinity."""
    disc = discriminant(m)
    v0 = disc.valuation(zero_place(m.field))
    vi = disc.valuation(INFINITY)
    e = 12 * m.d - v0 - vi
    if e < 0:
        raise ArithmeticError("negative epsilon")
    return e

