"""Exact arithmetic in towers of number fields.

A tower is built one level at a time: ``QQ.extend(modulus, name)`` adjoins a
root of a monic polynomial whose coefficients live in the field built so far.
Elements are stored as nested tuples of rationals (``gmpy2.mpq``); the
flattened coefficient vector is available as :attr:`NFElement.rep`.

Irreducibility of the moduli is not checked.  A reducible modulus shows up
lazily as :class:`NotInvertibleError` the first time a zero divisor is
inverted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "NumberField",
    "RationalField",
    "ExtensionField",
    "NFElement",
    "NotInvertibleError",
    "QQ",
    "field_tower_create",
    "to_rational",
]


class NotInvertibleError(ArithmeticError):
    """Raised when a nonzero element has no inverse (reducible modulus)."""

    def __init__(self, level: int, name: str):
        super().__init__(
            f"zero divisor encountered: modulus at level {level} ({name!r}) is reducible"
        )
        self.level = level
        self.name = name


_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(x) -> mpq:
    if isinstance(x, type(_ZERO)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class NumberField:
    """Common interface for the rationals and for extension levels.

    Subclasses implement arithmetic on *raw* values (``mpq`` for the
    rationals, tuples of base-raw values for extensions); user code
    works with :class:`NFElement` wrappers.
    """

    height: int
    degree: int
    names: tuple[str, ...]

    # raw arithmetic -- overridden
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def is_zero_raw(self, a) -> bool: raise NotImplementedError
    def raw_from_rational(self, q: mpq): raise NotImplementedError
    def flatten(self, a) -> list: raise NotImplementedError
    def unflatten(self, vec: Sequence): raise NotImplementedError
    def scale(self, a, q: mpq): raise NotImplementedError

    # tower structure
    def tower(self) -> list["NumberField"]:
        """Fields from the rationals up to ``self``, inclusive."""
        out = []
        k = self
        while k is not None:
            out.append(k)
            k = getattr(k, "base", None)
        return out[::-1]

    def is_subfield_of(self, other: "NumberField") -> bool:
        return self in other.tower()

    def embed_raw(self, raw, source: "NumberField"):
        """Lift a raw value of a subfield ``source`` into ``self``."""
        if source is self:
            return raw
        if not source.is_subfield_of(self):
            raise ValueError(f"{source} is not a subfield of {self}")
        return self._embed_from(raw, source)

    def _embed_from(self, raw, source):
        raise NotImplementedError

    # element constructors
    def __call__(self, x) -> "NFElement":
        return self.coerce(x)

    def coerce(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            if x.field is self:
                return x
            return NFElement(self, self.embed_raw(x.raw, x.field))
        return NFElement(self, self.raw_from_rational(to_rational(x)))

    def coerce_raw(self, x):
        if isinstance(x, NFElement):
            if x.field is self:
                return x.raw
            return self.embed_raw(x.raw, x.field)
        return self.raw_from_rational(to_rational(x))

    @property
    def zero(self) -> "NFElement":
        return NFElement(self, self.raw_from_rational(_ZERO))

    @property
    def one(self) -> "NFElement":
        return NFElement(self, self.raw_from_rational(_ONE))

    def from_rep(self, vec: Sequence) -> "NFElement":
        if len(vec) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(vec)}")
        return NFElement(self, self.unflatten([to_rational(v) for v in vec]))

    def gens(self) -> list["NFElement"]:
        """Generators of every level, embedded in ``self`` (bottom first)."""
        return [self.coerce(k.gen) for k in self.tower()[1:]]

    def gen_by_name(self) -> dict[str, "NFElement"]:
        return dict(zip(self.names, self.gens()))


class RationalField(NumberField):
    height = 0
    degree = 1
    names = ()
    base = None

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / a

    def is_zero_raw(self, a):
        return not a

    def raw_from_rational(self, q):
        return q

    def flatten(self, a):
        return [a]

    def unflatten(self, vec):
        return vec[0]

    def scale(self, a, q):
        return a * q

    def _embed_from(self, raw, source):
        raise ValueError("QQ has no proper subfields")

    def __reduce__(self):
        return (_qq, ())


def _qq():
    return QQ


QQ = RationalField()


class ExtensionField(NumberField):
    """``base[y] / (modulus(y))`` for a monic ``modulus`` over ``base``."""

    def __init__(self, base: NumberField, modulus: Sequence, name: str):
        mod = [base.coerce_raw(c) for c in modulus]
        while len(mod) > 1 and base.is_zero_raw(mod[-1]):
            mod.pop()
        n = len(mod) - 1
        if n < 1:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != base.raw_from_rational(_ONE):
            raise ValueError(f"modulus for {name!r} is not monic")
        self.base = base
        self.name = name
        self.rel_degree = n
        self.modulus = tuple(mod)
        self.height = base.height + 1
        self.degree = base.degree * n
        self.names = base.names + (name,)
        self._bzero = base.raw_from_rational(_ZERO)
        self._bone = base.raw_from_rational(_ONE)
        # x^n = -sum(m_i x^i); keep only the nonzero terms
        self._red = tuple(
            (i, base.neg(c)) for i, c in enumerate(mod[:-1]) if not base.is_zero_raw(c)
        )
        self._rational_base = base.height == 0
        self.gen = NFElement(self, self._monomial(1))

    def __repr__(self):
        return f"NumberField({'/'.join(self.names)}, degree={self.degree})"

    def _monomial(self, k):
        if k >= self.rel_degree:
            raise ValueError("monomial degree out of range")
        v = [self._bzero] * self.rel_degree
        v[k] = self._bone
        return tuple(v)

    def modulus_poly(self):
        return [NFElement(self.base, c) for c in self.modulus]

    # -- raw arithmetic ----------------------------------------------------
    def add(self, a, b):
        if self._rational_base:
            return tuple([x + y for x, y in zip(a, b)])
        add = self.base.add
        return tuple([add(x, y) for x, y in zip(a, b)])

    def sub(self, a, b):
        if self._rational_base:
            return tuple([x - y for x, y in zip(a, b)])
        sub = self.base.sub
        return tuple([sub(x, y) for x, y in zip(a, b)])

    def neg(self, a):
        if self._rational_base:
            return tuple([-x for x in a])
        neg = self.base.neg
        return tuple([neg(x) for x in a])

    def scale(self, a, q):
        if self._rational_base:
            return tuple([x * q for x in a])
        sc = self.base.scale
        return tuple([sc(x, q) for x in a])

    def is_zero_raw(self, a):
        if self._rational_base:
            return not any(a)
        z = self.base.is_zero_raw
        return all(z(x) for x in a)

    def raw_from_rational(self, q):
        v = [self._bzero] * self.rel_degree
        v[0] = self.base.raw_from_rational(q)
        return tuple(v)

    def flatten(self, a):
        out = []
        for x in a:
            out.extend(self.base.flatten(x))
        return out

    def unflatten(self, vec):
        m = self.base.degree
        return tuple(self.base.unflatten(vec[i * m:(i + 1) * m]) for i in range(self.rel_degree))

    def _embed_from(self, raw, source):
        inner = self.base.embed_raw(raw, source)
        v = [self._bzero] * self.rel_degree
        v[0] = inner
        return tuple(v)

    def _reduce(self, c):
        n = self.rel_degree
        red = self._red
        if self._rational_base:
            for k in range(len(c) - 1, n - 1, -1):
                top = c[k]
                if top:
                    off = k - n
                    for i, m in red:
                        c[off + i] += top * m
            return tuple(c[:n])
        bmul, badd, bz = self.base.mul, self.base.add, self.base.is_zero_raw
        for k in range(len(c) - 1, n - 1, -1):
            top = c[k]
            if not bz(top):
                off = k - n
                for i, m in red:
                    c[off + i] = badd(c[off + i], bmul(top, m))
        return tuple(c[:n])

    def mul(self, a, b):
        n = self.rel_degree
        if self._rational_base:
            c = [_ZERO] * (2 * n - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            c[i + j] += x * y
            return self._reduce(c)
        base = self.base
        bmul, badd, bz = base.mul, base.add, base.is_zero_raw
        c = [self._bzero] * (2 * n - 1)
        nzb = [(j, y) for j, y in enumerate(b) if not bz(y)]
        for i, x in enumerate(a):
            if bz(x):
                continue
            for j, y in nzb:
                c[i + j] = badd(c[i + j], bmul(x, y))
        return self._reduce(c)

    def inv(self, a):
        """Inverse via the extended Euclidean algorithm over the base."""
        if self.is_zero_raw(a):
            raise ZeroDivisionError(f"division by zero in {self!r}")
        base = self.base
        r0 = list(self.modulus)
        r1 = _ptrim(base, list(a))
        s0 = []
        s1 = [self._bone]
        while len(r1) > 1:
            q, r = _pdivmod(base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(base, s0, _pmul(base, q, s1))
        if not r1:
            raise NotInvertibleError(self.height, self.name)
        c = base.inv(r1[0])
        out = [base.mul(x, c) for x in s1]
        out += [self._bzero] * (self.rel_degree - len(out))
        return tuple(out)


# -- dense polynomial helpers over raw base values (used by inversion) ------

def _ptrim(k, p):
    while p and k.is_zero_raw(p[-1]):
        p.pop()
    return p


def _psub(k, a, b):
    n = max(len(a), len(b))
    z = k.raw_from_rational(_ZERO)
    out = [k.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return _ptrim(k, out)


def _pmul(k, a, b):
    if not a or not b:
        return []
    z = k.raw_from_rational(_ZERO)
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = k.add(out[i + j], k.mul(x, y))
    return _ptrim(k, out)


def _pdivmod(k, a, b):
    a = list(a)
    db = len(b) - 1
    lead_inv = k.inv(b[-1])
    z = k.raw_from_rational(_ZERO)
    q = [z] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if k.is_zero_raw(c):
            continue
        c = k.mul(c, lead_inv)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = k.sub(a[i - db + j], k.mul(c, b[j]))
    return _ptrim(k, q), _ptrim(k, a[:db])


class NFElement:
    """An immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "raw")

    def __init__(self, field: NumberField, raw):
        self.field = field
        self.raw = raw

    @property
    def rep(self) -> list[mpq]:
        """Flattened coefficient vector, length ``field.degree``."""
        return self.field.flatten(self.raw)

    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is self.field:
                return other.raw
            if other.field.is_subfield_of(self.field):
                return self.field.embed_raw(other.raw, other.field)
            return NotImplemented
        try:
            return self.field.raw_from_rational(to_rational(other))
        except TypeError:
            return NotImplemented

    def _lift(self, other):
        # self lives in a subfield of other's field
        if isinstance(other, NFElement) and other.field is not self.field \
                and self.field.is_subfield_of(other.field):
            return other.field.coerce(self)
        return None

    def __add__(self, other):
        up = self._lift(other)
        if up is not None:
            return up + other
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        up = self._lift(other)
        if up is not None:
            return up - other
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.sub(o, self.raw))

    def __neg__(self):
        return NFElement(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        up = self._lift(other)
        if up is not None:
            return up * other
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return NFElement(self.field, self.field.scale(self.raw, to_rational(other)))
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        return NFElement(self.field, self.field.inv(self.raw))

    def __truediv__(self, other):
        up = self._lift(other)
        if up is not None:
            return up / other
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.mul(self.raw, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, self.field.mul(o, self.field.inv(self.raw)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        k = self.field
        result = k.raw_from_rational(_ONE)
        base = self.raw
        while e:
            if e & 1:
                result = k.mul(result, base)
            e >>= 1
            if e:
                base = k.mul(base, base)
        return NFElement(k, result)

    def is_zero(self) -> bool:
        return self.field.is_zero_raw(self.raw)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(not c for c in self.rep[1:])

    def to_rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rep[0]

    def __eq__(self, other):
        if isinstance(other, NFElement) and other.field is not self.field:
            if self.field.is_subfield_of(other.field):
                return other.field.coerce(self).raw == other.raw
            if other.field.is_subfield_of(self.field):
                return self.field.coerce(other).raw == self.raw
            return False
        o = self._other(other)
        if o is NotImplemented:
            return False
        return self.raw == o

    def __hash__(self):
        if self.is_rational():
            return hash(self.rep[0])
        return hash(tuple(self.rep))

    def monomial_terms(self) -> list[tuple[mpq, tuple[int, ...]]]:
        """Nonzero terms as (rational coefficient, exponent per level)."""
        out = []
        _terms(self.field, self.raw, (), out)
        return out

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"NFElement({self})"


def _terms(k, raw, suffix, out):
    if k.height == 0:
        if raw:
            out.append((raw, suffix))
        return
    for i in range(len(raw) - 1, -1, -1):
        _terms(k.base, raw[i], (i,) + suffix, out)


def format_element(x: NFElement) -> str:
    terms = x.monomial_terms()
    if not terms:
        return "0"
    names = x.field.names
    parts = []
    for q, exps in terms:
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
        )
        sign = "-" if q < 0 else "+"
        a = abs(q)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        parts.append((sign, body))
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def field_tower_create(moduli: Iterable, names: Sequence[str] | None = None) -> NumberField:
    """Build a tower of extensions of QQ.

    Each modulus is either a coefficient sequence (low degree first) or an
    object with a ``coeffs`` attribute over the field built so far.  An
    empty list returns ``QQ``.
    """
    moduli = list(moduli)
    if names is None:
        names = ["a", "b", "c", "d", "e"][:len(moduli)] if len(moduli) <= 5 else \
            [f"a{i}" for i in range(len(moduli))]
    k: NumberField = QQ
    for mod, name in zip(moduli, names):
        owner = getattr(mod, "field", None)
        coeffs = list(getattr(mod, "coeffs", mod))
        if owner is not None and owner is not k:
            raise ValueError(
                f"modulus for {name!r} is defined over {owner!r}, expected {k!r}"
            )
        for c in coeffs:
            if isinstance(c, NFElement) and not c.field.is_subfield_of(k):
                raise ValueError(
                    f"coefficient {c} of modulus {name!r} is not in the levels below it"
                )
        k = ExtensionField(k, coeffs, name)
    return k
