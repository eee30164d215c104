"""Dense univariate polynomials and rational functions over a number field."""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import NFElement, NumberField, QQ, to_rational

__all__ = ["Poly", "RatFunc", "ratfunc_normalize"]


class Poly:
    """Polynomial in one variable, coefficients low degree first.

    Coefficients are kept as raw field values; :meth:`coeff` wraps them.
    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: NumberField, coeffs: Iterable = (), *, _raw: bool = False):
        self.field = field
        if _raw:
            c = list(coeffs)
        else:
            c = [field.coerce_raw(x) for x in coeffs]
        z = field.is_zero_raw
        while c and z(c[-1]):
            c.pop()
        self.c = tuple(c)
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field: NumberField = QQ) -> "Poly":
        return cls(field, (), _raw=True)

    @classmethod
    def const(cls, field: NumberField, value) -> "Poly":
        return cls(field, [field.coerce_raw(value)], _raw=True)

    @classmethod
    def one(cls, field: NumberField = QQ) -> "Poly":
        return cls.const(field, 1)

    @classmethod
    def monomial(cls, field: NumberField, k: int, coeff=1) -> "Poly":
        z = field.raw_from_rational(to_rational(0))
        return cls(field, [z] * k + [field.coerce_raw(coeff)], _raw=True)

    @classmethod
    def gen(cls, field: NumberField = QQ) -> "Poly":
        return cls.monomial(field, 1)

    def _new(self, c) -> "Poly":
        return Poly(self.field, c, _raw=True)

    # -- basic accessors ---------------------------------------------------
    @property
    def coeffs(self) -> list[NFElement]:
        return [NFElement(self.field, x) for x in self.c]

    def coeff(self, k: int) -> NFElement:
        if 0 <= k < len(self.c):
            return NFElement(self.field, self.c[k])
        return self.field.zero

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def lc(self) -> NFElement:
        if not self.c:
            return self.field.zero
        return NFElement(self.field, self.c[-1])

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == self.field.raw_from_rational(to_rational(1))

    def valuation_at_zero(self) -> int:
        """Order of vanishing at t = 0."""
        if not self.c:
            raise ValueError("valuation of the zero polynomial")
        z = self.field.is_zero_raw
        for i, x in enumerate(self.c):
            if not z(x):
                return i
        raise AssertionError("unreachable")

    def change_field(self, field: NumberField) -> "Poly":
        if field is self.field:
            return self
        return Poly(field, [field.embed_raw(x, self.field) for x in self.c], _raw=True)

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field is self.field:
                return other
            if other.field.is_subfield_of(self.field):
                return other.change_field(self.field)
            return None
        try:
            return Poly.const(self.field, other)
        except (TypeError, ValueError):
            return None

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Poly) and other.field is not self.field \
                and self.field.is_subfield_of(other.field):
            return self.change_field(other.field) + other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self.field
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = k.add(out[i], x)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return self._new([neg(x) for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Poly) and self.field.is_subfield_of(other.field):
                return self.change_field(other.field) - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly) and other.field is not self.field \
                and self.field.is_subfield_of(other.field):
            return self.change_field(other.field) * other
        if isinstance(other, Poly):
            o = self._coerce(other)
            if o is None:
                return NotImplemented
            return self._new(_mul_raw(self.field, self.c, o.c))
        try:
            s = self.field.coerce_raw(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.scale_raw(s)

    __rmul__ = __mul__

    def scale_raw(self, s) -> "Poly":
        k = self.field
        if k.is_zero_raw(s):
            return Poly.zero(k)
        return self._new([k.mul(x, s) for x in self.c])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                if other.field.is_subfield_of(self.field):
                    other = other.change_field(self.field)
                elif self.field.is_subfield_of(other.field):
                    return self.change_field(other.field).c == other.c
                else:
                    return False
            return self.c == other.c
        o = self._coerce(other)
        return o is not None and self.c == o.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(tuple(self.field.flatten(x)) for x in self.c))
        return self._hash

    # -- division ----------------------------------------------------------
    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o is None or not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _divmod_raw(self.field, self.c, o.c)
        return self._new(q), self._new(r)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "Poly") -> bool:
        return not other.divmod(self)[1]

    def monic(self) -> "Poly":
        if not self.c:
            return self
        k = self.field
        inv = k.inv(self.c[-1])
        return self._new([k.mul(x, inv) for x in self.c[:-1]] + [k.raw_from_rational(to_rational(1))])

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, self._coerce(other)
        if b is None:
            raise TypeError("gcd with incompatible operand")
        while b.c:
            if len(b.c) == 1:
                return Poly.one(self.field)
            a, b = b, a.divmod(b)[1].monic()
        return a.monic()

    def valuation(self, pi: "Poly") -> int:
        """Largest k with pi^k dividing self."""
        if not self.c:
            raise ValueError("valuation of the zero polynomial")
        if pi.degree < 1:
            raise ValueError("valuation with respect to a unit")
        if pi.degree == 1 and pi.c[0] == self.field.raw_from_rational(to_rational(0)):
            return self.valuation_at_zero()
        k = 0
        cur = self
        while True:
            q, r = cur.divmod(pi)
            if r:
                return k
            cur = q
            k += 1

    # -- calculus and substitutions -----------------------------------------
    def derivative(self) -> "Poly":
        return self._new([self.field.scale(x, to_rational(i)) for i, x in enumerate(self.c) if i])

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        """Horner evaluation at a field element, rational, or polynomial."""
        if isinstance(x, Poly):
            acc = Poly.zero(x.field if self.field.is_subfield_of(x.field) else self.field)
            for a in reversed(self.c):
                acc = acc * x + NFElement(self.field, a)
            return acc
        k = self.field
        if isinstance(x, NFElement) and x.field is not k and k.is_subfield_of(x.field):
            return self.change_field(x.field).evaluate(x)
        xr = k.coerce_raw(x)
        acc = k.raw_from_rational(to_rational(0))
        for a in reversed(self.c):
            acc = k.add(k.mul(acc, xr), a)
        return NFElement(k, acc)

    def substitute_scaled(self, s) -> "Poly":
        """p(t) -> p(s t)."""
        k = self.field
        sr = k.coerce_raw(s)
        out = []
        power = k.raw_from_rational(to_rational(1))
        for x in self.c:
            out.append(k.mul(x, power))
            power = k.mul(power, sr)
        return self._new(out)

    def inflate(self, p: int) -> "Poly":
        """p(t) -> p(t^p)."""
        if p < 1:
            raise ValueError("inflation degree must be positive")
        if not self.c:
            return self
        z = self.field.raw_from_rational(to_rational(0))
        out = [z] * (p * self.degree + 1)
        for i, x in enumerate(self.c):
            out[p * i] = x
        return self._new(out)

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k (k >= 0) or drop the lowest -k coefficients, which must vanish."""
        if not self.c:
            return self
        if k >= 0:
            z = self.field.raw_from_rational(to_rational(0))
            return self._new([z] * k + list(self.c))
        if self.valuation_at_zero() < -k:
            raise ArithmeticError("shift would drop nonzero coefficients")
        return self._new(self.c[-k:])

    def reverse(self, n: int | None = None) -> "Poly":
        """t^n p(1/t); n defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length shorter than degree")
        z = self.field.raw_from_rational(to_rational(0))
        c = list(self.c) + [z] * (n + 1 - len(self.c))
        return self._new(c[::-1])

    def squarefree_part(self) -> "Poly":
        if self.degree < 1:
            return Poly.one(self.field)
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def is_squarefree(self) -> bool:
        return self.degree < 1 or self.gcd(self.derivative()).degree == 0

    # -- display -----------------------------------------------------------
    def to_string(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            x = NFElement(self.field, self.c[i])
            if not x:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            parts.append(_term(x, mono))
        return _join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self.to_string()})"


def _term(x: NFElement, mono: str) -> tuple[str, str]:
    """Render coefficient * monomial as (sign, body)."""
    terms = x.monomial_terms()
    if len(terms) == 1:
        q, _ = terms[0]
        s = str(x)
        sign = "-" if s.startswith("-") else "+"
        body = s.lstrip("-")
        if mono:
            if body == "1":
                body = mono
            else:
                body = f"{body}*{mono}"
        return sign, body
    s = f"({x})"
    return "+", f"{s}*{mono}" if mono else s


def _join(parts) -> str:
    sign, body = parts[0]
    s = body if sign == "+" else "-" + body
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _mul_raw(k: NumberField, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    z = k.raw_from_rational(to_rational(0))
    add, mul, isz = k.add, k.mul, k.is_zero_raw
    out = [z] * (len(a) + len(b) - 1)
    bnz = [(j, y) for j, y in enumerate(b) if not isz(y)]
    for i, x in enumerate(a):
        if isz(x):
            continue
        for j, y in bnz:
            out[i + j] = add(out[i + j], mul(x, y))
    return out


def _divmod_raw(k: NumberField, a: Sequence, b: Sequence):
    a = list(a)
    db = len(b) - 1
    z = k.raw_from_rational(to_rational(0))
    if len(a) <= db:
        return [], a
    one = k.raw_from_rational(to_rational(1))
    lead_inv = None if b[-1] == one else k.inv(b[-1])
    q = [z] * (len(a) - db)
    add, mul, neg, isz = k.add, k.mul, k.neg, k.is_zero_raw
    bnz = [(j, neg(y)) for j, y in enumerate(b[:-1]) if not isz(y)]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if isz(c):
            continue
        if lead_inv is not None:
            c = mul(c, lead_inv)
        q[i - db] = c
        off = i - db
        for j, y in bnz:
            a[off + j] = add(a[off + j], mul(c, y))
        a[i] = z
    return q, a[:db]


class RatFunc:
    """Quotient num/den of polynomials with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _normalized: bool = False):
        if den is None:
            den = Poly.one(num.field)
        if _normalized:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.field is not den.field:
            if num.field.is_subfield_of(den.field):
                num = num.change_field(den.field)
            else:
                den = den.change_field(num.field)
        if not num:
            self.num, self.den = num, Poly.one(num.field)
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc()
        if not den.is_monic():
            inv = lc.inverse().raw
            num = num.scale_raw(inv)
            den = den.monic()
        self.num, self.den = num, den

    @property
    def field(self) -> NumberField:
        return self.num.field

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field), _normalized=True)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.field is self.field:
                return other
            if other.field.is_subfield_of(self.field):
                return RatFunc(other.num.change_field(self.field),
                               other.den.change_field(self.field), _normalized=True)
            return None
        if isinstance(other, Poly):
            return RatFunc.from_poly(other.change_field(self.field)) \
                if other.field.is_subfield_of(self.field) else None
        try:
            return RatFunc.from_poly(Poly.const(self.field, other))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree == 0:
                return RatFunc(self.num + o.num, self.den, _normalized=True)
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RatFunc(self.num * o.num, self.den, _normalized=True)
        # cross-cancel before multiplying to keep degrees small
        g1 = self.num.gcd(o.den) if self.num and o.den.degree > 0 else None
        g2 = o.num.gcd(self.den) if o.num and self.den.degree > 0 else None
        n1, d2 = (self.num, o.den) if g1 is None or g1.degree == 0 else \
            (self.num.exact_div(g1), o.den.exact_div(g1))
        n2, d1 = (o.num, self.den) if g2 is None or g2.degree == 0 else \
            (o.num.exact_div(g2), self.den.exact_div(g2))
        num, den = n1 * n2, d1 * d2
        if not num:
            return RatFunc(num, Poly.one(self.field), _normalized=True)
        return RatFunc(num, den) if not den.is_monic() else RatFunc(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e, _normalized=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def substitute_scaled(self, s) -> "RatFunc":
        """f(t) -> f(s t), s a nonzero constant."""
        num = self.num.substitute_scaled(s)
        den = self.den.substitute_scaled(s)
        return RatFunc(num, den)

    def evaluate(self, x) -> NFElement:
        d = self.den.evaluate(x)
        if not d:
            raise ZeroDivisionError("pole of the rational function")
        return self.num.evaluate(x) / d

    def change_field(self, field: NumberField) -> "RatFunc":
        return RatFunc(self.num.change_field(field), self.den.change_field(field), _normalized=True)

    def to_string(self, var: str = "t") -> str:
        n = self.num.to_string(var)
        if self.den.degree == 0:
            return n
        d = self.den.to_string(var)
        # parenthesize only sums
        wrap = lambda s: f"({s})" if " + " in s or " - " in s[1:] else s
        return f"{wrap(n)}/{wrap(d)}"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RatFunc({self.to_string()})"


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical form: gcd-free with monic denominator."""
    return RatFunc(num, den)
