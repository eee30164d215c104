"""Text formats: Weierstrass models, field towers, and Z[sigma] recipes.

Model grammar (whitespace is free; '*' between factors is optional)::

    model    := "y^2" "=" expr
    expr     := ["+"|"-"] term (("+"|"-") term)*
    term     := [coeff] ["*"] factor ("*"? factor)*  |  coeff
    factor   := name ["^" nat]
    coeff    := integer ["/" integer]

Names are ``x``, ``t`` (affine) or ``t0``/``t1`` (homogeneous), and the
generator names of the coefficient field.  Field specs look like
``"c: c^5 - 2; z: z^4 + z^3 + z^2 + z + 1"``: each level names its generator
and gives a monic modulus whose coefficients may use earlier generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import QQ, NFElement, NumberField, Poly
from ..algebra.field import ExtensionField
from ..weierstrass import WeierstrassModel

__all__ = [
    "ParseError",
    "parse_model",
    "parse_field",
    "parse_poly",
    "parse_element",
    "format_field",
    "parse_recipe",
    "format_model",
]


class ParseError(ValueError):
    """Malformed input; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.message = message
        self.position = position
        self.text = text
        loc = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{loc}")

    def pointer(self) -> str:
        if self.text is None or self.position is None:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^=();:":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Stream:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, value: str) -> bool:
        if self.cur.kind == "op" and self.cur.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            got = self.cur.value or "end of input"
            raise ParseError(f"expected {value!r}, got {got!r}", self.cur.pos, self.text)

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.pos, self.text)


# A term is (coefficient, {name: exponent}).
Term = tuple[Fraction, dict]


def _parse_nat(s: _Stream) -> int:
    tok = s.cur
    if tok.kind != "num":
        s.error("expected a natural number exponent")
    s.take()
    return int(tok.value)


def _parse_terms(s: _Stream, names: set[str], stop: tuple[str, ...] = ()) -> list[Term]:
    terms = []
    sign = 1
    if s.accept("-"):
        sign = -1
    else:
        s.accept("+")
    while True:
        terms.append(_parse_term(s, names, sign))
        if s.accept("+"):
            sign = 1
        elif s.accept("-"):
            sign = -1
        else:
            break
    if s.cur.kind != "end" and not (s.cur.kind == "op" and s.cur.value in stop):
        s.error(f"unexpected {s.cur.value!r}")
    return terms


def _parse_term(s: _Stream, names: set[str], sign: int) -> Term:
    coeff = Fraction(sign)
    monos: dict[str, int] = {}
    seen_any = False
    if s.cur.kind == "num":
        num = int(s.take().value)
        den = 1
        if s.accept("/"):
            tok = s.cur
            if tok.kind != "num":
                s.error("expected an integer denominator")
            den = int(s.take().value)
            if den == 0:
                s.error("zero denominator", tok)
        coeff *= Fraction(num, den)
        seen_any = True
    while True:
        star = s.accept("*")
        tok = s.cur
        if tok.kind != "name":
            if star:
                s.error("expected a name after '*'")
            break
        if tok.value not in names:
            s.error(f"unknown name {tok.value!r}")
        s.take()
        e = 1
        if s.accept("^"):
            e = _parse_nat(s)
        monos[tok.value] = monos.get(tok.value, 0) + e
        seen_any = True
    if not seen_any:
        s.error("expected a term")
    return coeff, monos


def _gen_value(field: NumberField, gens: dict[str, NFElement], monos: dict[str, int]) -> NFElement:
    v = field.one
    for name, e in monos.items():
        if name in gens:
            v = v * (gens[name] ** e)
    return v


# -- field towers -----------------------------------------------------------------------

def parse_field(spec: str | None) -> NumberField:
    """Build a tower from ``"name: modulus; name: modulus"`` (empty for QQ)."""
    if spec is None or not spec.strip():
        return QQ
    field: NumberField = QQ
    offset = 0
    for chunk in spec.split(";"):
        start = offset
        offset += len(chunk) + 1
        if not chunk.strip():
            continue
        if ":" not in chunk:
            raise ParseError("field level must look like 'name: modulus'", start, spec)
        name, body = chunk.split(":", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name) or name in ("x", "y", "t", "t0", "t1"):
            raise ParseError(f"invalid generator name {name!r}", start, spec)
        if name in field.names:
            raise ParseError(f"generator {name!r} defined twice", start, spec)
        body_pos = start + len(chunk.split(":", 1)[0]) + 1
        s = _Stream(body)
        known = set(field.names) | {name}
        try:
            terms = _parse_terms(s, known)
        except ParseError as e:
            raise ParseError(e.message, body_pos + (e.position or 0), spec) from None
        gens = field.gen_by_name()
        coeffs: dict[int, NFElement] = {}
        for c, monos in terms:
            k = monos.get(name, 0)
            rest = {n: e for n, e in monos.items() if n != name}
            coeffs[k] = coeffs.get(k, field.zero) + _gen_value(field, gens, rest) * c
        deg = max(k for k in coeffs if coeffs[k]) if any(coeffs.values()) else 0
        if deg < 1:
            raise ParseError(f"modulus for {name!r} must have degree >= 1", body_pos, spec)
        if coeffs[deg] != field.one:
            raise ParseError(f"modulus for {name!r} is not monic", body_pos, spec)
        mod = [coeffs.get(i, field.zero) for i in range(deg + 1)]
        field = ExtensionField(field, mod, name)
    return field


def format_field(field: NumberField) -> str:
    parts = []
    for level in field.tower()[1:]:
        poly = Poly(level.base, [NFElement(level.base, c) for c in level.modulus])
        terms = []
        for i in range(poly.degree, -1, -1):
            c = poly.coeff(i)
            if not c:
                continue
            mono = "" if i == 0 else (level.name if i == 1 else f"{level.name}^{i}")
            names = level.base.names
            for q, exps in c.monomial_terms():
                gen = " ".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
                word = " ".join(w for w in (gen, mono) if w)
                a = abs(q)
                body = str(a) if not word else (word if a == 1 else f"{a} {word}")
                terms.append(("-" if q < 0 else "+", body))
        s = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        parts.append(f"{level.name}: {s}")
    return "; ".join(parts)


# -- polynomials in t ----------------------------------------------------------------------

def parse_poly(text: str, field: NumberField = QQ, var: str = "t") -> Poly:
    """Affine polynomial in ``var`` with coefficients in ``field``."""
    s = _Stream(text)
    terms = _parse_terms(s, set(field.names) | {var})
    gens = field.gen_by_name()
    out = Poly.zero(field)
    for c, monos in terms:
        k = monos.get(var, 0)
        rest = {n: e for n, e in monos.items() if n != var}
        out = out + Poly.monomial(field, k, _gen_value(field, gens, rest) * c)
    return out


def parse_element(text: str, field: NumberField = QQ) -> NFElement:
    """A constant of ``field`` written in its generator names."""
    p = parse_poly(text, field, var="t") if text.strip() else Poly.zero(field)
    if p.degree > 0:
        raise ParseError("expected a field element, found a polynomial in t", 0, text)
    return p.coeff(0) if p.degree == 0 else field.zero


# -- models ---------------------------------------------------------------------------------

def parse_model(text: str, field: NumberField | str | None = None) -> WeierstrassModel:
    """Parse ``y^2 = x^3 + F x + G`` (affine in t or homogeneous in t0, t1)."""
    if not isinstance(field, NumberField):
        field = parse_field(field)
    s = _Stream(text)
    tok = s.cur
    if not (tok.kind == "name" and tok.value == "y"):
        s.error("model must start with 'y^2 ='")
    s.take()
    s.expect("^")
    two = s.cur
    if _parse_nat(s) != 2:
        s.error("left-hand side must be y^2", two)
    s.expect("=")
    names = set(field.names) | {"x", "t", "t0", "t1"}
    rhs_start = s.cur.pos
    terms = _parse_terms(s, names)

    uses_affine = any("t" in m for _, m in terms)
    uses_homog = any(("t0" in m or "t1" in m) for _, m in terms)
    if uses_affine and uses_homog:
        raise ParseError("mix of affine 't' and homogeneous 't0', 't1'", rhs_start, text)

    gens = field.gen_by_name()
    cubic = Fraction(0)
    f_terms: list[tuple[NFElement, int, int]] = []
    g_terms: list[tuple[NFElement, int, int]] = []
    for c, monos in terms:
        ex = monos.get("x", 0)
        rest = {n: e for n, e in monos.items() if n not in ("x", "t", "t0", "t1")}
        coeff = _gen_value(field, gens, rest) * c
        i = monos.get("t0", 0) if uses_homog else monos.get("t", 0)
        j = monos.get("t1", 0)
        if ex == 3:
            if i or j or rest:
                raise ParseError("the x^3 term must have coefficient 1", rhs_start, text)
            cubic += c
        elif ex == 1:
            f_terms.append((coeff, i, j))
        elif ex == 0:
            g_terms.append((coeff, i, j))
        else:
            raise ParseError(f"x^{ex} is not allowed in short Weierstrass form", rhs_start, text)
    if cubic != 1:
        raise ParseError("the x^3 coefficient must be exactly 1", rhs_start, text)

    def collect(ts):
        out = Poly.zero(field)
        for coeff, i, _ in ts:
            out = out + Poly.monomial(field, i, coeff)
        return out

    f = collect(f_terms)
    g = collect(g_terms)
    if uses_homog:
        deg_f = {i + j for c, i, j in f_terms if c}
        deg_g = {i + j for c, i, j in g_terms if c}
        if len(deg_f) > 1 or len(deg_g) > 1:
            raise ParseError("terms of F (or of G) have different total degrees", rhs_start, text)
        df = deg_f.pop() if deg_f else None
        dg = deg_g.pop() if deg_g else None
        if df is not None and df % 4:
            raise ParseError(f"F has degree {df}, not a multiple of 4", rhs_start, text)
        if dg is not None and dg % 6:
            raise ParseError(f"G has degree {dg}, not a multiple of 6", rhs_start, text)
        if df is not None and dg is not None and df // 4 != dg // 6:
            raise ParseError(f"F has degree {df} and G degree {dg}; need 4d and 6d", rhs_start, text)
        d = df // 4 if df is not None else (dg // 6 if dg is not None else 0)
        return WeierstrassModel(f, g, d, field)
    return WeierstrassModel.affine(f, g)


def format_model(m: WeierstrassModel, affine: bool = False) -> str:
    return m.to_string(affine=affine)


# -- Z[sigma] recipes --------------------------------------------------------------------------

def parse_recipe(text: str, p: int, defined: dict[str, list[int]], sigma: str = "s") -> list[int]:
    """Evaluate a Z[sigma]-combination such as ``"s^4*Q0 + Q2"``.

    Each name in ``defined`` maps to a coefficient vector over the seed's
    sigma-orbit.  Parentheses group sums, e.g. ``"(s + s^2 + s^3 + s^4) Q1"``.
    """
    from ..mordell_weil import zsigma_mul

    s = _Stream(text)

    def unit():
        v = [0] * p
        v[0] = 1
        return v

    def scal(vec, c):
        return [c * a for a in vec]

    def add(u, v):
        return [a + b for a, b in zip(u, v)]

    # values are (vector, is_point)
    def expr(stop=()):
        sign = 1
        if s.accept("-"):
            sign = -1
        else:
            s.accept("+")
        val = term(sign)
        while True:
            if s.accept("+"):
                nxt = term(1)
            elif s.accept("-"):
                nxt = term(-1)
            else:
                break
            if nxt[1] != val[1]:
                s.error("cannot add a point to a scalar")
            val = (add(val[0], nxt[0]), val[1])
        if s.cur.kind != "end" and not (s.cur.kind == "op" and s.cur.value in stop):
            s.error(f"unexpected {s.cur.value!r}")
        return val

    def term(sign):
        vec = scal(unit(), sign)
        is_point = False
        got = False
        while True:
            star = s.accept("*")
            tok = s.cur
            if tok.kind == "num":
                s.take()
                vec = scal(vec, int(tok.value))
            elif tok.kind == "name" and tok.value == sigma:
                s.take()
                e = _parse_nat(s) if s.accept("^") else 1
                v = [0] * p
                v[e % p] = 1
                vec = zsigma_mul(vec, v)
            elif tok.kind == "name":
                if tok.value not in defined:
                    s.error(f"undefined name {tok.value!r}")
                if is_point:
                    s.error("product of two points")
                s.take()
                vec = zsigma_mul(vec, defined[tok.value])
                is_point = True
            elif tok.kind == "op" and tok.value == "(":
                s.take()
                inner, inner_point = expr(stop=(")",))
                s.expect(")")
                if inner_point and is_point:
                    s.error("product of two points")
                vec = zsigma_mul(vec, inner)
                is_point = is_point or inner_point
            else:
                if star or not got:
                    s.error("expected a factor")
                break
            got = True
        return vec, is_point

    vec, is_point = expr()
    if not is_point:
        raise ParseError("recipe does not reference any point", 0, text)
    return vec
