"""Splitting squarefree polynomials into places.

Over the rationals, factors are irreducible (via sympy).  Over a proper
number field we only split by gcds: each returned block is squarefree and
every irreducible factor of a block has the same valuation in each of the
supplied polynomials, which is all that fiber typing needs.
"""

from __future__ import annotations

from typing import Sequence

import sympy

from .field import QQ
from .poly import Poly

__all__ = ["split_by_valuation", "valuation_blocks", "factor_rational"]


def split_by_valuation(block: Poly, q: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree ``block`` into parts on which v(q) is constant.

    ``q`` must be nonzero.  Returns (part, valuation) pairs.
    """
    if not q:
        raise ValueError("valuation split against the zero polynomial")
    out = []
    rest = block.monic()
    cur = q
    k = 0
    while rest.degree > 0:
        g = rest.gcd(cur)
        part = rest.exact_div(g)
        if part.degree > 0:
            out.append((part.monic(), k))
        rest = g
        if g.degree <= 0:
            break
        cur = cur.exact_div(g)
        k += 1
    return out


def valuation_blocks(radical: Poly, polys: Sequence[Poly]) -> list[Poly]:
    """Coprime monic blocks of ``radical`` with uniform valuations in ``polys``."""
    blocks = [radical.monic()] if radical.degree > 0 else []
    for q in polys:
        if not q:
            continue
        nxt = []
        for b in blocks:
            nxt.extend(part for part, _ in split_by_valuation(b, q))
        blocks = nxt
    return blocks


def factor_rational(p: Poly) -> list[Poly]:
    """Monic irreducible factors of a squarefree polynomial over QQ."""
    if p.field is not QQ:
        raise ValueError("factor_rational needs a polynomial over QQ")
    if p.degree <= 1:
        return [p.monic()] if p.degree == 1 else []
    t = sympy.Symbol("t")
    coeffs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in p.c]
    expr = sympy.Poly(list(reversed(coeffs)), t, domain="QQ")
    _, factors = expr.factor_list()
    out = []
    for fac, _mult in factors:
        cs = [sympy.Rational(c) for c in reversed(fac.all_coeffs())]
        out.append(Poly(QQ, [f"{c.p}/{c.q}" for c in cs]).monic())
    return sorted(out, key=lambda f: (f.degree, [tuple(f.field.flatten(x)) for x in f.c]))
