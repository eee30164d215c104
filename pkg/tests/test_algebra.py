import cmath
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from mwlat.algebra import (
    QQ,
    NotInvertibleError,
    Poly,
    RatFunc,
    field_tower_create,
    integer_kernel,
    nf_invert,
    quotient_invariants,
    ratfunc_normalize,
    smith_normal_form,
)
from mwlat.algebra.factor import factor_rational, split_by_valuation, valuation_blocks
from mwlat.algebra.snf import identity, matmul

PHI5 = [1, 1, 1, 1, 1]
K5 = field_tower_create([PHI5], ["z"])
K20 = field_tower_create([[-2, 0, 0, 0, 0, 1], PHI5], ["c", "z"])
K7 = field_tower_create([[1] * 7], ["z"])

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def elements(k):
    return st.lists(small, min_size=k.degree, max_size=k.degree).map(k.from_rep)


# numeric embeddings used as an independent check of the exact arithmetic
Z5 = cmath.exp(2j * cmath.pi / 5)
C5 = 2 ** 0.2


def embed20(x):
    out = 0
    for i, q in enumerate(x.rep):
        # flatten order: outer index is the top generator
        zi, ci = divmod(i, 5)
        out += float(q) * (Z5 ** zi) * (C5 ** ci)
    return out


# -- towers ------------------------------------------------------------------------------------

def test_empty_tower_is_rationals():
    k = field_tower_create([])
    assert k is QQ and k.degree == 1


def test_cyclotomic_five_has_degree_four():
    assert K5.degree == 4
    z = K5.gen
    assert z ** 5 == K5.one and z != K5.one


def test_degree_twenty_tower():
    assert K20.degree == 20
    # oracle: the primitive element 2^(1/5) + zeta_5 has a degree-20 minimal polynomial,
    # so the second modulus stays irreducible over the first level
    x = sympy.Symbol("x")
    mp = sympy.minimal_polynomial(sympy.root(2, 5) + sympy.exp(2 * sympy.pi * sympy.I / 5), x)
    assert sympy.degree(mp, x) == 20


def test_gens_and_names():
    c, z = K20.gens()
    assert K20.names == ("c", "z")
    assert c ** 5 == 2
    assert z ** 5 == 1
    assert K20.gen_by_name()["c"] == c


def test_embedding_matches_numeric_value():
    c, z = K20.gens()
    x = c ** 3 * z + 3 * z ** 4 - c
    expected = C5 ** 3 * Z5 + 3 * Z5 ** 4 - C5
    assert abs(embed20(x) - expected) < 1e-9


# -- inversion ---------------------------------------------------------------------------------

def test_invert_one():
    assert nf_invert(K5.one) == K5.one


def test_invert_one_plus_zeta():
    z = K5.gen
    inv = nf_invert(1 + z)
    assert inv == -(z ** 3 + z)
    assert (1 + z) * inv == 1


def test_invert_zero_fails():
    with pytest.raises(ZeroDivisionError):
        nf_invert(K5.zero)


def test_reducible_modulus_detected():
    k = field_tower_create([[-1, 0, 1]], ["r"])  # r^2 - 1 is reducible
    with pytest.raises(NotInvertibleError):
        nf_invert(k.gen - 1)


@given(elements(K20), elements(K20))
def test_product_matches_numeric_embedding(a, b):
    assert abs(embed20(a * b) - embed20(a) * embed20(b)) < 1e-6 * (1 + abs(embed20(a) * embed20(b)))


# -- field axioms (exact) --------------------------------------------------------------------------

@given(elements(K20), elements(K20), elements(K20))
def test_ring_axioms_degree_twenty(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == K20.zero


@given(elements(K7))
def test_inverse_axiom(a):
    if a:
        assert a * a.inverse() == K7.one
        assert (a / a) == 1


@given(elements(K5), st.integers(0, 6), st.integers(0, 6))
def test_power_laws(a, m, n):
    assert a ** (m + n) == a ** m * a ** n


def test_subfield_coercion():
    c, z = K20.gens()
    base = K20.base
    x = base.gen  # c in the first level
    assert x + z == c + z
    assert (x * 2).field is base


# -- polynomials -------------------------------------------------------------------------------

t = Poly.gen(QQ)


def qpolys(max_deg=5):
    return st.lists(st.integers(-6, 6), min_size=1, max_size=max_deg + 1).map(lambda cs: Poly(QQ, cs))


def to_sympy(p):
    x = sympy.Symbol("t")
    return sum(sympy.Rational(str(c.to_rational())) * x ** i for i, c in enumerate(p.coeffs))


@given(qpolys(), qpolys())
def test_gcd_matches_sympy(a, b):
    if not a and not b:
        return
    x = sympy.Symbol("t")
    g = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), x)
    ours = a.gcd(b)
    ref = g.monic() if not g.is_zero else g
    assert sympy.expand(to_sympy(ours) - ref.as_expr()) == 0


@given(qpolys(6), qpolys(3))
def test_divmod_identity(a, b):
    if not b:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree or not r


def test_substitute_and_inflate():
    p = t ** 2 + 3 * t + 1
    assert p.inflate(3) == t ** 6 + 3 * t ** 3 + 1
    assert p.substitute_scaled(QQ(2)) == 4 * t ** 2 + 6 * t + 1
    assert p.evaluate(t + 1) == t ** 2 + 5 * t + 5


def test_valuation_at_polynomial():
    q = (t - 1) ** 3 * (t + 2)
    assert q.valuation(t - 1) == 3
    assert q.valuation(t) == 0


def test_poly_over_tower_string():
    c, z = K20.gens()
    p = Poly(K20, [c, -(c ** 2) * z])
    assert p.to_string("t") == "-c^2*z*t + c"


# -- rational functions --------------------------------------------------------------------------

def test_ratfunc_cancels():
    r = ratfunc_normalize(t ** 2 - 1, t - 1)
    assert r.num == t + 1 and r.den == Poly.one(QQ)


def test_ratfunc_zero():
    r = ratfunc_normalize(Poly.zero(QQ), t ** 3)
    assert not r.num and r.den == Poly.one(QQ)


def test_ratfunc_monic_denominator():
    r = ratfunc_normalize(2 * t, Poly.const(QQ, 4))
    assert r.den == Poly.one(QQ)
    assert r.num == Poly(QQ, [0, Fraction(1, 2)])


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(t, Poly.zero(QQ))


@given(qpolys(), qpolys(), qpolys(), qpolys())
def test_ratfunc_field_axioms(a, b, c, d):
    if not b or not d:
        return
    x, y = RatFunc(a, b), RatFunc(c, d)
    assert x + y == y + x
    assert (x * y) * x == x * (y * x)
    if y.num:
        assert (x / y) * y == x


# -- Smith normal form ---------------------------------------------------------------------------

def brute_invariants_2x2(a):
    # d1 = gcd of entries, d1 * d2 = |det|
    from math import gcd

    g = 0
    for row in a:
        for v in row:
            g = gcd(g, v)
    det = abs(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    if g == 0:
        return [0, 0]
    return [g, det // g]


def test_snf_diag_2_3():
    s = smith_normal_form([[2, 0], [0, 3]])
    assert list(s.d) == [1, 6]


def test_snf_identity_and_zero():
    assert list(smith_normal_form(identity(4)).d) == [1, 1, 1, 1]
    assert list(smith_normal_form([[0, 0, 0], [0, 0, 0]]).d) == [0, 0]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _det(m):
    return sympy.Matrix(m).det()


@given(matrices)
def test_snf_identity_uav(a):
    s = smith_normal_form(a)
    r, c = len(a), len(a[0])
    prod = matmul(matmul(s.u, a), s.v)
    for i in range(r):
        for j in range(c):
            expect = s.d[i] if i == j and i < len(s.d) else 0
            assert prod[i][j] == expect
    assert abs(_det(s.u)) == 1 and abs(_det(s.v)) == 1
    nz = [x for x in s.d if x]
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    assert all(x >= 0 for x in s.d)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=2, max_size=2), min_size=2, max_size=2))
def test_snf_2x2_against_gcd_formula(a):
    assert list(smith_normal_form(a).d) == brute_invariants_2x2(a)


@given(matrices)
def test_integer_kernel(a):
    ker = integer_kernel(a, len(a[0]))
    rank = sympy.Matrix(a).rank()
    assert len(ker) == len(a[0]) - rank
    for v in ker:
        assert all(sum(row[j] * v[j] for j in range(len(v))) == 0 for row in a)


def test_quotient_invariants():
    # Z^2 / <(2, 0), (0, 4)> = Z/2 + Z/4
    inv, free = quotient_invariants([[2, 0], [0, 4]], 2)
    assert sorted(inv) == [2, 4] and free == 0


# -- factoring helpers ------------------------------------------------------------------------------

def test_factor_rational_matches_sympy():
    p = (t ** 2 + 1) * (t - 3) ** 2 * (t ** 3 - 2)
    facs = factor_rational(p)
    x = sympy.Symbol("t")
    ref = {sympy.Poly(f, x).monic().as_expr() for f, _ in sympy.factor_list(to_sympy(p))[1]}
    assert {sympy.expand(to_sympy(f)) for f in facs} == ref


def test_valuation_blocks_split_by_valuation():
    f = t ** 3 * (t - 1)
    g = t ** 2 * (t - 1) ** 2 * (t + 1)
    radical = t * (t - 1) * (t + 1)
    blocks = valuation_blocks(radical, [f, g])
    assert sorted(b.degree for b in blocks) == [1, 1, 1]
    parts = split_by_valuation(t * (t - 1), f)
    assert sorted((p.degree, v) for p, v in parts) == [(1, 1), (1, 3)]


def test_random_tower_elements_are_consistent():
    rng = random.Random(7)
    for _ in range(20):
        a = K20.from_rep([rng.randint(-3, 3) for _ in range(20)])
        if a:
            assert a * a.inverse() == 1
