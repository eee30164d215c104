import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from mwlat.algebra import QQ, Poly
from mwlat.cli.parsing import parse_model
from mwlat.weierstrass import (
    INFINITY,
    ZERO_PLACE,
    BinaryForm,
    KodairaType,
    NonMinimalError,
    Place,
    SingularModelError,
    TrivialFamilyError,
    WeierstrassModel,
    classify_valuations,
    discriminant,
    epsilon,
    fiber_configuration,
    fundamental_degree,
    is_minimal,
    kodaira_type,
    minimize,
    minimize_at,
    place_valuation,
)

t = Poly.gen(QQ)
T0, T1 = sympy.symbols("t0 t1")
TS = sympy.Symbol("t")

ELL34 = parse_model("y^2 = x^3 - t0^3 t1 x + t0^4 t1^2")
ELL7 = parse_model("y^2 = x^3 - t0 t1^3 x + t0 t1^5")


def form_to_sympy(poly, degree):
    return sum(sympy.Rational(str(c.to_rational())) * T0 ** i * T1 ** (degree - i)
               for i, c in enumerate(poly.coeffs))


# -- independent Kodaira oracle (sympy factorization + valuation table) ------------------------------

def _oracle_type(vf, vg, vd):
    if vd == 0:
        return None
    if vf == 0 and vg == 0:
        return f"I{vd}"
    if vf >= 2 and vg >= 3 and vd >= 6:
        if vd == 6:
            return "I0*"
        if vf == 2 and vg == 3:
            return f"I{vd - 6}*"
        return {8: "IV*", 9: "III*", 10: "II*"}[vd]
    return {2: "II", 3: "III", 4: "IV"}[vd]


def _sym_val(expr, pi):
    if expr == 0:
        return 99
    v = 0
    while True:
        q, r = sympy.div(expr, pi, TS)
        if r != 0:
            return v
        expr, v = q, v + 1


def oracle_configuration(f_coeffs, g_coeffs, d):
    f = sum(sympy.Integer(c) * TS ** i for i, c in enumerate(f_coeffs))
    g = sum(sympy.Integer(c) * TS ** i for i, c in enumerate(g_coeffs))
    disc = sympy.expand(-16 * (4 * f ** 3 + 27 * g ** 2))
    types = []
    for pi, _ in sympy.factor_list(disc, TS)[1]:
        if sympy.degree(pi, TS) < 1:
            continue
        kt = _oracle_type(_sym_val(f, pi), _sym_val(g, pi), _sym_val(disc, pi))
        if kt:
            types += [kt] * int(sympy.degree(pi, TS))
    vinf = lambda e, deg: 99 if e == 0 else deg - sympy.degree(e, TS)
    kt = _oracle_type(vinf(f, 4 * d), vinf(g, 6 * d), vinf(disc, 12 * d))
    if kt:
        types.append(kt)
    return sorted(types)


# -- discriminant and valuations ------------------------------------------------------------------

def test_discriminant_of_ell34():
    disc = discriminant(ELL34)
    expect = sympy.expand(-16 * T0 ** 8 * T1 ** 3 * (-4 * T0 + 27 * T1))
    assert sympy.expand(form_to_sympy(disc.poly, disc.degree) - expect) == 0
    assert disc.to_string() == "64 t0^9 t1^3 - 432 t0^8 t1^4"


def test_discriminant_of_constant_model():
    m = WeierstrassModel(Poly.zero(QQ), Poly.one(QQ), 0)
    assert discriminant(m).poly == Poly.const(QQ, -432)


def test_singular_model_rejected():
    m = WeierstrassModel(Poly.const(QQ, -3), Poly.const(QQ, 2), 0)
    with pytest.raises(SingularModelError):
        discriminant(m)


def test_place_valuation():
    disc = discriminant(ELL34)
    assert place_valuation(disc, ZERO_PLACE) == 8
    assert place_valuation(disc, INFINITY) == 3
    one = BinaryForm(Poly.one(QQ), 0)
    assert place_valuation(one, ZERO_PLACE) == 0
    assert place_valuation(one, INFINITY) == 0


# -- minimization ---------------------------------------------------------------------------------

def test_minimize_pullback_at_zero():
    m = WeierstrassModel(-(t ** 15), t ** 20, 5)
    out = minimize_at(m, ZERO_PLACE)
    assert out.d == 2
    assert out.f == -(t ** 3) and out.g == t ** 2
    assert minimize(m).to_string() == "y^2 = x^3 - t0^3 t1 x + t0^2 t1^4"


def test_minimize_already_minimal_is_identity():
    assert minimize_at(ELL34, ZERO_PLACE) is ELL34
    assert is_minimal(ELL34)


def test_minimize_g_only():
    m = WeierstrassModel.affine(Poly.zero(QQ), t ** 13)
    assert m.d == 3
    out = minimize_at(m, ZERO_PLACE)
    assert out.g == t and out.d == 1


small_polys = lambda deg: st.lists(st.integers(-3, 3), min_size=deg + 1, max_size=deg + 1)


def _model(fc, gc, d):
    return WeierstrassModel(Poly(QQ, fc), Poly(QQ, gc), d)


@given(small_polys(8), small_polys(12), st.sampled_from([0, 1, 2]), st.sampled_from([0, 1, 2]))
def test_minimize_idempotent(fc, gc, shift0, shift_inf):
    # start from a degree-2 model and deliberately make it non-minimal at 0
    assume(any(fc) or any(gc))
    f = Poly(QQ, fc) * t ** (4 * shift0)
    g = Poly(QQ, gc) * t ** (6 * shift0)
    d = 2 + shift0 + shift_inf
    m = WeierstrassModel(f, g, d)
    try:
        discriminant(m)
    except SingularModelError:
        return
    once = minimize(m)
    assert minimize(once) == once
    assert is_minimal(once)
    assert once.d <= m.d


# -- Kodaira types ---------------------------------------------------------------------------------

def test_types_of_ell34():
    assert kodaira_type(ELL34, ZERO_PLACE).type == KodairaType.parse("IV*")
    assert kodaira_type(ELL34, INFINITY).type == KodairaType.parse("III")


def test_type_iv_on_affine_model():
    m = WeierstrassModel.affine(-(t ** 3), t ** 2)
    fd = kodaira_type(m, ZERO_PLACE)
    assert str(fd.type) == "IV" and (fd.v_f, fd.v_g, fd.v_delta) == (3, 2, 4)


def test_classify_valuations_table():
    assert str(classify_valuations(0, 0, 5)) == "I5"
    assert str(classify_valuations(2, 3, 9)) == "I3*"
    assert str(classify_valuations(None, 5, 10)) == "II*"
    assert str(classify_valuations(1, None, 3)) == "III"
    with pytest.raises(NonMinimalError):
        classify_valuations(4, 6, 12)


def test_kodaira_type_ordering_and_components():
    kinds = [KodairaType.parse(s) for s in ("I1", "II", "III", "IV", "I0*", "IV*", "III*", "II*")]
    assert [k.components for k in kinds] == [1, 1, 2, 3, 5, 7, 8, 9]
    assert KodairaType.parse("I4*").v_delta == 10
    assert str(KodairaType.parse("I0*")) == "I0*"


# -- configurations -----------------------------------------------------------------------------------

def test_configuration_ell34():
    cfg = fiber_configuration(ELL34)
    assert cfg.describe() == "IV*, III, I1"
    assert str(cfg.at_zero) == "IV*" and str(cfg.at_infinity) == "III"


def test_configuration_ell7():
    cfg = fiber_configuration(ELL7)
    assert str(cfg.at_zero) == "II" and str(cfg.at_infinity) == "III*"
    assert cfg.describe() == "III*, II, I1"


def test_configuration_after_degree_seven_cover():
    m = parse_model("y^2 = x^3 - t0^3 t1 x + t0 t1^5")
    cfg = fiber_configuration(m)
    assert cfg.describe() == "III, II, 7xI1"
    # oracle: sympy factors the discriminant independently
    assert oracle_configuration([0, 0, 0, -1], [0, 1], 1) == sorted(["II", "III"] + ["I1"] * 7)


def test_non_minimal_configuration_refused():
    with pytest.raises(NonMinimalError):
        fiber_configuration(WeierstrassModel(-(t ** 15), t ** 20, 5))


@given(small_polys(4), small_polys(6))
def test_configuration_matches_oracle(fc, gc):
    assume(any(fc) or any(gc))
    m = _model(fc, gc, 1)
    try:
        discriminant(m)
    except SingularModelError:
        return
    mm = minimize(m)
    if mm.d == 0:
        return
    if mm != m:
        return  # the oracle types minimal models only
    ours = sorted(str(x) for x in fiber_configuration(mm).geometric_types())
    assert ours == oracle_configuration(fc, gc, 1)


@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from([1, -1, 2]), st.sampled_from([1, -1, 3]))
def test_delsarte_degree_sum(mexp, nexp, a, b):
    m = WeierstrassModel.delsarte(a, mexp, b, nexp)
    try:
        mm = minimize(m)
    except SingularModelError:
        return
    if mm.d == 0:
        return
    try:
        cfg = fiber_configuration(mm)
    except SingularModelError:
        return
    assert cfg.euler_sum() == 12 * mm.d
    assert sum(fd.degree * (fd.components - 1) for fd in cfg.fibers) == cfg.component_excess()


# -- fundamental degree and epsilon ---------------------------------------------------------------------

def test_fundamental_degree_rational():
    assert fundamental_degree(ELL34) == 1


def test_fundamental_degree_k3():
    # two II* fibers over 0 and infinity, four I1 elsewhere
    m = parse_model("y^2 = x^3 + t0^4 t1^4 x + t0^7 t1^5 + t0^5 t1^7")
    assert fundamental_degree(m) == 2
    assert fiber_configuration(m).describe() == "2xII*, 4xI1"


def test_trivial_family():
    m = minimize(WeierstrassModel.affine(Poly.zero(QQ), t ** 6))
    with pytest.raises(TrivialFamilyError):
        fundamental_degree(m)


def test_epsilon_values():
    assert epsilon(ELL34) == 1
    assert epsilon(ELL7) == 1
    assert epsilon(WeierstrassModel.affine(Poly.zero(QQ), t ** 5)) == 0


# -- formatting -------------------------------------------------------------------------------------------

def test_to_string_homogeneous_and_affine():
    assert ELL34.to_string() == "y^2 = x^3 - t0^3 t1 x + t0^4 t1^2"
    assert ELL34.to_string(affine=True) == "y^2 = x^3 - t^3 x + t^4"


def test_place_labels():
    assert ZERO_PLACE.label() == "0" and INFINITY.label() == "inf"
    assert Place.at(QQ, 3).label() == "t - 3"


# -- coordinate changes and isotriviality ---------------------------------------------------------

def test_move_places_to_zero_and_infinity():
    # IV* over t = 1 and III over t = 2 end up over 0 and infinity
    one = Poly.one(QQ)
    m = WeierstrassModel(-((t - one) ** 3) * (t - 2 * one), (t - one) ** 4 * (t - 2 * one) ** 2, 1)
    before = {fd.place.label(): str(fd.type) for fd in fiber_configuration(m).fibers}
    assert before["t - 1"] == "IV*" and before["t - 2"] == "III"
    moved = m.move_to_zero_infinity((1, 1), (2, 1))
    cfg = fiber_configuration(minimize(moved))
    assert str(cfg.at_zero) == "IV*" and str(cfg.at_infinity) == "III"
    with pytest.raises(ValueError):
        m.move_to_zero_infinity((1, 1), (2, 2))


def test_isotrivial_flag():
    assert parse_model("y^2 = x^3 + t0^5 t1").is_isotrivial()
    assert parse_model("y^2 = x^3 - t0^4 x + t0^6").is_isotrivial()
    assert not ELL34.is_isotrivial()
