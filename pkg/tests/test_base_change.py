import pytest

from mwlat.algebra import QQ, Poly
from mwlat.base_change import (
    ALL_TEST_TYPES,
    GaloisCover,
    analyze_base_change,
    local_realization,
    pull_back,
    transition_type,
    transition_via_pipeline,
)
from mwlat.cli.parsing import parse_model
from mwlat.weierstrass import KodairaType, NonMinimalError, WeierstrassModel, epsilon, minimize

K = KodairaType.parse
t = Poly.gen(QQ)

ELL34 = parse_model("y^2 = x^3 - t0^3 t1 x + t0^4 t1^2")
ELL7 = parse_model("y^2 = x^3 - t0 t1^3 x + t0 t1^5")


def test_pull_back_degrees():
    m = pull_back(ELL7, 7)
    assert m.to_string() == "y^2 = x^3 - t0^7 t1^21 x + t0^7 t1^35"
    m = pull_back(ELL34, 5)
    assert m.to_string() == "y^2 = x^3 - t0^15 t1^5 x + t0^20 t1^10"


def test_ell34_after_degree_five():
    rep = analyze_base_change(ELL34, 5)
    assert rep.after.to_string() == "y^2 = x^3 - t0^3 t1 x + t0^2 t1^4"
    assert rep.l_stable and rep.d_before == rep.d_after == 1


def test_ell7_after_degree_seven():
    rep = analyze_base_change(ELL7, 7)
    assert rep.after.to_string() == "y^2 = x^3 - t0^3 t1 x + t0 t1^5"
    assert rep.l_stable


def test_epsilon_examples():
    assert epsilon(ELL34) == 1
    assert epsilon(parse_model("y^2 = x^3 + t0^4 t1^2")) == 0
    assert epsilon(ELL7) == 1


def test_fiber_transitions_ell34():
    rep = analyze_base_change(ELL34, 5)
    seen = {str(tr.before): tr.after for tr in rep.fiber_transitions}
    assert seen["IV*"] == (K("IV"),)
    assert seen["III"] == (K("III"),)
    assert seen["I1"] == (K("I1"),) * 5


def test_swap_of_ii_star_and_ii():
    m = parse_model("y^2 = x^3 + t0^5 t1")
    rep = analyze_base_change(m, 5)
    assert str(rep.config_before.at_zero) == "II*" and str(rep.config_before.at_infinity) == "II"
    assert str(rep.config_after.at_zero) == "II" and str(rep.config_after.at_infinity) == "II*"
    assert rep.l_stable


def test_not_l_stable():
    # an I3 fiber at 0 becomes I15 and the degree of L grows
    m = WeierstrassModel.affine(Poly.const(QQ, -3), t ** 3 + 2)
    rep = analyze_base_change(minimize(m), 5)
    assert not rep.l_stable
    assert rep.d_after > rep.d_before


def test_requires_minimal_model():
    with pytest.raises(NonMinimalError):
        analyze_base_change(WeierstrassModel(-(t ** 15), t ** 20, 5), 5)


def test_cover_degree_checks():
    with pytest.raises(ValueError):
        GaloisCover(9)
    with pytest.raises(ValueError):
        GaloisCover(3)
    assert GaloisCover(3, allow_small=True).p == 3


@pytest.mark.parametrize("src,p,expect", [
    ("IV*", 5, "IV"),
    ("III", 5, "III"),
    ("II*", 5, "II"),
    ("II*", 7, "II*"),
    ("II", 5, "II*"),
    ("I0*", 5, "I0*"),
    ("I2", 7, "I14"),
    ("I1*", 5, "I5*"),
    ("III*", 7, "III"),
])
def test_transition_examples(src, p, expect):
    assert transition_type(K(src), p, True) == [K(expect)]


def test_unramified_transition_is_p_copies():
    assert transition_type(K("IV"), 11, False) == [K("IV")] * 11


def test_transition_rejects_bad_p():
    with pytest.raises(ValueError):
        transition_type(K("II"), 9, True)


@pytest.mark.parametrize("kt", ALL_TEST_TYPES, ids=str)
def test_local_realization(kt):
    assert local_realization(kt).d >= 1


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("kt", [K("II"), K("III*"), K("I2"), K("I1*")], ids=str)
def test_closed_form_matches_pipeline_sample(kt, p):
    # the exhaustive sweep over all types and p in {5, 7, 11, 13} lives in the acceptance suite
    for ram in (True, False):
        assert transition_type(kt, p, ram) == transition_via_pipeline(kt, p, ram)
