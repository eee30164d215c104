import itertools

import pytest

from mwlat.algebra import QQ, Poly

from mwlat.base_change import analyze_base_change
from mwlat.classification import (
    CATALOG,
    ConfigRow,
    after_types,
    classify_k3_L_stable,
    enumerate_rational_L_stable,
    enumerate_with_rejections,
    k3_verdict,
    l_stable_numeric,
    lemma_rejection,
    realize_configuration,
    row_from_configuration,
    catalog_index,
    type_multisets,
)
from mwlat.weierstrass import (
    KodairaType,
    SingularModelError,
    WeierstrassModel,
    discriminant,
    fiber_configuration,
    is_minimal,
)

K = KodairaType.parse

# rows as printed: (prime constraint, fiber over 0, fiber over infinity, remaining)
STATED_CONFIGURATIONS = [
    ("any", "IV*", "IV", []),
    ("any", "III*", "III", []),
    ("any", "II*", "II", []),
    ((5,), "II*", "I0", ["II"]),
    ((5,), "II*", "I0", ["I1", "I1"]),
    ((5,), "II*", "I1", ["I1"]),
    ((5,), "IV*", "III", ["I1"]),
    ((7,), "III*", "II", ["I1"]),
]


@pytest.fixture(scope="module")
def enumeration():
    return enumerate_with_rejections()


def _unordered(row: ConfigRow):
    return (frozenset([str(row.fiber_at_0), str(row.fiber_at_inf)]), tuple(sorted(str(t) for t in row.remaining)))


def test_configuration_rows_exact(enumeration):
    rows, _, _ = enumeration
    assert len(rows) == 8
    for row, (primes, a, b, rest) in zip(rows, STATED_CONFIGURATIONS):
        assert (row.primes is None) == (primes == "any")
        if primes != "any":
            assert row.primes == primes
        assert _unordered(row) == (frozenset([a, b]), tuple(sorted(rest)))


def test_constant_twist_excluded(enumeration):
    _, excluded, _ = enumeration
    assert [str(r) for r in excluded] == ["[any p >= 5] 0: I0*, inf: I0*, rest: -"]


def test_no_higher_star_fibers(enumeration):
    rows, _, _ = enumeration
    for r in rows:
        assert all(not (t.kind == "I*" and t.n > 0) for t in r.fibers())


def test_wider_prime_range_keeps_rows():
    rows = enumerate_rational_L_stable((5, 7, 11, 13, 17))
    assert len(rows) == 8
    assert sum(r.primes is None for r in rows) == 3


def test_lemmas_agree_with_transition_arithmetic(enumeration):
    # every structural rejection is also a closed-form rejection, except
    # where Shioda-Tate already rules the surface out before base change
    _, _, rejections = enumeration
    disagreements = []
    for r in rejections:
        reason = lemma_rejection(r.row, r.p)
        if reason and l_stable_numeric(r.row, r.p)[0]:
            disagreements.append((str(r.row), r.p, reason))
    assert all(reason.startswith("Shioda-Tate") for _, _, reason in disagreements)
    assert len(disagreements) == 1  # II* with I2, fiber components 8 + 1 > 8


def test_rejected_configurations_fail_in_pipeline(enumeration):
    # spot check: rejected rows in the catalog shapes fail L-stability at other primes
    for idx, p in [(4, 7), (5, 11), (6, 7), (7, 7), (8, 5)]:
        m = realize_configuration(CATALOG[idx - 1][0])
        assert not analyze_base_change(m, p).l_stable


def _two_term_models():
    t, one = Poly.gen(QQ), Poly.one(QQ)
    for i, j in itertools.product(range(5), range(7)):
        for a, b, c, e in itertools.product([0, 1, -3], [0, 1, 2], [1, 2], [0, 1]):
            f = a * t ** i * (one + b * t) if a else Poly.zero(QQ)
            g = c * t ** j * (one + e * t)
            if f.degree > 4 or g.degree > 6:
                continue
            m = WeierstrassModel(f, g, 1)
            try:
                discriminant(m)
            except SingularModelError:
                continue
            if is_minimal(m):
                yield m


def test_lemma_rejections_hold_on_realized_surfaces():
    # 20 distinct (configuration, p) pairs rejected by a structural lemma, each
    # realized by an honest model and pushed through pull-back and minimization
    seen, reasons = set(), set()
    for m in _two_term_models():
        row = row_from_configuration(fiber_configuration(m))
        for p in (5, 7):
            reason = lemma_rejection(row, p)
            if reason is None or (row.shape(), p) in seen:
                continue
            seen.add((row.shape(), p))
            reasons.add(reason.split(" = ")[0])
            assert not analyze_base_change(m, p).l_stable, (str(m), p, reason)
        if len(seen) >= 20:
            break
    assert len(seen) >= 20
    assert {"p*eps", "IV* together with II", "single additive fiber must be II* with p"} <= reasons


def test_multisets_sum_to_twelve():
    for ms in type_multisets(12)[:200]:
        assert sum(t.v_delta for t in ms) == 12


def test_after_types_row7():
    row = CATALOG[6][0]
    assert sorted(str(t) for t in after_types(row, 5)) == sorted(["IV", "III"] + ["I1"] * 5)
    assert l_stable_numeric(row, 7)[0] is False


@pytest.mark.parametrize("idx", range(1, 9))
def test_realizations(idx):
    row = CATALOG[idx - 1][0]
    m = realize_configuration(row)
    assert catalog_index(row_from_configuration(fiber_configuration(m))) == idx
    primes = row.primes or (5, 7, 11)
    for p in primes:
        assert analyze_base_change(m, p).l_stable


def test_unknown_configuration():
    with pytest.raises(KeyError):
        realize_configuration(ConfigRow(K("I0*"), K("I0*"), (), 0))


def test_k3_unique():
    res = classify_k3_L_stable()
    assert res.p == 5
    assert [str(t) for t in res.fibers] == ["II*", "II*"]
    assert res.epsilon == 4
    assert len(res.admissible) == 1


def test_k3_rejections():
    assert k3_verdict(K("II*"), K("I4*"), 5) == (False, "6 + pn > 24")
    assert k3_verdict(K("II*"), K("II*"), 7)[0] is False
    assert k3_verdict(K("I10"), K("II*"), 5)[0] is False
