"""
Sections over a bigger field, the Galois action, and traces
============================================================

After base change by t -> t^5 the IV* + III + I1 surface has rank 5.  All the
new sections come from one seed point over Q(2^(1/5), zeta_5).
"""

from mwlat.fixtures import load_fixture
from mwlat.mordell_weil import (
    apply_sigma,
    is_non_torsion,
    rational_descent,
    trace,
    verify_generator_family,
)

fx = load_fixture("ell34_p5")  # the seed has already been checked against the curve
act = fx.action()
print(fx.model.to_string(affine=True), " over a field of degree", fx.field.degree)
print("Q1 =", fx.seed)
print("weights (w_x, w_y) =", (act.w_x, act.w_y))

# sigma scales t by zeta and twists x, y by powers of zeta
for k in range(3):
    print(f"sigma^{k} Q1 =", apply_sigma(act, fx.seed, k))

# the trace lands back over Q(t): it is sigma-fixed
T = trace(act, fx.model, fx.seed)
print("\nTr(Q1) =", T, "   stated:", fx.stated_trace)
print("same as stated?", T == fx.stated_trace.change_field(fx.field),
      "  its negative?", T == -fx.stated_trace.change_field(fx.field))
# (0, t) and (0, -t) differ by a sign, so either one generates the same subgroup
print("non-torsion:", is_non_torsion(fx.model, rational_descent(T)))

# the recipes build nine orbits of ten points plus the two sigma-fixed ones
rep = verify_generator_family(fx.model, fx.family(), act)
print("\npoints:", rep.count, " orbits:", rep.orbit_sizes, " fixed:", *rep.sigma_fixed)
for name, P in list(rep.named.items())[:4]:
    print(f"  {name} = {P}")

# p = 7: the printed seed is not on the curve, so it is refused before any arithmetic
try:
    load_fixture("ell7_p7_printed")
except ValueError as e:
    print("\n", e)

# a seed over Q(zeta_7) that is on the curve, with its trace and 56 points
fx7 = load_fixture("ell7_p7")
print("Tr(Q1) =", trace(fx7.action(), fx7.model, fx7.seed))
print("points:", verify_generator_family(fx7.model, fx7.family(), fx7.action()).count)
