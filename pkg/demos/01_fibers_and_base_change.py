"""
Singular fibers and what a cyclic cover does to them
=====================================================

A rational elliptic surface, read off from its Weierstrass equation, and the
same surface pulled back along t -> t^5.
"""

from mwlat.base_change import analyze_base_change, pull_back
from mwlat.cli.parsing import parse_model
from mwlat.mordell_weil import shioda_tate_rank
from mwlat.weierstrass import discriminant, fiber_configuration, minimize

# f and g are forms of degree 4 and 6 in (t0, t1), so the surface is rational (d = 1)
m = parse_model("y^2 = x^3 - t0^3 t1 x + t0^4 t1^2")
print(m, " d =", m.d)
print("discriminant:", discriminant(m).to_string())

# the discriminant vanishes to order 8 at 0, order 3 at infinity, once elsewhere
cfg = fiber_configuration(m)
for fd in cfg.fibers:
    print(f"  {fd.place.label():>10}  {str(fd.type):4}  v(f)={fd.v_f} v(g)={fd.v_g} v(D)={fd.v_delta}")
print("Shioda-Tate rank:", shioda_tate_rank(cfg))

# pulling back multiplies every degree by 5 ...
big = pull_back(m, 5)
print("\npulled back:", big, " d =", big.d)

# ... but the model is far from minimal; scaling away t0^4 / t0^6 brings d back to 1
small = minimize(big)
print("minimized:  ", small, " d =", small.d)

# the whole story in one call: fiber by fiber, and whether deg L survived
rep = analyze_base_change(m, 5)
for tr in rep.fiber_transitions:
    print(" ", tr)
print("L-stable:", rep.l_stable, " rank", shioda_tate_rank(rep.config_before),
      "->", shioda_tate_rank(rep.config_after))

# with p = 7 the IV* fiber would become IV* again, the discriminant degree grows and
# stability is lost
print("p = 7 L-stable:", analyze_base_change(m, 7).l_stable)
