"""
Which configurations survive a prime-degree cover?
===================================================

Enumerate every fiber configuration of a rational elliptic surface, put two of
the fibers over the branch points, and keep the ones whose fundamental degree
does not change.
"""

from collections import Counter

from mwlat.base_change import analyze_base_change
from mwlat.classification import classify_k3_L_stable, enumerate_with_rejections, realize_configuration
from mwlat.cli.tables import format_configurations

rows, excluded, rejections = enumerate_with_rejections((5, 7, 11, 13))
print(format_configurations(rows))

# one survivor is left out on purpose: two I0* fibers is a twist of a constant curve
print("\nexcluded:", *excluded)

# why the others fail, grouped by the first obstruction met
why = Counter(r.reason.split(" = ")[0].split(":")[0] for r in rejections)
for reason, n in why.most_common(6):
    print(f"{n:6}  {reason}")

# each row has a concrete model; check it with the real pull-back
for row in rows:
    m = realize_configuration(row)
    ps = row.primes or (5, 7, 11)
    print(f"{str(m):40}", {p: analyze_base_change(m, p).l_stable for p in ps})

# for K3 surfaces (d = 2) there is exactly one possibility
k3 = classify_k3_L_stable()
print("\nK3: p =", k3.p, "fibers", *k3.fibers, "eps =", k3.epsilon)
