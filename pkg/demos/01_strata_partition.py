"""Control data on a stratified poset and the telescoping partition of unity.

A stratum W carries a tubular neighbourhood function rho_W and a retraction
pi_W.  From a single C^1 bump profile we build the weights B_W^eps, and on
any flag of strata the weights of the proper faces plus the top weight sum
to exactly one.
"""

import numpy as np

from chernpatch import strata

# A forest of two flags sharing a stem: A < B < C < D and A < B < E.
model = strata.FlagTubeModel(
    strata=[{"name": "A", "dimC": 0}, {"name": "B", "dimC": 1},
            {"name": "C", "dimC": 2}, {"name": "D", "dimC": 4},
            {"name": "E", "dimC": 3}],
    flags=[["A", "B", "C", "D"], ["A", "B", "E"]])

print("epsilon family (dyadic in the complex dimension):")
for s in ("A", "B", "C", "D", "E"):
    print(f"  eps_{s} = {model.eps(s)}")

# Sample random points of the open stratum D and check the identity
#   B_D + B_C + B_B + B_A = 1
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    pt = model.point(("A", "B", "C", "D"),
                     tuple(rng.uniform(0.01, 3.0, size=3)))
    w = model.partition_weights(pt)
    worst = max(worst, abs(sum(w.values()) - 1.0))
print(f"max |sum of weights - 1| over 2000 points: {worst:.3e}")

# The vanishing property: B_W^eps is identically 1 close to W and
# identically 0 far from it, so on a grid straddling the tube boundary the
# family has no violations.
rpt = strata.family_vanishing_check(model, ["A", "B", "C", "D"])
print(f"vanishing check: {rpt['checked']} grid points, "
      f"{len(rpt['violations'])} violations")

# Localization: near the smallest stratum of a point the partition is
# carried by a single base stratum.
pt = model.point(("A", "B", "C", "D"), (0.01, 0.02, 2.5))
print("localization base near A:", model.localization_base(pt))
