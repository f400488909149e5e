"""Exact Chern numbers of compact duals through Schubert calculus.

The cohomology of a Grassmannian has the Schubert classes as an integral
basis.  Products are computed two independent ways (Giambelli determinants
reduced by Pieri, and a Littlewood-Richardson tableau count) and Chern
numbers come from expanding tangent Chern classes in that basis.
"""

import itertools

from chernpatch import schubert as sc

# The basic ring identities in Gr(2, 4).
s1 = sc.sigma(2, 2, (1,))
print("sigma_1^2 =", sc.ring_multiply(s1, s1))
print("sigma_11 . sigma_2 =",
      sc.ring_multiply(sc.sigma(2, 2, (1, 1)), sc.sigma(2, 2, (2,))))

# Degree of Gr(2, 4) under the Pluecker embedding.
acc = sc.sigma(2, 2)
for _ in range(4):
    acc = sc.ring_multiply(acc, s1)
print("<sigma_1^4> =", sc.integrate_class(acc))

# The two multiplication routes agree on every pair in the 2x3 box.
parts = sc.partitions_in_box(2, 3)
mismatch = sum(
    sc.ring_multiply(sc.sigma(2, 3, a), sc.sigma(2, 3, b))
    != sc.lr_multiply(sc.sigma(2, 3, a), sc.sigma(2, 3, b))
    for a, b in itertools.product(parts, parts))
print(f"giambelli vs tableau count on {len(parts)**2} pairs:",
      mismatch, "mismatches")

# Tangent Chern classes and numbers.
print("c(T Gr(2,4)) =", sc.tangent_chern("gr:2,4"))
for space, mono, label in [("p:1", {1: 1}, "c1[P^1]"),
                           ("p:2", {1: 2}, "c1^2[P^2]"),
                           ("gr:2,4", {1: 4}, "c1^4[Gr(2,4)]"),
                           ("gr:2,4", {4: 1}, "c4[Gr(2,4)] = Euler number")]:
    print(f"{label} =", sc.chern_number(space, "tangent", mono))

# The tautological classes generate the ring.
rpt = sc.generation_check("gr:2,4")
print("generation:", rpt["span_rank"], "of", rpt["betti_total"],
      "->", rpt["generates"])
