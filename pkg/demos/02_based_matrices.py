"""Based matrices, primitive reduction and the filling genus.

Run: python3 demos/02_based_matrices.py
"""

from virtstrings import family_perm, family_pq, inverse
from virtstrings.based_matrix import from_string
from virtstrings.filling import cobordant_matrices, is_hyperbolic, sigma
from virtstrings.strings import perm_from_cycles

s = family_perm(perm_from_cycles("(134)(2)"))
t = from_string(s)
print("T(alpha_(134)(2)), basepoint first:")
print(t)
print("rank", t.rank(), "genus", t.genus(), "primitive:", t.is_primitive())

# the matrix of the inverse string is not isomorphic, so the two are not homotopic
ti = from_string(inverse(s))
print("\ninverse string matrix:")
print(ti)
print("isomorphic:", t.is_isomorphic(ti))

# alpha_11 is degenerate: it reduces all the way down
t11 = from_string(family_pq(1, 1))
print("\nalpha_11 reduces to", t11.primitive_reduce().n, "element(s)")

for p, q in [(1, 1), (2, 1), (2, 2), (3, 3)]:
    tp = from_string(family_pq(p, q))
    res = sigma(tp)
    print(f"alpha_{p},{q}: sigma={res.sigma} hyperbolic={is_hyperbolic(tp.primitive_reduce())} filling={res.certificate()}")

# adding an annihilating element does not change the cobordism class
t = from_string(family_pq(2, 3))
res = cobordant_matrices(t, t.extend_m1())
print("\nT and T + annihilating element:", res.verdict)
for vec in res.named:
    print("  ", vec)
