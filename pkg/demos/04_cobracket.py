"""The cobracket, co-Jacobi and surgery along unlinked arrows.

Run: python3 demos/04_cobracket.py
"""

from virtstrings import family_perm
from virtstrings.lie import OrientedTree, cobracket, cojacobi_check, double_cobracket, eta, surgery_special
from virtstrings.strings import open_from_closed, perm_from_cycles
from virtstrings.lie import closure_compatibility

s = family_perm(perm_from_cycles("(123)(4)(576)"))
print("string:", s)
print("nu:", cobracket(s))

big = family_perm([3, 1, 2, 4] + [x + 4 for x in perm_from_cycles("(123)(4)(576)", 7)])
print("\nrank", big.rank, "double cobracket:")
print(" ", double_cobracket(big))
print("co-Jacobi holds:", cojacobi_check(big))

# cutting the circle gives an open string whose comodule map closes up to nu
lhs, rhs = closure_compatibility(open_from_closed(s))
print("\nclosure compatibility:", lhs == rhs)

pieces, tree = surgery_special(s, [3])
print("\nsurgery along arrow 3:", [str(p) for p in pieces], "tree", tree.edges)

for edges in [(), ((0, 1),), ((0, 1), (1, 2)), ((0, 1), (0, 2))]:
    t = OrientedTree(len(edges) + 1, edges)
    print("eta", edges, "=", eta(t))
