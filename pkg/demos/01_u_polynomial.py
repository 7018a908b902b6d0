"""Gauss codes, the u-polynomial and coverings.

Run: python3 demos/01_u_polynomial.py
"""

from virtstrings import covering, family_pq, parse, product, serialize
from virtstrings.polynomial import IntPoly
from virtstrings.upoly import higher_u, realize_u, u

# a string is a Gauss code; primes mark heads
s = parse("1 2 3 2' 1' 3'")
print("string:", serialize(s), "rank", s.rank)
print("indices n(e):", s.n_values)
print("u:", u(s))

for p, q in [(1, 2), (2, 3), (3, 3)]:
    print(f"u(alpha_{p},{q}) =", u(family_pq(p, q)))

# eight blocks whose u-polynomials cancel, while the 2-covering still sees them
blocks = [(1, 3), (1, 4), (2, 1), (2, 4), (3, 5), (4, 3), (5, 1), (5, 2)]
x = product(*(family_pq(p, q) for p, q in blocks))
print("\nproduct of", len(blocks), "blocks, rank", x.rank)
print("u:", u(x))
print("u of the 2-covering:", u(covering(x, 2)))
print("u^(2,3):", higher_u(x, [2, 3]))

# any f with f(0) = f'(1) = 0 is realised
f = IntPoly.parse("3t^4 - 2t^3 - 6t^2 + 6t")
r = realize_u(f)
print("\nrealised", f, "by a string of rank", r.rank, "; check:", u(r))
