"""Arrow diagrams, the skein relation and the string polynomial.

Run: python3 demos/05_skein.py
"""

import random

from virtstrings import parse_diagram
from virtstrings.moves import apply_move, random_move
from virtstrings.skein import nabla, nabla_ut, skein_check, skein_sides

# the rank-7 string with nested blocks, one arrow made negative
d = parse_diagram("1+ 2+ 3+ 4- 5+ 6+ 7+ 5' 7' 6' 4' 2' 1' 3'")
print("diagram:", d)
print("nabla:", nabla(d))
print("nabla with u-polynomials:", nabla_ut(d))

for e in range(d.rank):
    if d.signs[e] > 0:
        minus, first, second = skein_sides(d, e)
        print(f"arrow {e}: D- = {minus}, D' = {str(first) or '()'}, D'' = {str(second) or '()'}, relation holds: {skein_check(d, e)}")

rng = random.Random(1)
value = nabla_ut(d)
cur = d
for _ in range(30):
    cur = apply_move(cur, random_move(cur, rng, rank_cap=9))
print("\nafter 30 random moves:", cur)
print("nabla_ut unchanged:", nabla_ut(cur) == value)
