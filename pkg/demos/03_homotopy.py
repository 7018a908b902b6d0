"""Searching for homotopies and classifying small strings.

Run: python3 demos/03_homotopy.py
"""

from virtstrings import family_perm, family_pq, trivial
from virtstrings.homotopy import bfs_equal, classify_rank, replay
from virtstrings.strings import perm_from_cycles

s = family_perm(perm_from_cycles("(1342)"))
res = bfs_equal(s, trivial())
print("alpha_(1342) vs trivial:", res.verdict)
cur = s
for mv in res.path_first:
    cur = replay(cur, [mv])
    print(f"  {str(mv):<20} -> {str(cur) or '(empty)'}")

print("\nalpha_12 vs alpha_21:", bfs_equal(family_pq(1, 2), family_pq(2, 1)))

for m in (2, 3):
    c = classify_rank(m)
    print(f"\nrank {m}: {len(c.classes)} classes")
    for key, members in sorted(c.classes.items()):
        print(f"  <{key or 'trivial'}>: {len(members)} strings")
