"""Exact rank computations over the integers and over prime fields."""

from __future__ import annotations

from typing import Sequence


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n_rows):
            f = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col, n_cols):
                row_i[j] = (row_i[j] * p - row_r[j] * f) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Reduced row echelon form over ``Z/p``, zero rows dropped."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return []
    n_cols = len(a[0])
    out_rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(out_rank, len(a)) if a[i][col]), None)
        if pivot is None:
            continue
        a[out_rank], a[pivot] = a[pivot], a[out_rank]
        inv = pow(a[out_rank][col], -1, p)
        a[out_rank] = [x * inv % p for x in a[out_rank]]
        for i in range(len(a)):
            if i != out_rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[out_rank])]
        out_rank += 1
    return a[:out_rank]


def rank_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod(rows, p))


def nullspace_mod(rows: Sequence[Sequence[int]], n_cols: int, p: int) -> list[list[int]]:
    """Basis of ``{x : rows . x = 0}`` over ``Z/p``."""
    r = rref_mod(rows, p) if rows else []
    pivots = []
    for row in r:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(n_cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n_cols
        v[f] = 1
        for row, pc in zip(r, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis
