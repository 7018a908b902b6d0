"""Fillings of based matrices: genus, hyperbolicity, tuple fillings and cobordism.

A simple filling splits the non-basepoint elements into blocks of at
most two elements; together with ``{s}`` the blocks give a Gram matrix
whose half-rank is minimised by the genus ``sigma``.  Tuple fillings
allow blocks to mix elements of several matrices and to carry bounded
multiples of the basepoints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .based_matrix import BasedMatrix
from .linalg import rank_int

DEFAULT_MAX_SIZE = 16


class FillingSizeError(ValueError):
    """The matrix is larger than the enumeration cap."""


def _check_size(n: int, max_size: int) -> None:
    if n > max_size:
        raise FillingSizeError(f"{n} elements exceed the filling cap of {max_size}")


def _block_row(t: BasedMatrix, block: Sequence[int]) -> list[int]:
    return [sum(t.b[g][h] for g in block) for h in range(t.n)]


def filling_matrix(t: BasedMatrix, blocks: Sequence[Sequence[int]]) -> list[list[int]]:
    """Gram matrix of ``{s}`` followed by ``blocks``."""
    sets = [[t.s]] + [list(b) for b in blocks]
    rows = [_block_row(t, x) for x in sets]
    return [[sum(r[h] for h in y) for y in sets] for r in rows]


def simple_fillings(elements: Sequence[int]):
    """All partitions of ``elements`` into blocks of size one or two."""
    if not elements:
        yield []
        return
    first, rest = elements[0], list(elements[1:])
    for sub in simple_fillings(rest):
        yield [(first,)] + sub
    for i, h in enumerate(rest):
        for sub in simple_fillings(rest[:i] + rest[i + 1 :]):
            yield [(first, h)] + sub


@dataclass(frozen=True)
class GenusResult:
    sigma: int
    blocks: tuple[tuple, ...]
    matrix: BasedMatrix

    def certificate(self) -> list[list]:
        """Blocks named by the original element names."""
        return [[self.matrix.names[g] for g in b] for b in self.blocks]


def sigma(t: BasedMatrix, reduce: bool = True, max_size: int = DEFAULT_MAX_SIZE) -> GenusResult:
    """Genus of a based matrix with an optimal filling.

    With ``reduce`` the search runs on the primitive reduction, which has
    the same genus.  Branch and bound prunes partial fillings whose Gram
    matrix already has half-rank at least the best value found.
    """
    if reduce:
        t = t.primitive_reduce()
    _check_size(t.n, max_size)
    others = t.others()
    rows = {}

    def row(block):
        if block not in rows:
            rows[block] = _block_row(t, block)
        return rows[block]

    s_block = (t.s,)
    best = [t.rank() // 2 + 1, None]

    def gram(blocks):
        sets = [s_block] + blocks
        return [[sum(row(x)[h] for h in y) for y in sets] for x in sets]

    def dfs(remaining, blocks):
        half = rank_int(gram(blocks)) // 2
        if half >= best[0]:
            return
        if not remaining:
            best[0], best[1] = half, list(blocks)
            return
        g, rest = remaining[0], remaining[1:]
        dfs(rest, blocks + [(g,)])
        if best[0] == 0:
            return
        for i, h in enumerate(rest):
            dfs(rest[:i] + rest[i + 1 :], blocks + [(g, h)])
            if best[0] == 0:
                return

    dfs(others, [])
    return GenusResult(best[0], tuple(best[1]), t)


def sigma_exhaustive(t: BasedMatrix, max_size: int = 12) -> int:
    """Genus by plain enumeration of every simple filling, without reduction."""
    _check_size(t.n, max_size)
    return min(rank_int(filling_matrix(t, f)) // 2 for f in simple_fillings(t.others()))


def hyperbolic_filling(t: BasedMatrix, max_size: int = DEFAULT_MAX_SIZE) -> list[tuple] | None:
    """A simple filling with zero Gram matrix, or ``None``."""
    _check_size(t.n, max_size)
    rows: dict[tuple, list[int]] = {}

    def row(block):
        if block not in rows:
            rows[block] = _block_row(t, block)
        return rows[block]

    def ok(block, chosen):
        r = row(block)
        if sum(r[h] for h in (t.s,)) != 0:
            return False
        return all(sum(r[h] for h in other) == 0 for other in chosen)

    def dfs(remaining, chosen):
        if not remaining:
            return list(chosen)
        g, rest = remaining[0], remaining[1:]
        candidates = [((g,), rest)] + [((g, h), rest[:i] + rest[i + 1 :]) for i, h in enumerate(rest)]
        for block, left in candidates:
            if ok(block, chosen):
                found = dfs(left, chosen + [block])
                if found is not None:
                    return found
        return None

    return dfs(t.others(), [])


def is_hyperbolic(t: BasedMatrix, max_size: int = DEFAULT_MAX_SIZE) -> bool:
    return hyperbolic_filling(t, max_size) is not None


# tuple fillings


class _Joint:
    """Block-diagonal form on the disjoint union of several based matrices."""

    def __init__(self, ts: Sequence[BasedMatrix]):
        self.ts = list(ts)
        self.basis = [(i, g) for i, t in enumerate(ts) for g in range(t.n)]
        self.index = {x: k for k, x in enumerate(self.basis)}
        n = len(self.basis)
        self.form = [[0] * n for _ in range(n)]
        for (i, g), k in self.index.items():
            for h in range(ts[i].n):
                self.form[k][self.index[(i, h)]] = ts[i].b[g][h]
        self.s = [self.index[(i, t.s)] for i, t in enumerate(ts)]
        self.elements = [self.index[(i, g)] for i, t in enumerate(ts) for g in t.others()]

    def vector(self, gens: Sequence[int], coeffs: Sequence[int]) -> list[int]:
        v = [0] * len(self.basis)
        for k in gens:
            v[k] += 1
        for k, c in zip(self.s, coeffs):
            v[k] += c
        return v

    def row(self, v: Sequence[int]) -> list[int]:
        n = len(v)
        return [sum(v[i] * self.form[i][j] for i in range(n) if v[i]) for j in range(n)]

    def pair(self, v, w) -> int:
        r = self.row(v)
        return sum(x * y for x, y in zip(r, w))

    def gram(self, vectors) -> list[list[int]]:
        rows = [self.row(v) for v in vectors]
        return [[sum(x * y for x, y in zip(r, w)) for w in vectors] for r in rows]

    def named(self, v) -> dict:
        return {f"{i}:{self.ts[i].names[g]}": c for (i, g), c in zip(self.basis, v) if c}


def tuple_sigma_upper(
    ts: Sequence[BasedMatrix], bound: int = 1, max_combos: int = 2_000_000
) -> tuple[int, list[dict]]:
    """Least half-rank over tuple fillings whose basepoint coefficients lie in ``[-bound, bound]``.

    Returns the value and an optimal family of vectors.  For a single
    matrix the basepoint multiples do not change the span of the family,
    so they are skipped.
    """
    joint = _Joint(ts)
    r = len(ts)
    s_all = joint.vector([], [1] * r)
    coeff_range = [(0,) * r] if r == 1 else list(itertools.product(range(-bound, bound + 1), repeat=r))
    best = None
    combos = 0
    for partition in simple_fillings(joint.elements):
        for coeffs in itertools.product(coeff_range, repeat=len(partition)):
            combos += 1
            if combos > max_combos:
                raise FillingSizeError(f"more than {max_combos} tuple fillings")
            vecs = [s_all] + [joint.vector(b, c) for b, c in zip(partition, coeffs)]
            half = rank_int(joint.gram(vecs)) // 2
            if best is None or half < best[0]:
                best = (half, vecs)
                if half == 0:
                    return 0, [joint.named(v) for v in vecs]
    return best[0], [joint.named(v) for v in best[1]]


def hyperbolic_tuple_filling(
    ts: Sequence[BasedMatrix], bound: int = 2, node_budget: int = 200_000
) -> list[list[int]] | None:
    """Depth-first search for a tuple filling with zero Gram matrix.

    Returns dense vectors over the joint basis (first the sum of the
    basepoints), ``None`` if the bounded search space is exhausted, and
    raises ``FillingSizeError`` when the node budget runs out.
    """
    joint = _Joint(ts)
    r = len(ts)
    s_all = joint.vector([], [1] * r)
    coeffs = sorted(itertools.product(range(-bound, bound + 1), repeat=r), key=lambda c: (sum(map(abs, c)), c))
    s_row = joint.row(s_all)
    counter = [0]

    def profile(k):
        i, g = joint.basis[k]
        t = ts[i]
        return t.b[g][t.s], sorted(abs(x) for x in t.b[g])

    profiles = {k: profile(k) for k in joint.elements}

    def affinity(g, h):
        # pairs across matrices whose basepoint pairings cancel and whose rows
        # look alike come first: they are what cancels a matrix against its negation
        (sg, rg), (sh, rh) = profiles[g], profiles[h]
        cross = joint.basis[g][0] != joint.basis[h][0]
        return (not cross, sg + sh != 0, rg != rh)

    def candidates(g, rest):
        order = sorted(range(len(rest)), key=lambda i: affinity(g, rest[i]))
        good = [i for i in order if affinity(g, rest[i]) < (False, True, False)]
        for i in good:
            yield (g, rest[i]), rest[:i] + rest[i + 1 :]
        yield (g,), rest
        for i in order:
            if i not in good:
                yield (g, rest[i]), rest[:i] + rest[i + 1 :]

    def dfs(remaining, chosen_rows, chosen):
        if not remaining:
            return chosen
        counter[0] += 1
        if counter[0] > node_budget:
            raise FillingSizeError(f"tuple filling search exceeded {node_budget} nodes")
        g, rest = remaining[0], remaining[1:]
        for block, left in candidates(g, rest):
            for c in coeffs:
                v = joint.vector(block, c)
                if sum(x * y for x, y in zip(s_row, v)) != 0:
                    continue
                if any(sum(x * y for x, y in zip(w, v)) for w in chosen_rows):
                    continue
                found = dfs(left, chosen_rows + [joint.row(v)], chosen + [v])
                if found is not None:
                    return found
        return None

    found = dfs(joint.elements, [s_row], [s_all])
    return found


def verify_tuple_filling(ts: Sequence[BasedMatrix], vectors: Sequence[Sequence[int]], hyperbolic: bool = True) -> bool:
    """Check shape, sum condition and (optionally) vanishing of the Gram matrix."""
    joint = _Joint(ts)
    r = len(ts)
    s_set = set(joint.s)
    if list(vectors[0]) != joint.vector([], [1] * r):
        return False
    total = [0] * len(joint.basis)
    for v in vectors[1:]:
        gens = [k for k, c in enumerate(v) if k not in s_set and c]
        if len(gens) > 2 or any(v[k] != 1 for k in gens):
            return False
        for k in gens:
            total[k] += 1
    if any(total[k] != 1 for k in joint.elements):
        return False
    if hyperbolic and any(any(row) for row in joint.gram(vectors)):
        return False
    return True


@dataclass(frozen=True)
class Cobordant:
    certificate: tuple[tuple[int, ...], ...]
    named: tuple = field(default=(), compare=False)

    verdict: str = field(default="Cobordant", init=False)


@dataclass(frozen=True)
class CobordismUnknown:
    reason: str

    verdict: str = field(default="Unknown", init=False)


def cobordant_matrices(t1: BasedMatrix, t2: BasedMatrix, bound: int = 2, node_budget: int = 200_000):
    """Search for a hyperbolic tuple filling of ``(t1, -t2)``."""
    pair = [t1, t2.neg()]
    try:
        vecs = hyperbolic_tuple_filling(pair, bound, node_budget)
    except FillingSizeError as exc:
        return CobordismUnknown(str(exc))
    if vecs is None:
        return CobordismUnknown(f"no hyperbolic tuple filling with coefficients in [-{bound}, {bound}]")
    joint = _Joint(pair)
    return Cobordant(tuple(tuple(v) for v in vecs), tuple(joint.named(v) for v in vecs))
