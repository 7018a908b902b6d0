"""Lie coalgebra structure on string classes and related tree combinatorics.

The cobracket splits a string at each arrow into the substrings living on
its two arcs.  Surgery along a set of pairwise unlinked arrows cuts the
core circle into several circles joined by an oriented tree; the tree
function ``eta`` weights such surgeries in ``zeta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .formal import OPEN_TRIVIAL_KEY, FormalSum
from .homotopy import DEFAULT_CAPS, ZERO_KEY, Caps, normalize, string_of_key
from .strings import ArrowDiagram, OpenString, VirtualString, closure



def _arc_arrows(s: VirtualString, start: int, end: int) -> list[int]:
    """Arrows with both endpoints strictly inside the arc from ``start`` to ``end``."""
    n = s.size
    length = (end - start) % n

    def inside(p):
        return 0 < (p - start) % n < length

    return [e for e, (t, h) in enumerate(s.arrows()) if inside(t) and inside(h)]


def halves(s: VirtualString, e: int) -> tuple[VirtualString, VirtualString]:
    """The substrings on the arcs ``ab`` and ``ba`` of the arrow ``e = (a, b)``."""
    a, b = s.arrows()[e]
    return s.restrict(_arc_arrows(s, a, b)), s.restrict(_arc_arrows(s, b, a))


def cobracket(s: VirtualString, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    terms = []
    for e in range(s.rank):
        x, y = halves(s, e)
        if x.rank <= 2 or y.rank <= 2:
            continue
        kx, ky = normalize(x, caps), normalize(y, caps)
        terms.append(((0, (kx, ky)), 1))
        terms.append(((0, (ky, kx)), -1))
    return FormalSum(terms, tensor=True, caps=caps.to_json())


def _nu_of_key(key: str, caps: Caps) -> FormalSum:
    if key == ZERO_KEY:
        return FormalSum(caps=caps.to_json())
    return cobracket(string_of_key(key), caps)


def iterated_cobracket(s: VirtualString, n: int, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    """``(id^(n-1) (x) nu) ... (id (x) nu) nu`` applied to the class of ``s``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = cobracket(s, caps)
    for k in range(1, n):
        out = out.map_factor(k, lambda key: _nu_of_key(key, caps))
    return out


def _cyclic_sum(x: FormalSum) -> FormalSum:
    return x + x.permute((2, 0, 1)) + x.permute((1, 2, 0))


def double_cobracket(s: VirtualString, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    """``(id (x) nu) nu`` expanded through substrings rather than class representatives."""
    total = FormalSum(tensor=True, caps=caps.to_json())
    for e in range(s.rank):
        x, y = halves(s, e)
        if x.rank <= 2 or y.rank <= 2:
            continue
        kx, ky = normalize(x, caps), normalize(y, caps)
        total = total + FormalSum.monomial([kx], caps=caps.to_json()) * cobracket(y, caps)
        total = total - FormalSum.monomial([ky], caps=caps.to_json()) * cobracket(x, caps)
    return total


def cojacobi_check(s: VirtualString, caps: Caps = DEFAULT_CAPS) -> bool:
    """Antisymmetry of ``nu`` and vanishing of the cyclic sum of ``(id (x) nu) nu``."""
    nu = cobracket(s, caps)
    if nu.permute((1, 0)) != -nu:
        return False
    return not _cyclic_sum(double_cobracket(s, caps))


# open strings


def open_key(mu: OpenString, caps: Caps = DEFAULT_CAPS) -> str:
    key = normalize(mu, caps)
    return OPEN_TRIVIAL_KEY if key == ZERO_KEY else key


def surgery_open(mu: OpenString, e: int) -> tuple[VirtualString, OpenString]:
    """Split ``mu`` along ``e`` into the closed string between its endpoints and the open rest."""
    a, b = mu.arrows()[e]
    lo, hi = min(a, b), max(a, b)
    inner, outer = [], []
    for f, (t, h) in enumerate(mu.arrows()):
        if f == e:
            continue
        if lo < t < hi and lo < h < hi:
            inner.append(f)
        elif not (lo < t < hi) and not (lo < h < hi):
            outer.append(f)
    closed_part = VirtualString(mu.restrict(inner).code)
    return closed_part, mu.restrict(outer)


def comodule_rho(mu: OpenString, caps: Caps = DEFAULT_CAPS) -> FormalSum:
    terms = []
    for e in range(mu.rank):
        alpha, beta = surgery_open(mu, e)
        if alpha.rank <= 2:
            continue
        sign = 1 if mu.is_positive(e) else -1
        terms.append(((0, (normalize(alpha, caps), open_key(beta, caps))), sign))
    return FormalSum(terms, tensor=True, caps=caps.to_json())


def cl_key(key: str, caps: Caps = DEFAULT_CAPS) -> str:
    """Closing an open class; the trivial open class goes to zero."""
    if key == OPEN_TRIVIAL_KEY:
        return ZERO_KEY
    return normalize(closure(string_of_key(key, closed=False)), caps)


def closure_compatibility(mu: OpenString, caps: Caps = DEFAULT_CAPS) -> tuple[FormalSum, FormalSum]:
    """Both sides of ``nu(cl mu) = (id - Perm)(id (x) cl) rho(mu)``."""
    rho = comodule_rho(mu, caps)
    closed = rho.map_factor(1, lambda k: FormalSum.monomial([cl_key(k, caps)], caps=caps.to_json()))
    return cobracket(closure(mu), caps), closed - closed.permute((1, 0))


# surgery along special arrow sets


@dataclass(frozen=True)
class OrientedForest:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n) or a == b:
                raise ValueError(f"bad edge {(a, b)}")
        if self.components() + len(self.edges) != self.n:
            raise ValueError("edges contain a cycle")

    def components(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = self.n
        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                count -= 1
        return count


class OrientedTree(OrientedForest):
    def __post_init__(self):
        super().__post_init__()
        if self.n < 1 or len(self.edges) != self.n - 1:
            raise ValueError("a tree on n vertices has n-1 edges and is connected")


def _union_find(n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    return find, union


def edge_regions(s: VirtualString, cut: Sequence[int]) -> list[int]:
    """Region index of each edge after surgery along the unlinked arrows ``cut``.

    Edge ``k`` runs from position ``k`` to ``k + 1``.  Regions are numbered
    in order of their first edge.
    """
    n = s.size
    if n == 0:
        return [0]
    find, union = _union_find(n)
    cut_positions = set()
    arrows = s.arrows()
    for e in cut:
        a, b = arrows[e]
        cut_positions.update((a, b))
        union(a, (b - 1) % n)
        union((a - 1) % n, b)
    for p in range(n):
        if p not in cut_positions:
            union((p - 1) % n, p)
    labels: dict[int, int] = {}
    return [labels.setdefault(find(k), len(labels)) for k in range(n)]


def _check_special(s: VirtualString, cut: Sequence[int]) -> None:
    for i, e in enumerate(cut):
        for f in cut[i + 1 :]:
            if s.linking(e, f):
                raise ValueError(f"arrows {e} and {f} are linked")


def surgery_pieces(s: VirtualString, cut: Sequence[int]) -> tuple[list[list[int]], list[tuple[int, int]], list[int]]:
    """Arrow lists of the pieces, tree edges ``region(a+) -> region(b+)`` and the edge regions."""
    regions = edge_regions(s, cut)
    count = max(regions) + 1
    members: list[list[int]] = [[] for _ in range(count)]
    cut_set = set(cut)
    for e, (a, b) in enumerate(s.arrows()):
        if e in cut_set:
            continue
        if regions[a] == regions[b]:
            members[regions[a]].append(e)
    arrows = s.arrows()
    tree = [(regions[arrows[e][0]], regions[arrows[e][1]]) for e in cut]
    return members, tree, regions


def surgery_special(s: VirtualString, cut: Sequence[int]) -> tuple[list[VirtualString], OrientedTree]:
    """Surgery along pairwise unlinked arrows: ``len(cut) + 1`` strings and their tree."""
    cut = list(cut)
    _check_special(s, cut)
    members, tree, _ = surgery_pieces(s, cut)
    pieces = [s.restrict(m) for m in members]
    return pieces, OrientedTree(len(pieces), tuple(tree))


def special_sets(s: VirtualString):
    """All sets of pairwise unlinked arrows, as sorted lists."""
    m = s.rank
    linked = [[bool(s.linking(e, f)) for f in range(m)] for e in range(m)]

    def rec(start, chosen):
        yield list(chosen)
        for e in range(start, m):
            if not any(linked[e][f] for f in chosen):
                chosen.append(e)
                yield from rec(e + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


# the tree function


def surjection_counts(forest: OrientedForest) -> list[int]:
    """``counts[k]`` = surjections ``V -> {1..k}`` increasing along every edge."""
    n = forest.n
    preds = [0] * n
    for a, b in forest.edges:
        preds[b] |= 1 << a
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def ways(done: int) -> tuple[int, ...]:
        # ways to split the vertices outside ``done`` into an ordered block sequence;
        # entry k counts sequences of k blocks
        if done == full:
            return (1,)
        ready = [v for v in range(n) if not done >> v & 1 and preds[v] & ~done == 0]
        out: list[int] = []
        for size in range(1, 1 << len(ready)):
            block = 0
            for i, v in enumerate(ready):
                if size >> i & 1:
                    block |= 1 << v
            for k, c in enumerate(ways(done | block)):
                while len(out) <= k + 1:
                    out.append(0)
                out[k + 1] += c
        return tuple(out)

    counts = list(ways(0))
    return counts + [0] * (n + 1 - len(counts))


def eta(forest: OrientedForest) -> Fraction:
    counts = surjection_counts(forest)
    return sum((Fraction((-1) ** (k + 1), k) * c for k, c in enumerate(counts) if k >= 1), Fraction(0))


def linear_extensions(forest: OrientedForest) -> int:
    return surjection_counts(forest)[forest.n]


def zeta_terms(s: VirtualString):
    """One ``(cut, eta, z_power, diagram keys)`` entry per special set."""
    for cut in special_sets(s):
        members, tree, _ = surgery_pieces(s, cut)
        weight = eta(OrientedForest(len(members), tuple(tree)))
        keys = []
        for m in members:
            piece = s.restrict(m)
            keys.append(ArrowDiagram(piece, (1,) * piece.rank).canonical().key)
        yield cut, weight, len(cut), tuple(keys)


def zeta(s: VirtualString) -> FormalSum:
    """Sum over special sets of ``eta(tree) z^|F|`` times the all-plus piece diagrams."""
    terms = [((z, keys), w) for _, w, z, keys in zeta_terms(s)]
    return FormalSum(terms, tensor=False, absorb=False)
