"""Bounded homotopy search: normalization to class keys, equality checks and enumeration.

Searches run on canonical representatives: a node is the canonical word
of a string and moves are applied to the string rebuilt from that word,
so every recorded path can be replayed exactly.

``normalize`` greedily removes arrows, explores the triangle-move
component of the result, and escalates to a best-first search through
higher ranks only when the primitive based matrix leaves room for a
lower-rank representative.  The key is the least canonical code of the
final component; the trivial string has the empty key ``ZERO_KEY``.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .based_matrix import from_open_string, from_string
from .moves import MoveInstance, apply_move, enumerate_moves, reducing_moves, triangle_moves
from .strings import HEAD, TAIL, CanonicalCode, OpenString, VirtualString
from .upoly import higher_u, u, u_open

ZERO_KEY = ""


@dataclass(frozen=True)
class Caps:
    """Search limits; results of class-level computations depend on them."""

    rank_slack: int = 2
    node_budget: int = 1500

    def to_json(self) -> dict:
        return {"rank_slack": self.rank_slack, "node_budget": self.node_budget}


DEFAULT_CAPS = Caps()


def _rank(word) -> int:
    return len(word) // 2


class _Search:
    def __init__(self, cls, start):
        self.cls = cls
        self.start = start
        self.parent: dict[tuple, tuple | None] = {start: None}
        self._reps: dict[tuple, object] = {}
        self.nodes = 0

    def rep(self, w):
        r = self._reps.get(w)
        if r is None:
            r = self._reps[w] = self.cls.from_word(w)
        return r

    def step(self, w, mv: MoveInstance):
        child = apply_move(self.rep(w), mv).word()
        if child not in self.parent:
            self.parent[child] = (w, mv)
        return child

    def path(self, w) -> list[MoveInstance]:
        out = []
        while self.parent[w] is not None:
            w, mv = self.parent[w]
            out.append(mv)
        return out[::-1]

    def greedy(self, w):
        while True:
            red = reducing_moves(self.rep(w))
            if not red:
                return w
            w = self.step(w, red[0])

    def component(self, w, budget):
        """Triangle-move component of ``w``; stops early at a reducible node."""
        seen = {w}
        queue = [w]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            if reducing_moves(self.rep(x)):
                return seen, self.greedy(x)
            if len(seen) >= budget:
                break
            for mv in triangle_moves(self.rep(x)):
                y = self.step(x, mv)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        self.nodes += len(seen)
        return seen, None

    def escalate(self, comp, cap, budget):
        """Best-first search through ranks up to ``cap`` for a lower-rank node."""
        r = _rank(next(iter(comp)))
        counter = itertools.count()
        heap = [(r, next(counter), w) for w in sorted(comp)]
        seen = set(comp)
        while heap and len(seen) < budget:
            _, _, x = heapq.heappop(heap)
            for mv in enumerate_moves(self.rep(x), cap):
                y = self.step(x, mv)
                if y in seen:
                    continue
                seen.add(y)
                z = self.greedy(y)
                if _rank(z) < r:
                    self.nodes += len(seen)
                    return z
                heapq.heappush(heap, (_rank(y), next(counter), y))
        self.nodes += len(seen)
        return None


def rank_lower_bound(s) -> int:
    """Number of elements of the primitive based matrix (graded for open strings)."""
    if isinstance(s, OpenString):
        return from_open_string(s).primitive_reduce().n - 1
    return from_string(s).primitive_reduce().n - 1


def _normalize_search(s, caps: Caps):
    search = _Search(type(s), s.word())
    cur = search.greedy(search.start)
    while True:
        if s.closed and _rank(cur) <= 2:
            # every closed string of rank at most two reduces greedily
            cur = search.greedy(cur)
            return cur, search, True
        if _rank(cur) == 0:
            return cur, search, True
        comp, drop = search.component(cur, caps.node_budget)
        if drop is not None:
            cur = drop
            continue
        rep = search.rep(cur)
        if caps.rank_slack > 0 and rank_lower_bound(rep) < _rank(cur):
            drop = search.escalate(comp, _rank(cur) + caps.rank_slack, caps.node_budget)
            if drop is not None:
                cur = drop
                continue
        return min(comp), search, False


def key_of_word(cls, word) -> str:
    if not word:
        return ZERO_KEY
    return cls.from_word(word).canonical().key


@lru_cache(maxsize=200000)
def _normalize_cached(closed: bool, word: tuple, caps: Caps) -> str:
    cls = VirtualString if closed else OpenString
    final, _, _ = _normalize_search(cls.from_word(word), caps)
    return key_of_word(cls, final)


def normalize(s: VirtualString | OpenString, caps: Caps = DEFAULT_CAPS) -> str:
    """Class key of ``s``: ``ZERO_KEY`` for the trivial class, else a canonical code."""
    return _normalize_cached(s.closed, s.word(), caps)


def normalize_with_path(s, caps: Caps = DEFAULT_CAPS):
    """``(key, moves)`` where replaying ``moves`` from the canonical representative reaches the key."""
    final, search, _ = _normalize_search(s.canonical_rep(), caps)
    return key_of_word(type(s), final), search.path(final), final


def replay(s, moves: Sequence[MoveInstance]):
    """Apply ``moves`` starting from the canonical representative of ``s``."""
    cls = type(s)
    w = s.word()
    for mv in moves:
        w = apply_move(cls.from_word(w), mv).word()
    return cls.from_word(w)


def neighbors(s, rank_cap: int | None = None) -> set[CanonicalCode]:
    """Canonical codes of all strings one move away from ``s``."""
    rep = s.canonical_rep()
    return {apply_move(rep, mv).canonical() for mv in enumerate_moves(rep, rank_cap)}


# invariants and verdicts


def invariants(s, max_cover: int = 4) -> dict:
    """Homotopy invariants used to separate classes."""
    if isinstance(s, OpenString):
        t = from_open_string(s)
        return {"u_pm": u_open(s), "primitive": t.primitive_reduce(), "closure": invariants(s.closure(), max_cover)}
    out = {"u": u(s)}
    for r1 in range(2, max_cover + 1):
        out[f"u^({r1})"] = higher_u(s, [r1])
        for r2 in range(2, max_cover + 1):
            out[f"u^({r1},{r2})"] = higher_u(s, [r1, r2])
    out["primitive"] = from_string(s).primitive_reduce()
    return out


def distinguishing_invariant(s1, s2, max_cover: int = 4) -> str | None:
    i1, i2 = invariants(s1, max_cover), invariants(s2, max_cover)
    for name in i1:
        a, b = i1[name], i2[name]
        if name == "primitive":
            if a.n != b.n:
                return f"rho differs: {a.n - 1} vs {b.n - 1}"
            if not (a.is_isomorphic(b) if hasattr(a, "is_isomorphic") else a == b):
                return "primitive based matrices are not isomorphic"
        elif name == "closure":
            sub = distinguishing_invariant(s1.closure(), s2.closure(), max_cover)
            if sub:
                return "closure: " + sub
        elif a != b:
            return f"{name} differs: {_fmt(a)} vs {_fmt(b)}"
    return None


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(map(str, x)) + ")"
    return str(x)


@dataclass(frozen=True)
class Equal:
    path_first: tuple[MoveInstance, ...]
    path_second: tuple[MoveInstance, ...]
    meeting: str

    verdict: str = field(default="Equal", init=False)


@dataclass(frozen=True)
class Distinct:
    witness: str

    verdict: str = field(default="Distinct", init=False)


@dataclass(frozen=True)
class Unknown:
    reason: str

    verdict: str = field(default="Unknown", init=False)


def bfs_equal(s1, s2, caps: Caps = DEFAULT_CAPS):
    """Decide homotopy where the caps allow: Equal with replayable paths, Distinct with a witness, or Unknown."""
    if type(s1) is not type(s2):
        raise TypeError("cannot compare closed and open strings")
    witness = distinguishing_invariant(s1, s2)
    if witness:
        return Distinct(witness)
    _, p1, w1 = normalize_with_path(s1, caps)
    _, p2, w2 = normalize_with_path(s2, caps)
    if w1 == w2:
        return Equal(tuple(p1), tuple(p2), key_of_word(type(s1), w1))
    met = _bidirectional(type(s1), w1, w2, caps)
    if met is not None:
        q1, q2, w = met
        return Equal(tuple(p1 + q1), tuple(p2 + q2), key_of_word(type(s1), w))
    return Unknown(f"no meeting point within rank slack {caps.rank_slack} and {caps.node_budget} nodes")


def _bidirectional(cls, w1, w2, caps: Caps):
    cap = max(_rank(w1), _rank(w2)) + caps.rank_slack
    searches = [_Search(cls, w1), _Search(cls, w2)]
    frontiers = [[w1], [w2]]
    budget = caps.node_budget
    while any(frontiers) and sum(len(s.parent) for s in searches) < budget:
        for side in (0, 1):
            this, other = searches[side], searches[1 - side]
            nxt = []
            for x in frontiers[side]:
                for mv in enumerate_moves(this.rep(x), cap):
                    y = this.step(x, mv)
                    if y in other.parent:
                        p_this, p_other = this.path(y), other.path(y)
                        return (p_this, p_other, y) if side == 0 else (p_other, p_this, y)
                    nxt.append(y)
            frontiers[side] = list(dict.fromkeys(nxt))
            if sum(len(s.parent) for s in searches) >= budget:
                break
    return None


# enumeration and classification


def enumerate_strings(m: int, closed: bool = True) -> list[VirtualString | OpenString]:
    """One representative per homeomorphism class of rank ``m``."""
    if m > 6:
        raise ValueError("enumeration is capped at rank 6")
    cls = VirtualString if closed else OpenString
    words = set()
    for matching in _matchings(list(range(2 * m))):
        for orient in itertools.product((0, 1), repeat=m):
            code = [None] * (2 * m)
            for a, ((p, q), o) in enumerate(zip(matching, orient)):
                t, h = (p, q) if o == 0 else (q, p)
                code[t] = (a, TAIL)
                code[h] = (a, HEAD)
            words.add(cls(tuple(code)).word())
    return [cls.from_word(w) for w in sorted(words)]


def _matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, p in enumerate(rest):
        for sub in _matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, p)] + sub


@dataclass
class Classification:
    rank: int
    classes: dict[str, list[str]]
    unresolved: list[tuple[str, str]]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "classes": {k: v for k, v in sorted(self.classes.items())},
            "unresolved_pairs": [list(p) for p in self.unresolved],
        }


def classify_rank(m: int, caps: Caps = DEFAULT_CAPS, closed: bool = True) -> Classification:
    """Group all rank-``m`` strings by class key and flag keys invariants cannot separate."""
    classes: dict[str, list[str]] = {}
    for s in enumerate_strings(m, closed):
        classes.setdefault(normalize(s, caps), []).append(s.canonical().key)
    cls = VirtualString if closed else OpenString
    reps = {k: (cls.from_word(()) if k == ZERO_KEY else _from_key(k, closed)) for k in classes}
    keys = sorted(classes)
    unresolved = []
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1 :]:
            if distinguishing_invariant(reps[k1], reps[k2]) is None:
                unresolved.append((k1, k2))
    return Classification(m, classes, unresolved)


def _from_key(key: str, closed: bool):
    return CanonicalCode(key, closed).string()


def string_of_key(key: str, closed: bool = True):
    """Representative string of a class key."""
    cls = VirtualString if closed else OpenString
    return cls(()) if key == ZERO_KEY else _from_key(key, closed)


# ribbon test


def _is_symmetric_under(s, j) -> bool:
    for t, h in s.arrows():
        jt, jh = j(t), j(h)
        if s.code[jh][1] != TAIL or s.partner[jh] != jt:
            return False
    return True


def is_ribbon(s: VirtualString | OpenString) -> bool:
    """An orientation-reversing involution of the core maps each arrow ``(a, b)`` to an arrow ``(j b, j a)``.

    Closed strings try every reflection whose fixed points avoid the
    endpoints; open strings use the reflection of the segment.
    """
    n = s.size
    if n == 0:
        return True
    if not s.closed:
        return _is_symmetric_under(s, lambda p: n - 1 - p)
    return any(_is_symmetric_under(s, lambda p, k=k: (k - p) % n) for k in range(1, n, 2))
